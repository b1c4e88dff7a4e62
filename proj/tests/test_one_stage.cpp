#include <catch_amalgamated.hpp>

#include "cursed/cursed.hpp"

using namespace cursed;
using Q = Rational;

namespace {

std::set<std::string> third_actions(const Game<Q>& game, const std::vector<PureEquilibrium<Q>>& eqs) {
  std::set<std::string> out;
  for (const auto& e : eqs) out.insert(game.actions(2, Game<Q>::root())[pure_action(e.profile, 2, 0, Game<Q>::root())]);
  return out;
}

const OneStageConcept<Q> kCe{OneStageConcept<Q>::kCE, Q(1)};
const OneStageConcept<Q> kIce{OneStageConcept<Q>::kICE, Q(1)};

}  // namespace

TEST_CASE("matching game below the boundary") {
  auto game = matching_game<Q>(Q(1, 10));
  auto ce = enumerate_pure(game, kCe);
  auto ice = enumerate_pure(game, kIce);
  REQUIRE_FALSE(ce.empty());
  REQUIRE_FALSE(ice.empty());
  CHECK(third_actions(game, ce) == std::set<std::string>{"b", "r"});
  CHECK(third_actions(game, ice) == std::set<std::string>{"m"});
  for (const auto& e : ce) {
    for (const auto& f : ice) CHECK(e.index != f.index);
  }
}

TEST_CASE("matching game objectives") {
  auto game = matching_game<Q>(Q(1, 10));
  auto sigma = parse_compact_profile(game, "[(b,r);(b,r);b]");
  CHECK(ce_objective(game, sigma, 2, 0, 0, Q(1)) == Q(2, 5));
  CHECK(ce_objective(game, sigma, 2, 0, 2, Q(1)) == Q(1, 5));
  CHECK(ice_objective(game, sigma, 2, 0, 0) == Q(1, 4));
  CHECK(ice_objective(game, sigma, 2, 0, 2) == Q(1, 2));
  CHECK(ce_objective(game, sigma, 0, 0, 0, Q(0)) == 1);
}

TEST_CASE("matching game above and at the boundary") {
  auto above = matching_game<Q>(Q(1, 5));
  CHECK(third_actions(above, enumerate_pure(above, kCe)) == std::set<std::string>{"m"});
  auto at = matching_game<Q>(Q(1, 6));
  auto ce = enumerate_pure(at, kCe);
  CHECK(third_actions(at, ce) == std::set<std::string>{"b", "m", "r"});
  for (const auto& e : ce) {
    const auto& obj = e.objectives[2][0];
    CHECK(obj[0] == obj[1]);
    CHECK(obj[1] == obj[2]);
  }
}

TEST_CASE("chi = 0 CE is Bayesian Nash") {
  auto game = matching_game<Q>(Q(1, 10));
  auto sigma = parse_compact_profile(game, "[(b,r);(b,r);b]");
  auto r = check_ce(game, sigma, Q(0));
  CHECK(r.verdict);
  CHECK(r.concept_name == "ce");
  auto bad = parse_compact_profile(game, "[(r,b);(b,r);b]");
  CHECK_FALSE(check_ce(game, bad, Q(0)).verdict);
}

TEST_CASE("one-stage concepts reject longer games") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(A,A);(L,R)]");
  CHECK_THROWS_MATCHES(check_ce(game, sigma, Q(1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NotOneStage; }));
  CHECK_THROWS_AS(check_ice(game, sigma), Error);
}

TEST_CASE("invalid epsilon") {
  CHECK_THROWS_AS(matching_game<Q>(Q(0)), Error);
  CHECK_THROWS_AS(matching_game<Q>(Q(1, 2)), Error);
  CHECK_NOTHROW(matching_game<Q>(Q(49, 100)));
}

TEST_CASE("enumeration is independent of the worker count") {
  auto game = matching_game<Q>(Q(1, 10));
  auto one = enumerate_pure(game, kCe, 1);
  auto four = enumerate_pure(game, kCe, 4);
  REQUIRE(one.size() == four.size());
  for (size_t k = 0; k < one.size(); ++k) CHECK(one[k].compact == four[k].compact);
}
