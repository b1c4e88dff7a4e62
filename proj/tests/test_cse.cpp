#include <catch_amalgamated.hpp>

#include "cursed/cursed.hpp"

using namespace cursed;
using Q = Rational;

namespace {

Profile<Q> truthful_safe(const Game<Q>& game) {
  return pure_profile(game, detail::broadcaster_choices(game));
}

}  // namespace

TEST_CASE("average and perceived strategies in the broadcaster game") {
  auto game = broadcaster_game<Q>(2, Q(1, 2));
  auto sigma = truthful_safe(game);
  auto root = Game<Q>::root();
  auto prior = game.conditional_prior(1, 0);
  auto bar = average_strategy(game, sigma, prior, 1, 0, root);
  auto joints = opponent_joints(game, root, 1);
  REQUIRE(joints.size() == 2);
  int g = game.decode_joint(root, joints[0])[0] == detail::label_index(game, 0, root, "g") ? 0 : 1;
  CHECK(bar[g] == Q(1, 2));
  auto perceived = chi_perceived(game, sigma, prior, Q(1, 2), 1, 0, root);
  CHECK(perceived[0][g] == Q(3, 4));
  CHECK(perceived[1][g] == Q(1, 4));
  auto zero = chi_perceived(game, sigma, prior, Q(0), 1, 0, root);
  CHECK(zero[0][g] == 1);
  auto one = chi_perceived(game, sigma, prior, Q(1), 1, 0, root);
  CHECK(one[0] == one[1]);
}

TEST_CASE("broadcaster beliefs after i good announcements") {
  auto game = broadcaster_game<Q>(2, Q(1, 2));
  auto sigma = truthful_safe(game);
  for (Q chi : {Q(0), Q(1, 3), Q(1, 2), Q(9, 10), Q(1)}) {
    auto mu = consistency_extend(game, sigma, chi, uniform_family(game));
    auto first = *game.find_history("g");
    auto second = *game.find_history("g/s/g");
    CHECK(mu.at(1, 0, first)[0] == Q(1) - Q(1, 2) * chi);
    CHECK(mu.at(2, 0, second)[0] == Q(1) - Q(1, 2) * chi * chi);
  }
}

TEST_CASE("cursed step equals the prior/posterior mix") {
  auto game = signaling_game<Q>();
  auto sigma = uniform_profile(game);
  sigma.at(0, 0, Game<Q>::root()) = {Q(1, 5), Q(4, 5)};
  sigma.at(0, 1, Game<Q>::root()) = {Q(2, 3), Q(1, 3)};
  auto prior = game.conditional_prior(1, 0);
  for (Q chi : {Q(0), Q(1, 4), Q(2, 3), Q(1)}) {
    auto after_a = cursed_bayes_step(game, sigma, prior, chi, 1, 0, Game<Q>::root(), 0);
    Q bayes = Q(1, 4) * Q(1, 5) / (Q(1, 4) * Q(1, 5) + Q(3, 4) * Q(2, 3));
    CHECK(after_a[0] == chi * Q(1, 4) + (Q(1) - chi) * bayes);
  }
  auto same = cursed_bayes_step(game, sigma, prior, Q(1), 1, 0, Game<Q>::root(), 1);
  CHECK(same == prior);
}

TEST_CASE("zero probability observations are reported") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(B,B);(L,R)]");
  auto prior = game.conditional_prior(1, 0);
  CHECK_THROWS_MATCHES(cursed_bayes_step(game, sigma, prior, Q(1, 2), 1, 0, Game<Q>::root(), 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::ZeroProbabilityObservation; }));
  CHECK_THROWS_AS(belief_trajectory(game, sigma, Q(1, 2)), Error);
}

TEST_CASE("uniform strategies leave beliefs at the prior") {
  auto game = signaling_game<Q>();
  auto mu = belief_trajectory(game, uniform_profile(game), Q(0));
  for (NodeId h : game.nonterminals()) CHECK(mu.at(1, 0, h) == game.conditional_prior(1, 0));
}

TEST_CASE("off-path belief under uniform trembles is the prior") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(B,B);(R,R)]");
  auto a = *game.find_history("A");
  for (Q chi : {Q(0), Q(1, 2), Q(1)}) {
    auto mu = consistency_extend(game, sigma, chi, uniform_family(game));
    CHECK(mu.at(1, 0, a)[0] == Q(1, 4));
  }
}

TEST_CASE("numeric and exact consistency agree") {
  auto game = signaling_game<double>();
  auto sigma = parse_compact_profile(game, "[(B,B);(R,R)]");
  auto families = default_families(game);
  for (const auto& f : families) {
    auto exact = consistency_extend(game, sigma, 0.5, f);
    auto numeric = numeric_consistency_extend(game, sigma, 0.5, f);
    for (NodeId h : game.nonterminals()) {
      for (size_t p = 0; p < exact.at(1, 0, h).size(); ++p) CHECK(numeric.at(1, 0, h)[p] == Catch::Approx(exact.at(1, 0, h)[p]).margin(1e-6));
    }
  }
}

TEST_CASE("signaling separating profile is a CSE for every chi") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(A,A);(L,R)]");
  for (Q chi : {Q(0), Q(1, 4), Q(1, 2), Q(3, 4), Q(1)}) {
    auto r = check_cse(game, sigma, chi);
    CHECK(r.verdict);
    CHECK(r.violations.empty());
  }
}

TEST_CASE("pooling on B is a CSE exactly up to 8/9") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(B,B);(R,R)]");
  CHECK(check_cse(game, sigma, Q(0)).verdict);
  CHECK(check_cse(game, sigma, Q(8, 9)).verdict);
  auto fail = check_cse(game, sigma, Q(9, 10));
  CHECK_FALSE(fail.verdict);
  CHECK_FALSE(fail.violations.empty());
  CHECK(fail.worst_slack < 0);
  auto boundary = check_cse(game, sigma, Q(8, 9));
  auto a = *game.find_history("A");
  bool third = false;
  for (const auto& name : boundary.witnesses) {
    CseOptions<Q> only;
    for (const auto& f : default_families(game)) {
      if (f.name == name) only.families = {f};
    }
    REQUIRE_FALSE(only.families.empty());
    third = third || consistency_extend(game, sigma, Q(8, 9), only.families[0]).at(1, 0, a)[0] == Q(1, 3);
  }
  CHECK(third);
}

TEST_CASE("complete information CSE matches sequential equilibrium") {
  auto game = perfect_info_game<Q>(Q(0), Q(1, 2));
  auto good = parse_compact_profile(game, "[B;(b,r)]");
  auto bad = parse_compact_profile(game, "[R;(b,r)]");
  for (Q chi : {Q(0), Q(1, 2), Q(1)}) {
    CHECK(check_cse(game, good, chi).verdict);
    CHECK_FALSE(check_cse(game, bad, chi).verdict);
  }
}

TEST_CASE("one-shot and full deviations agree on small games") {
  auto game = signaling_game<Q>();
  CseOptions<Q> full;
  full.full_deviation = true;
  for (const auto& sigma : all_pure_profiles(game)) {
    for (Q chi : {Q(0), Q(1, 2), Q(8, 9), Q(1)}) {
      CHECK(check_cse(game, sigma, chi).verdict == check_cse(game, sigma, chi, full).verdict);
    }
  }
}

TEST_CASE("expected payoff of the risky move") {
  auto game = broadcaster_game<Q>(2, Q(1, 2));
  auto sigma = truthful_safe(game);
  Q chi(1, 2);
  auto mu = consistency_extend(game, sigma, chi, uniform_family(game));
  auto h = *game.find_history("g/s/g");
  auto values = cse_values(game, sigma, mu, chi, 2, 0);
  int r = detail::label_index(game, 2, h, "r");
  Q belief = Q(1) - Q(1, 2) * chi * chi;
  CHECK(values.Q[h][r] == Q(1, 2) * belief - (Q(1) - belief));
}

TEST_CASE("parameter validation") {
  auto game = signaling_game<Q>();
  auto sigma = parse_compact_profile(game, "[(A,A);(L,R)]");
  CHECK_THROWS_AS(check_cse(game, sigma, Q(-1)), Error);
  CHECK_THROWS_AS(check_cse(game, sigma, Q(3, 2)), Error);
}
