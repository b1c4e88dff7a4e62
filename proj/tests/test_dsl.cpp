#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "cursed/cursed.hpp"

using namespace cursed;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CURSED_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_game<Rational>(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for:\n" << text);
  return ErrorKind::SyntaxError;
}

const char* kTiny =
    "game tiny\n"
    "players 2\n"
    "stage 1:\n"
    "  actions 1 at *: a b\n"
    "  actions 2 at *: c d\n"
    "payoffs: ((a,c)) = (1, 0)\n"
    "payoffs: ((a,d)) = (0, 1)\n"
    "payoffs: ((b,c)) = (0, 1)\n"
    "payoffs: ((b,d)) = (1, 0)\n";

}  // namespace

TEST_CASE("fixtures match the built-in scenarios") {
  auto sig = parse_game<Rational>(fixture("signaling.game"));
  CHECK(serialize(sig) == serialize(signaling_game<Rational>()));
  auto pi = parse_game<Rational>(fixture("perfect_info.game"));
  CHECK(serialize(pi) == serialize(perfect_info_game<Rational>(Rational(0), Rational(1, 2))));
  auto m = parse_game<Rational>(fixture("matching.game"));
  CHECK(serialize(m) == serialize(matching_game<Rational>(Rational(1, 10))));
}

TEST_CASE("serialize is a fixed point of parse") {
  for (const auto& g : {signaling_game<Rational>(), signaling_game<Rational>(true), perfect_info_game<Rational>(Rational(-3), Rational(1, 2)),
                        matching_game<Rational>(Rational(1, 5)), broadcaster_game<Rational>(2, Rational(1, 2))}) {
    auto text = serialize(g);
    CHECK(serialize(parse_game<Rational>(text)) == text);
  }
}

TEST_CASE("simultaneous stage with joint payoffs") {
  auto g = parse_game<double>(kTiny);
  CHECK(g.num_players() == 2);
  CHECK(g.num_joint_actions(Game<double>::root()) == 4);
  CHECK(g.payoff(0, *g.find_history("(b,d)"), 0) == 1.0);
}

TEST_CASE("scramble relabels per history") {
  auto g = parse_game<Rational>(fixture("signaling.game"));
  CHECK_FALSE(is_scrambled(g));
  auto s = scramble(g);
  CHECK(is_scrambled(s));
  CHECK(serialize(scramble(s)) == serialize(s));
  auto a = *s.find_history("A");
  auto b = *s.find_history("B");
  CHECK(s.actions(1, a) != s.actions(1, b));
  CHECK(detail::base_label(s.actions(1, a)[0]) == "L");
  CHECK(coarsest_valid_partition(s).phc);
  CHECK_FALSE(coarsest_valid_partition(g).phc);
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = std::string("# header\n\n") + kTiny + "\n# trailer\n";
  CHECK(serialize(parse_game<Rational>(text)) == serialize(parse_game<Rational>(kTiny)));
}

TEST_CASE("malformed input reports a position") {
  std::string text = kTiny;
  text.replace(text.find("players 2"), 9, "plyers 2");
  try {
    parse_game<Rational>(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.line() == 2);
    CHECK(e.column() >= 1);
    CHECK(std::string(e.what()).find("at 2:") != std::string::npos);
  }
  CHECK(kind_of("") == ErrorKind::SyntaxError);
}

TEST_CASE("semantic errors") {
  std::string missing = kTiny;
  missing.erase(missing.find("payoffs: ((b,d))"));
  CHECK(kind_of(missing) == ErrorKind::MissingPayoff);

  std::string duplicate = std::string(kTiny) + "payoffs: ((b,d)) = (1, 0)\n";
  CHECK(kind_of(duplicate) == ErrorKind::DuplicateDeclaration);

  std::string undeclared = kTiny;
  undeclared.replace(undeclared.find("((b,d))"), 7, "((b,e))");
  CHECK(kind_of(undeclared) == ErrorKind::UndeclaredLabel);

  std::string prior =
      "game p\nplayers 1\ntypes 1: x y\nprior: (x) = 1/2\nstage 1:\n  actions 1 at *: a\npayoffs: (x, a) = (0)\npayoffs: (y, a) = (0)\n";
  CHECK(kind_of(prior) == ErrorKind::PriorNotFullSupport);
}
