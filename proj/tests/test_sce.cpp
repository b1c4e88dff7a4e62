#include <catch_amalgamated.hpp>

#include "cursed/cursed.hpp"

using namespace cursed;
using Q = Rational;

TEST_CASE("partition of the unscrambled signaling game bundles messages") {
  auto game = signaling_game<Q>(false);
  auto p = coarsest_valid_partition(game);
  CHECK_FALSE(p.phc);
  CHECK_FALSE(check_phc(p));
  auto a = *game.find_history("A"), b = *game.find_history("B");
  CHECK(p.cell_of[1][a] == p.cell_of[1][b]);
  CHECK(p.cell(1, a).size() == 2);
  auto forced = coarsest_valid_partition(game, true);
  CHECK(forced.phc);
  CHECK(forced.forced_phc);
  CHECK(forced.cell_of[1][a] != forced.cell_of[1][b]);
}

TEST_CASE("PHC on scrambled and broadcaster games") {
  CHECK(coarsest_valid_partition(signaling_game<Q>(true)).phc);
  CHECK(coarsest_valid_partition(broadcaster_game<Q>(2, Q(1, 2))).phc);
  auto pi = perfect_info_game<Q>(Q(0), Q(1, 2));
  auto p = coarsest_valid_partition(pi);
  CHECK_FALSE(p.phc);
  CHECK(p.cell_of[1][*pi.find_history("B")] == p.cell_of[1][*pi.find_history("R")]);
}

TEST_CASE("partition respects own past actions") {
  const char* text =
      "game recall\n"
      "players 2\n"
      "stage 1:\n"
      "  actions 1 at *: a b\n"
      "stage 2:\n"
      "  actions 1 at *: c d\n"
      "  actions 2 at *: e f\n"
      "payoffs: (a/(c,e)) = (0, 0)\npayoffs: (a/(c,f)) = (0, 0)\npayoffs: (a/(d,e)) = (0, 0)\npayoffs: (a/(d,f)) = (0, 0)\n"
      "payoffs: (b/(c,e)) = (0, 0)\npayoffs: (b/(c,f)) = (0, 0)\npayoffs: (b/(d,e)) = (0, 0)\npayoffs: (b/(d,f)) = (0, 0)\n";
  auto game = parse_game<Q>(text);
  auto p = coarsest_valid_partition(game);
  auto a = *game.find_history("a"), b = *game.find_history("b");
  CHECK(p.cell_of[0][a] != p.cell_of[0][b]);
  CHECK(p.cell_of[1][a] == p.cell_of[1][b]);
}

TEST_CASE("broadcaster SCE belief is constant across announcements") {
  auto game = broadcaster_game<Q>(3, Q(1, 2));
  auto sigma = pure_profile(game, detail::broadcaster_choices(game));
  SceModel<Q> model(game, sigma, coarsest_valid_partition(game), uniform_family(game));
  for (auto [chi, psi] : {std::pair{Q(1, 2), Q(0)}, std::pair{Q(1), Q(1, 3)}, std::pair{Q(3, 4), Q(1)}}) {
    ChiPsi<Q> w{chi, psi};
    Q expected = Q(1) - Q(1, 2) * chi * (Q(1) - psi);
    CHECK(model.sce_belief(model.conjectures(1, 0, *game.find_history("g")), w)[0] == expected);
    CHECK(model.sce_belief(model.conjectures(2, 0, *game.find_history("g/s/g")), w)[0] == expected);
    CHECK(model.sce_belief(model.conjectures(3, 0, *game.find_history("g/s/g/s/g")), w)[0] == expected);
  }
}

TEST_CASE("Bayesian weights reproduce the posterior") {
  auto game = signaling_game<Q>(true);
  auto sigma = uniform_profile(game);
  sigma.at(0, 0, Game<Q>::root()) = {Q(1, 5), Q(4, 5)};
  sigma.at(0, 1, Game<Q>::root()) = {Q(2, 3), Q(1, 3)};
  auto p = coarsest_valid_partition(game);
  auto a = *game.find_history("A");
  Q post = Q(1, 4) * Q(1, 5) / (Q(1, 4) * Q(1, 5) + Q(3, 4) * Q(2, 3));
  CHECK(sce_belief(game, sigma, 1, 0, a, p, ChiPsi<Q>{Q(0), Q(1, 2)})[0] == post);
  CHECK(sce_belief(game, sigma, 1, 0, a, p, ChiPsi<Q>{Q(1), Q(1)})[0] == post);
  CHECK(sce_belief(game, sigma, 1, 0, a, p, ChiPsi<Q>{Q(1), Q(0)})[0] == Q(1, 4));
}

TEST_CASE("past and future conjecture identities under PHC") {
  auto game = signaling_game<Q>(true);
  auto sigma = uniform_profile(game);
  sigma.at(0, 0, Game<Q>::root()) = {Q(1, 5), Q(4, 5)};
  sigma.at(0, 1, Game<Q>::root()) = {Q(2, 3), Q(1, 3)};
  auto p = coarsest_valid_partition(game);
  auto root = Game<Q>::root();
  auto a = *game.find_history("A");
  auto c = conjectures(game, sigma, 1, 0, a, p);
  // past: sender is known to have sent A
  const auto& seq = c.of(kSequential, 0, 0, root);
  CHECK(seq == std::vector<Q>{Q(1), Q(0)});
  CHECK(c.of(kBayesian, 0, 0, root) == std::vector<Q>{Q(1), Q(0)});
  // future, from the sender's view at the root
  auto s = conjectures(game, sigma, 0, 0, root, p);
  CHECK(s.of(kSequential, 1, 0, a) == s.of(kTypical, 1, 0, a));
}

TEST_CASE("cursed conjecture about the receiver follows own equilibrium message") {
  auto game = signaling_game<Q>(false);
  auto sigma = parse_compact_profile(game, "[(A,A);(L,R)]");
  SceModel<Q> model(game, sigma, coarsest_valid_partition(game), uniform_family(game));
  auto c = model.conjectures(0, 0, Game<Q>::root());
  auto b = *game.find_history("B");
  CHECK(c.of(kSequential, 1, 0, b)[0] == 1);
  CHECK(c.of(kTypical, 1, 0, b)[0] == 1);
  CHECK(c.of(kBayesian, 1, 0, b)[1] == 1);
}

TEST_CASE("signaling deviation value for the type-1 sender") {
  auto game = signaling_game<Q>(false);
  auto sigma = parse_compact_profile(game, "[(A,A);(L,R)]");
  SceModel<Q> model(game, sigma, coarsest_valid_partition(game), uniform_family(game));
  auto c = model.conjectures(0, 0, Game<Q>::root());
  for (Q chi : {Q(0), Q(1, 3), Q(1, 2), Q(1)}) {
    auto values = model.action_values(c, ChiPsi<Q>{chi, Q(1, 2)});
    CHECK(values[0] == 2);
    CHECK(values[1] == Q(4) * chi + (Q(1) - chi));
  }
}

TEST_CASE("perfect information deviation value") {
  for (Q x : {Q(-1000000), Q(0), Q(10)}) {
    auto game = perfect_info_game<Q>(x, Q(1, 2));
    auto sigma = parse_compact_profile(game, "[R;(b,r)]");
    SceModel<Q> model(game, sigma, coarsest_valid_partition(game), uniform_family(game));
    auto c = model.conjectures(0, 0, Game<Q>::root());
    for (Q chi : {Q(0), Q(1, 4), Q(1, 2), Q(1)}) {
      auto values = model.action_values(c, ChiPsi<Q>{chi, Q(0)});
      CHECK(values[0] == Q(2) * (Q(1) - chi));
      CHECK(values[1] == 1);
    }
  }
}

TEST_CASE("signaling SCE regions at sample points") {
  auto game = signaling_game<Q>(false);
  auto pass = [&](const char* profile, Q c, Q p) { return check_sce(game, parse_compact_profile(game, profile), c, p).verdict; };
  CHECK(pass("[(A,A);(L,R)]", Q(1, 5), Q(1, 2)));
  CHECK_FALSE(pass("[(B,B);(L,R)]", Q(1, 5), Q(1, 2)));
  CHECK(pass("[(B,B);(R,R)]", Q(1, 5), Q(1, 2)));
  CHECK(pass("[(B,B);(L,R)]", Q(1, 2), Q(1, 2)));
  CHECK_FALSE(pass("[(A,A);(L,R)]", Q(1, 2), Q(1, 2)));
  CHECK(pass("[(B,A);(L,R)]", Q(1, 3), Q(0)));
  CHECK_FALSE(pass("[(B,A);(L,R)]", Q(1, 2), Q(0)));
  CHECK(pass("[(B,B);(R,R)]", Q(1), Q(1)));
  CHECK(pass("[(B,B);(R,R)]", Q(8, 9), Q(0)));
  CHECK_FALSE(pass("[(B,B);(R,R)]", Q(9, 10), Q(0)));
}

TEST_CASE("scrambled signaling has only pooling SCE") {
  auto game = signaling_game<Q>(true);
  for (auto [c, p] : {std::pair{Q(0), Q(0)}, std::pair{Q(1, 2), Q(1, 2)}, std::pair{Q(1), Q(0)}, std::pair{Q(1), Q(1)}}) {
    std::set<std::string> found;
    for (const auto& sigma : all_pure_profiles(game)) {
      if (check_sce(game, sigma, c, p).verdict) found.insert(to_compact(game, sigma));
    }
    CHECK(found.count("[(A,A);(L,R)]"));
    CHECK(found.count("[(B,B);(R,R)]") == (c * (Q(1) - p) <= Q(8, 9) ? 1u : 0u));
    for (const auto& name : found) CHECK((name.substr(0, 7) == "[(A,A);" || name.substr(0, 7) == "[(B,B);"));
  }
}

TEST_CASE("chi_s = 0 reduces to sequential equilibrium") {
  auto game = perfect_info_game<Q>(Q(0), Q(1, 2));
  CseOptions<Q> seq;
  seq.full_deviation = true;
  for (const auto& sigma : all_pure_profiles(game)) {
    CHECK(check_sce(game, sigma, Q(0), Q(1, 2)).verdict == check_cse(game, sigma, Q(0), seq).verdict);
  }
}

TEST_CASE("backward induction agrees with plan enumeration") {
  auto game = signaling_game<Q>(false);
  SceOptions<Q> options;
  options.exhaustive_cross_check = true;
  for (const auto& sigma : all_pure_profiles(game)) {
    auto r = check_sce(game, sigma, Q(1, 2), Q(1, 3), options);
    for (const auto& [k, v] : r.notes) CHECK(k != "cross_check_mismatch");
  }
}

TEST_CASE("report fields") {
  auto game = signaling_game<Q>(false);
  auto r = check_sce(game, parse_compact_profile(game, "[(B,B);(L,R)]"), Q(1, 2), Q(0));
  CHECK(r.concept_name == "sce");
  CHECK(r.verdict);
  CHECK_FALSE(r.witnesses.empty());
  bool phc_note = false;
  for (const auto& [k, v] : r.notes) phc_note = phc_note || (k == "partition_phc" && v == "false");
  CHECK(phc_note);
  CHECK_THROWS_AS(check_sce(game, parse_compact_profile(game, "[(B,B);(L,R)]"), Q(2), Q(0)), Error);
}
