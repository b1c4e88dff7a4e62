#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "random_games.hpp"

namespace cursed::testing {

struct Tally {
  int games = 0;
  long long checks = 0;
  long long failures = 0;
  double worst = 0;
  std::string first_failure;

  void record(bool ok, double deviation, const std::string& what) {
    ++checks;
    worst = std::max(worst, deviation);
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0 && checks > 0; }
};

inline std::string where(int game, int player, int type, NodeId h) {
  return "game " + std::to_string(game) + " player " + std::to_string(player + 1) + " type " + std::to_string(type) + " node " + std::to_string(h);
}

template <class S>
S random_weight(std::mt19937_64& rng) {
  static const int num[] = {0, 1, 1, 1, 2, 3, 8, 1};
  static const int den[] = {1, 4, 3, 2, 3, 4, 9, 1};
  int k = std::uniform_int_distribution<int>(0, 7)(rng);
  return S(num[k]) / S(den[k]);
}

// Engine cursed trajectory and single steps against the closed-form update.
inline void cursed_bayes_property(std::mt19937_64& rng, int games, Tally& tally, double tol = 1e-10) {
  for (int g = 0; g < games; ++g) {
    auto game = random_game<double>(rng);
    auto sigma = random_mixed_profile(game, rng);
    double chi = random_weight<double>(rng);
    auto mu = belief_trajectory(game, sigma, chi);
    ++tally.games;
    for (int i = 0; i < game.num_players(); ++i) {
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        std::vector<std::vector<double>> oracle(game.num_nodes());
        oracle[Game<double>::root()] = game.conditional_prior(i, ti);
        for (NodeId h : game.nonterminals()) {
          double d = max_abs_diff(mu.at(i, ti, h), oracle[h]);
          tally.record(d <= tol, d, where(g, i, ti, h) + " trajectory");
          if (game.stage(h) + 1 == game.horizon()) continue;
          for (int k = 0; k < game.num_joint_actions(h); ++k) {
            NodeId c = game.child(h, k);
            oracle[c] = oracle_cursed_update(game, sigma, oracle[h], chi, i, h, k);
            auto step = cursed_bayes_step(game, sigma, oracle[h], chi, i, ti, h, k);
            double e = max_abs_diff(step, oracle[c]);
            tally.record(e <= tol, e, where(g, i, ti, c) + " step");
          }
        }
      }
    }
  }
}

// Under PHC the mixture belief is the prior/posterior blend.
inline void phc_belief_property(std::mt19937_64& rng, int games, Tally& tally, double tol = 1e-10) {
  for (int g = 0; g < games; ++g) {
    auto game = random_game<double>(rng, {}, true);
    auto partition = coarsest_valid_partition(game);
    if (!partition.phc) partition = coarsest_valid_partition(game, true);
    auto sigma = random_mixed_profile(game, rng);
    SceModel<double> model(game, sigma, partition, uniform_family(game));
    ++tally.games;
    for (int rep = 0; rep < 3; ++rep) {
      ChiPsi<double> w{random_weight<double>(rng), random_weight<double>(rng)};
      for (int i = 0; i < game.num_players(); ++i) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          for (NodeId h : game.nonterminals()) {
            auto engine = model.sce_belief(model.conjectures(i, ti, h), w);
            auto oracle = oracle_phc_belief(game, sigma, i, ti, h, w.chi_s, w.psi_s);
            double d = max_abs_diff(engine, oracle);
            tally.record(d <= tol, d, where(g, i, ti, h));
          }
        }
      }
    }
  }
}

inline RandomShape one_stage_shape(int players) {
  RandomShape shape;
  shape.min_horizon = shape.max_horizon = 1;
  shape.min_players = shape.max_players = players;
  return shape;
}

// T = 1: chi-CSE agrees with CE and (1,1)-SCE with ICE on every pure profile.
inline void one_stage_reduction_property(std::mt19937_64& rng, int games, Tally& cse_ce, Tally& sce_ice) {
  for (int g = 0; g < games; ++g) {
    int players = std::uniform_int_distribution<int>(2, 3)(rng);
    auto game = random_game<Rational>(rng, one_stage_shape(players));
    Rational chi = random_weight<Rational>(rng);
    PureProfileEnumerator<Rational> profiles(game);
    ++cse_ce.games;
    ++sce_ice.games;
    for (long long k = 0; k < profiles.total(); ++k) {
      auto sigma = profiles.at(k);
      bool a = check_cse(game, sigma, chi).verdict;
      bool b = check_ce(game, sigma, chi).verdict;
      cse_ce.record(a == b, 0, "game " + std::to_string(g) + " profile " + to_compact(game, sigma) + " chi=" + scalar_to_string(chi));
      bool c = check_sce(game, sigma, Rational(1), Rational(1)).verdict;
      bool d = check_ice(game, sigma).verdict;
      sce_ice.record(c == d, 0, "game " + std::to_string(g) + " profile " + to_compact(game, sigma));
    }
  }
}

// Two players, T = 1: CE(1) and ICE select the same pure profiles.
inline void two_player_ce_ice_property(std::mt19937_64& rng, int games, Tally& tally) {
  OneStageConcept<Rational> ce{OneStageConcept<Rational>::kCE, Rational(1)}, ice{OneStageConcept<Rational>::kICE, Rational(1)};
  for (int g = 0; g < games; ++g) {
    auto game = random_game<Rational>(rng, one_stage_shape(2));
    std::set<long long> a, b;
    for (const auto& e : enumerate_pure(game, ce)) a.insert(e.index);
    for (const auto& e : enumerate_pure(game, ice)) b.insert(e.index);
    ++tally.games;
    tally.record(a == b, 0, "game " + std::to_string(g));
  }
}

struct BeliefTallies {
  Tally dampened, constant, bayes, normalized;
};

inline void check_rows_normalized(const Game<double>& game, const BeliefSystem<double>& mu, Tally& tally, int g) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        const auto& row = mu.at(i, ti, h);
        double sum = 0;
        bool nonnegative = true;
        for (double x : row) {
          sum += x;
          nonnegative = nonnegative && x >= 0;
        }
        double d = std::abs(sum - 1);
        tally.record(nonnegative && d <= 1e-12, d, where(g, i, ti, h));
      }
    }
  }
}

// Invariants of consistent beliefs from pure profiles under every default
// tremble family, and of interior trajectories.
inline void belief_invariants_property(std::mt19937_64& rng, int games, BeliefTallies& t, double tol = 1e-10) {
  for (int g = 0; g < games; ++g) {
    auto game = random_game<double>(rng);
    auto pure = random_pure_profile(game, rng);
    auto mixed = random_mixed_profile(game, rng);
    double chi = random_weight<double>(rng);
    ++t.dampened.games;
    ++t.constant.games;
    ++t.bayes.games;
    ++t.normalized.games;
    for (const auto& family : default_families(game)) {
      auto mu = consistency_extend(game, pure, chi, family);
      check_rows_normalized(game, mu, t.normalized, g);
      for (int i = 0; i < game.num_players(); ++i) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          for (NodeId h : game.nonterminals()) {
            if (game.stage(h) + 1 == game.horizon()) continue;
            for (int k = 0; k < game.num_joint_actions(h); ++k) {
              const auto& before = mu.at(i, ti, h);
              const auto& after = mu.at(i, ti, game.child(h, k));
              double slack = 0;
              for (size_t p = 0; p < before.size(); ++p) slack = std::max(slack, chi * before[p] - after[p]);
              t.dampened.record(slack <= tol, slack, where(g, i, ti, game.child(h, k)) + " " + family.name);
            }
          }
        }
      }
      auto still = consistency_extend(game, pure, 1.0, family);
      for (int i = 0; i < game.num_players(); ++i) {
        for (int ti = 0; ti < game.num_types(i); ++ti) {
          auto prior = game.conditional_prior(i, ti);
          for (NodeId h : game.nonterminals()) {
            double d = max_abs_diff(still.at(i, ti, h), prior);
            t.constant.record(d <= tol, d, where(g, i, ti, h) + " " + family.name);
          }
        }
      }
    }
    auto plain = belief_trajectory(game, mixed, 0.0);
    check_rows_normalized(game, plain, t.normalized, g);
    for (int i = 0; i < game.num_players(); ++i) {
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        for (NodeId h : game.nonterminals()) {
          double d = max_abs_diff(plain.at(i, ti, h), oracle_bayes_posterior(game, mixed, i, ti, h));
          t.bayes.record(d <= tol, d, where(g, i, ti, h));
        }
      }
    }
    // On the path of a pure profile the chi = 0 limit is plain Bayes.
    auto limit = consistency_extend(game, pure, 0.0, uniform_family(game));
    for (int i = 0; i < game.num_players(); ++i) {
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        for (NodeId h : game.nonterminals()) {
          auto path = game.path(h);
          double reach = 0;
          for (int p : game.profiles_with(i, ti)) {
            double r = game.prior(p);
            for (size_t s = 0; s + 1 < path.size(); ++s) r *= opponents_play(game, pure, i, p, path[s], joint_to(game, path[s], path[s + 1]));
            reach += r;
          }
          if (reach <= 0) continue;
          double d = max_abs_diff(limit.at(i, ti, h), oracle_bayes_posterior(game, pure, i, ti, h));
          t.bayes.record(d <= tol, d, where(g, i, ti, h) + " on path");
        }
      }
    }
  }
}

}  // namespace cursed::testing
