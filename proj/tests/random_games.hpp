#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cursed/cursed.hpp"

namespace cursed::testing {

struct RandomShape {
  int max_players = 3;
  int max_types = 2;
  int max_horizon = 3;
  int max_actions = 2;
  int min_horizon = 1;
  int min_players = 2;
  int payoff_range = 5;
};

inline std::uint64_t mix(std::uint64_t seed, const std::string& key) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 32);
}

inline std::string history_key(const PublicHistory& history) {
  std::string out;
  for (const auto& stage : history) {
    for (const auto& a : stage) out += a + ",";
    out += ";";
  }
  return out;
}

// Small game with random movers, random prior (positive, denominators up to
// 12) and integer payoffs. Labels differ per history when `scrambled`.
template <class S>
Game<S> random_game(std::mt19937_64& rng, const RandomShape& shape = {}, bool scrambled = false) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GameSpec<S> spec;
  spec.name = "random";
  int n = pick(shape.min_players, shape.max_players);
  spec.horizon = pick(shape.min_horizon, shape.max_horizon);
  int profiles = 1;
  for (int i = 0; i < n; ++i) {
    int m = pick(1, shape.max_types);
    std::vector<std::string> labels;
    if (m > 1) {
      for (int t = 0; t < m; ++t) labels.push_back("t" + std::to_string(t));
    }
    spec.types.push_back(labels);
    profiles *= m;
  }
  std::vector<int> weights(profiles);
  int total = 0;
  for (auto& w : weights) total += (w = pick(1, 4));
  for (int w : weights) spec.prior.push_back(S(w) / S(total));
  std::uint64_t seed = rng();
  int max_actions = shape.max_actions;
  spec.actions = [seed, max_actions, scrambled](int player, const PublicHistory& history) {
    std::string key = history_key(history) + "#" + std::to_string(player);
    int m = 1 + static_cast<int>(mix(seed, key) % static_cast<std::uint64_t>(max_actions));
    if (player == 0 && history.empty()) m = max_actions;
    std::vector<std::string> out;
    if (m == 1) return out;
    std::string tag = scrambled ? "h" + std::to_string(mix(seed, history_key(history)) % 100000) : "";
    for (int a = 0; a < m; ++a) out.push_back(std::string(1, static_cast<char>('a' + a)) + tag);
    return out;
  };
  int range = shape.payoff_range;
  spec.payoff = [seed, n, range](const std::vector<int>& types, const PublicHistory& history) {
    std::string key = history_key(history) + "|";
    for (int t : types) key += std::to_string(t) + ",";
    std::vector<S> u;
    for (int i = 0; i < n; ++i) {
      auto v = mix(seed + 1, key + std::to_string(i)) % static_cast<std::uint64_t>(2 * range + 1);
      u.push_back(S(static_cast<int>(v) - range));
    }
    return std::optional<std::vector<S>>(u);
  };
  return build_game(spec);
}

// Interior random behavioral profile with small-denominator probabilities.
template <class S>
Profile<S> random_mixed_profile(const Game<S>& game, std::mt19937_64& rng) {
  auto out = empty_profile<S>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        int m = game.num_actions(i, h);
        std::vector<int> w(m);
        int total = 0;
        for (auto& x : w) total += (x = std::uniform_int_distribution<int>(1, 5)(rng));
        auto& row = out.at(i, ti, h);
        for (int x : w) row.push_back(S(x) / S(total));
      }
    }
  }
  return out;
}

template <class S>
Profile<S> random_pure_profile(const Game<S>& game, std::mt19937_64& rng) {
  std::vector<std::vector<std::vector<int>>> choice(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    choice[i].assign(game.num_types(i), std::vector<int>(game.num_nodes(), 0));
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        choice[i][ti][h] = std::uniform_int_distribution<int>(0, game.num_actions(i, h) - 1)(rng);
      }
    }
  }
  return pure_profile(game, choice);
}

// ---- oracles ------------------------------------------------------------

// Probability that the opponents of `player` with types from `profile`
// play the opponents' part of `joint` at h, as a product of the raw
// behavioral entries.
template <class S>
S opponents_play(const Game<S>& game, const Profile<S>& sigma, int player, int profile, NodeId h, int joint) {
  auto actions = game.decode_joint(h, joint);
  S p(1);
  for (int j = 0; j < game.num_players(); ++j) {
    if (j == player) continue;
    p *= sigma.prob(j, game.type_of(profile, j), h, actions[j]);
  }
  return p;
}

// Closed-form cursed update: chi * mu + (1 - chi) * Bayes(mu).
template <class S>
std::vector<S> oracle_cursed_update(const Game<S>& game, const Profile<S>& sigma, const std::vector<S>& mu, const S& chi, int player, NodeId h, int joint) {
  std::vector<S> bayes(mu.size(), S(0));
  S total(0);
  for (size_t p = 0; p < mu.size(); ++p) {
    bayes[p] = mu[p] * opponents_play(game, sigma, player, static_cast<int>(p), h, joint);
    total += bayes[p];
  }
  std::vector<S> out(mu.size(), S(0));
  for (size_t p = 0; p < mu.size(); ++p) out[p] = chi * mu[p] + (S(1) - chi) * bayes[p] / total;
  return out;
}

// Bayesian posterior at h from the conditional prior, by path products.
template <class S>
std::vector<S> oracle_bayes_posterior(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h) {
  auto path = game.path(h);
  std::vector<S> out(game.num_type_profiles(), S(0));
  S total(0);
  for (int p = 0; p < game.num_type_profiles(); ++p) {
    if (game.type_of(p, player) != type) continue;
    S w = game.prior(p);
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      NodeId x = path[k];
      int joint = -1;
      for (int c = 0; c < game.num_joint_actions(x); ++c) {
        if (game.child(x, c) == path[k + 1]) joint = c;
      }
      w *= opponents_play(game, sigma, player, p, x, joint);
    }
    out[p] = w;
    total += w;
  }
  for (auto& x : out) x = x / total;
  return out;
}

// chi_S (1 - psi_S) F(.|theta_i) + [1 - chi_S (1 - psi_S)] mu*(.|theta_i, h).
template <class S>
std::vector<S> oracle_phc_belief(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h, const S& chi_s, const S& psi_s) {
  S typical = chi_s * (S(1) - psi_s);
  auto prior = game.conditional_prior(player, type);
  auto post = oracle_bayes_posterior(game, sigma, player, type, h);
  std::vector<S> out(prior.size());
  for (size_t p = 0; p < prior.size(); ++p) out[p] = typical * prior[p] + (S(1) - typical) * post[p];
  return out;
}

// Joint index at h for which `child` is the successor.
template <class S>
int joint_to(const Game<S>& game, NodeId h, NodeId child) {
  for (int c = 0; c < game.num_joint_actions(h); ++c) {
    if (game.child(h, c) == child) return c;
  }
  return -1;
}

template <class S>
double max_abs_diff(const std::vector<S>& a, const std::vector<S>& b) {
  double worst = 0;
  for (size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(to_double(a[k]) - to_double(b[k])));
  return worst;
}

}  // namespace cursed::testing
