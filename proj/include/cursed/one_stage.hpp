#pragma once

#include <string>
#include <vector>

#include "cursed/cse.hpp"
#include "cursed/parallel.hpp"

namespace cursed {

namespace detail {

template <class S>
void require_one_stage(const Game<S>& game) {
  if (game.horizon() != 1) throw Error(ErrorKind::NotOneStage, "game has " + std::to_string(game.horizon()) + " stages");
}

}  // namespace detail

// sum_{theta_-i} F(theta_-i|theta_i) sum_{a_-i} [chi sigma_bar(a_-i) +
// (1 - chi) sigma_-i(a_-i|theta_-i)] u_i(theta, a_i, a_-i).
template <class S>
S ce_objective(const Game<S>& game, const Profile<S>& sigma, int player, int type, int action, const S& chi) {
  detail::require_one_stage(game);
  NodeId h = Game<S>::root();
  auto belief = game.conditional_prior(player, type);
  auto joints = opponent_joints(game, h, player);
  auto perceived = chi_perceived(game, sigma, belief, chi, player, type, h);
  int stride = own_stride(game, h, player);
  S total(0);
  for (int p : game.profiles_with(player, type)) {
    for (size_t k = 0; k < joints.size(); ++k) {
      if (is_zero(perceived[p][k])) continue;
      total += belief[p] * perceived[p][k] * game.payoff(p, game.child(h, joints[k] + action * stride), player);
    }
  }
  return total;
}

// Opponents are perceived to play independent type-averaged marginals
// sum_{theta_j} F(theta_j|theta_i) sigma_j(a_j|theta_j).
template <class S>
S ice_objective(const Game<S>& game, const Profile<S>& sigma, int player, int type, int action) {
  detail::require_one_stage(game);
  NodeId h = Game<S>::root();
  auto belief = game.conditional_prior(player, type);
  int n = game.num_players();
  std::vector<std::vector<S>> marginal(n);
  for (int j = 0; j < n; ++j) {
    if (j == player) continue;
    marginal[j].assign(game.num_actions(j, h), S(0));
    for (int p : game.profiles_with(player, type)) {
      for (int a = 0; a < game.num_actions(j, h); ++a) marginal[j][a] += belief[p] * sigma.prob(j, game.type_of(p, j), h, a);
    }
  }
  auto joints = opponent_joints(game, h, player);
  int stride = own_stride(game, h, player);
  S total(0);
  for (int joint : joints) {
    auto actions = game.decode_joint(h, joint);
    S prob(1);
    for (int j = 0; j < n; ++j) {
      if (j != player) prob *= marginal[j][actions[j]];
    }
    if (is_zero(prob)) continue;
    NodeId z = game.child(h, joint + action * stride);
    S u(0);
    for (int p : game.profiles_with(player, type)) u += belief[p] * game.payoff(p, z, player);
    total += prob * u;
  }
  return total;
}

template <class S>
struct OneStageConcept {
  enum Kind { kCE, kICE } kind = kCE;
  S chi = S(1);

  std::string name() const { return kind == kCE ? "ce" : "ice"; }
};

// Objective of every (player, type, action).
template <class S>
std::vector<std::vector<std::vector<S>>> objective_table(const Game<S>& game, const Profile<S>& sigma, const OneStageConcept<S>& spec) {
  std::vector<std::vector<std::vector<S>>> out(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out[i].resize(game.num_types(i));
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (int a = 0; a < game.num_actions(i, Game<S>::root()); ++a) {
        out[i][ti].push_back(spec.kind == OneStageConcept<S>::kCE ? ce_objective(game, sigma, i, ti, a, spec.chi)
                                                                     : ice_objective(game, sigma, i, ti, a));
      }
    }
  }
  return out;
}

template <class S>
EquilibriumReport<S> check_one_stage(const Game<S>& game, const Profile<S>& sigma, const OneStageConcept<S>& spec) {
  detail::require_one_stage(game);
  validate_profile(game, sigma);
  EquilibriumReport<S> report;
  report.concept_name = spec.name();
  if (spec.kind == OneStageConcept<S>::kCE) report.parameters = {{"chi", spec.chi}};
  auto table = objective_table(game, sigma, spec);
  std::vector<Violation<S>> violations;
  S worst(0);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      if (game.num_actions(i, Game<S>::root()) < 2) continue;
      worst = std::min(worst, detail::check_support(game, sigma, i, ti, Game<S>::root(), table[i][ti], violations, &report.ties));
    }
  }
  report.worst_slack = worst;
  report.violations = violations;
  report.verdict = violations.empty();
  auto beliefs = empty_beliefs<S>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) beliefs.at(i, ti, Game<S>::root()) = game.conditional_prior(i, ti);
  }
  report.beliefs = beliefs;
  return report;
}

template <class S>
EquilibriumReport<S> check_ce(const Game<S>& game, const Profile<S>& sigma, const S& chi) {
  return check_one_stage(game, sigma, OneStageConcept<S>{OneStageConcept<S>::kCE, chi});
}

template <class S>
EquilibriumReport<S> check_ice(const Game<S>& game, const Profile<S>& sigma) {
  return check_one_stage(game, sigma, OneStageConcept<S>{OneStageConcept<S>::kICE, S(1)});
}

template <class S>
struct PureEquilibrium {
  long long index = 0;
  Profile<S> profile;
  std::string compact;
  std::vector<std::vector<std::vector<S>>> objectives;  // [player][type][action]
  std::vector<std::string> ties;
};

// Every pure type-contingent profile in which each (i, theta_i) plays an
// argmax of the spec objective, in enumeration order.
template <class S>
std::vector<PureEquilibrium<S>> enumerate_pure(const Game<S>& game, const OneStageConcept<S>& spec, int threads = 0) {
  detail::require_one_stage(game);
  PureProfileEnumerator<S> profiles(game, 1e7);
  std::vector<unsigned char> passes(static_cast<size_t>(profiles.total()), 0);
  parallel_for(profiles.total(), resolve_threads(threads), [&](long long k) {
    passes[k] = check_one_stage(game, profiles.at(k), spec).verdict ? 1 : 0;
  });
  std::vector<PureEquilibrium<S>> out;
  for (long long k = 0; k < profiles.total(); ++k) {
    if (!passes[k]) continue;
    auto sigma = profiles.at(k);
    auto report = check_one_stage(game, sigma, spec);
    out.push_back({k, sigma, to_compact(game, sigma), objective_table(game, sigma, spec), report.ties});
  }
  return out;
}

}  // namespace cursed
