#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cursed/strategy.hpp"

namespace cursed {

// Joint action indices at h in which `player` takes action 0; adding
// a * own_stride(...) selects own action a.
template <class S>
std::vector<int> opponent_joints(const Game<S>& game, NodeId h, int player) {
  std::vector<int> out;
  for (int k = 0; k < game.num_joint_actions(h); ++k) {
    if (game.decode_joint(h, k)[player] == 0) out.push_back(k);
  }
  return out;
}

template <class S>
int own_stride(const Game<S>& game, NodeId h, int player) {
  int stride = 1;
  for (int j = player + 1; j < game.num_players(); ++j) stride *= game.num_actions(j, h);
  return stride;
}

// sigma_bar_{-i}(a_{-i} | theta_i, h) for every opponent joint action, in
// the order of opponent_joints. `belief` is a full-length row over type
// profiles.
template <class P, class S>
std::vector<P> average_strategy(const Game<S>& game, const Profile<P>& sigma, const std::vector<P>& belief, int player, int type, NodeId h) {
  auto joints = opponent_joints(game, h, player);
  std::vector<P> out(joints.size(), P(0));
  for (int p : game.profiles_with(player, type)) {
    if (is_zero(belief[p])) continue;
    for (size_t k = 0; k < joints.size(); ++k) out[k] += belief[p] * joint_probability(game, sigma, p, h, joints[k], player);
  }
  return out;
}

// sigma^chi_{-i}(a_{-i} | theta_{-i}, theta_i, h): rows indexed by type
// profile (only profiles with the given own type are filled), columns by
// opponent joint action.
template <class P, class S>
std::vector<std::vector<P>> chi_perceived(const Game<S>& game, const Profile<P>& sigma, const std::vector<P>& belief, const P& chi, int player, int type, NodeId h) {
  auto joints = opponent_joints(game, h, player);
  auto bar = average_strategy(game, sigma, belief, player, type, h);
  std::vector<std::vector<P>> out(game.num_type_profiles());
  P rest = P(1) - chi;
  for (int p : game.profiles_with(player, type)) {
    out[p].resize(joints.size());
    for (size_t k = 0; k < joints.size(); ++k) {
      out[p][k] = chi * bar[k] + rest * joint_probability(game, sigma, p, h, joints[k], player);
    }
  }
  return out;
}

// One step of chi-cursed Bayes' rule from h to its child reached by joint
// action `joint`. Only the opponents' part of the joint action matters.
template <class P, class S>
std::vector<P> cursed_bayes_step(const Game<S>& game, const Profile<P>& sigma, const std::vector<P>& belief, const P& chi, int player, int type, NodeId h, int joint) {
  int own = game.decode_joint(h, joint)[player];
  int opp = joint - own * own_stride(game, h, player);
  auto joints = opponent_joints(game, h, player);
  size_t column = static_cast<size_t>(std::find(joints.begin(), joints.end(), opp) - joints.begin());
  auto perceived = chi_perceived(game, sigma, belief, chi, player, type, h);
  std::vector<P> out(game.num_type_profiles(), P(0));
  P total(0);
  for (int p : game.profiles_with(player, type)) {
    out[p] = belief[p] * perceived[p][column];
    total += out[p];
  }
  if (is_zero(total)) {
    throw Error(ErrorKind::ZeroProbabilityObservation, "observation at " + game.path_string(game.child(h, joint)) + " has zero perceived probability");
  }
  for (int p : game.profiles_with(player, type)) out[p] = out[p] / total;
  return out;
}

// Plain Bayes posterior after one step, the chi = 0 case.
template <class P, class S>
std::vector<P> bayes_step(const Game<S>& game, const Profile<P>& sigma, const std::vector<P>& belief, int player, int type, NodeId h, int joint) {
  return cursed_bayes_step(game, sigma, belief, P(0), player, type, h, joint);
}

// Beliefs at every (i, theta_i, h) by folding cursed_bayes_step from the
// conditional prior. Works for plain scalars and tremble series.
template <class P, class S>
BeliefSystem<P> cursed_trajectory(const Game<S>& game, const Profile<P>& sigma, const P& chi) {
  auto out = empty_beliefs<P>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      auto& rows = out.rows[i][ti];
      rows[Game<S>::root()].assign(game.num_type_profiles(), P(0));
      auto cond = game.conditional_prior(i, ti);
      for (int p : game.profiles_with(i, ti)) rows[Game<S>::root()][p] = P(cond[p]);
      for (NodeId h : game.nonterminals()) {
        if (game.stage(h) + 1 == game.horizon()) continue;
        auto joints = opponent_joints(game, h, i);
        auto perceived = chi_perceived(game, sigma, rows[h], chi, i, ti, h);
        int stride = own_stride(game, h, i);
        for (int k = 0; k < game.num_joint_actions(h); ++k) {
          int opp = k - game.decode_joint(h, k)[i] * stride;
          size_t column = static_cast<size_t>(std::find(joints.begin(), joints.end(), opp) - joints.begin());
          auto& next = rows[game.child(h, k)];
          next.assign(game.num_type_profiles(), P(0));
          P total(0);
          for (int p : game.profiles_with(i, ti)) {
            next[p] = rows[h][p] * perceived[p][column];
            total += next[p];
          }
          if (is_zero(total)) {
            throw Error(ErrorKind::ZeroProbabilityObservation, "observation at " + game.path_string(game.child(h, k)) + " has zero perceived probability");
          }
          for (int p : game.profiles_with(i, ti)) next[p] = next[p] / total;
        }
      }
    }
  }
  return out;
}

template <class S>
BeliefSystem<S> belief_trajectory(const Game<S>& game, const Profile<S>& sigma, const S& chi) {
  if (!is_totally_mixed(game, sigma)) throw Error(ErrorKind::RequiresTotallyMixed, "belief_trajectory needs a totally mixed profile");
  return cursed_trajectory(game, sigma, chi);
}

template <class S>
BeliefSystem<S> limit_beliefs(const Game<S>& game, const BeliefSystem<Series<S>>& series) {
  auto out = empty_beliefs<S>(game);
  for (size_t i = 0; i < series.rows.size(); ++i) {
    for (size_t t = 0; t < series.rows[i].size(); ++t) {
      for (size_t h = 0; h < series.rows[i][t].size(); ++h) {
        for (const auto& x : series.rows[i][t][h]) out.rows[i][t][h].push_back(x.limit());
      }
    }
  }
  return out;
}

// Limit of the cursed belief trajectory along the tremble family, computed
// exactly on truncated series in eps.
template <class S>
BeliefSystem<S> consistency_extend(const Game<S>& game, const Profile<S>& sigma, const S& chi, const TrembleFamily<S>& family) {
  auto lifted = trembled(game, sigma, family);
  return limit_beliefs(game, cursed_trajectory(game, lifted, Series<S>(chi)));
}

// Numerical route: evaluate the trembled profile at eps in {1e-4, 1e-6,
// 1e-8}, extrapolate linearly in eps and require agreement within 1e-6.
template <class S>
BeliefSystem<double> numeric_consistency_extend(const Game<S>& game, const Profile<S>& sigma, const S& chi, const TrembleFamily<S>& family) {
  auto lifted = trembled(game, sigma, family);
  const double eps[3] = {1e-4, 1e-6, 1e-8};
  std::vector<BeliefSystem<double>> runs;
  for (double e : eps) runs.push_back(cursed_trajectory(game, evaluate_at(lifted, e), to_double(chi)));
  auto out = runs.back();
  for (size_t i = 0; i < out.rows.size(); ++i) {
    for (size_t t = 0; t < out.rows[i].size(); ++t) {
      for (size_t h = 0; h < out.rows[i][t].size(); ++h) {
        for (size_t p = 0; p < out.rows[i][t][h].size(); ++p) {
          double b0 = runs[0].rows[i][t][h][p], b1 = runs[1].rows[i][t][h][p], b2 = runs[2].rows[i][t][h][p];
          double r1 = b1 + (b1 - b0) * (eps[1] / (eps[0] - eps[1]));
          double r2 = b2 + (b2 - b1) * (eps[2] / (eps[1] - eps[2]));
          if (std::abs(r1 - r2) > 1e-6) {
            throw Error(ErrorKind::LimitDidNotStabilize, "belief estimates differ by " + scalar_to_string(std::abs(r1 - r2)));
          }
          out.rows[i][t][h][p] = r2;
        }
      }
    }
  }
  return out;
}

// Expected continuation values W[h][theta] for player i of the given type:
// opponents follow the chi-perceived strategy built from the belief at each
// future history, own play follows sigma_i (or the best own action when
// optimize_own is set).
template <class S>
struct CseValues {
  std::vector<std::vector<S>> W;     // [node][profile]
  std::vector<std::vector<S>> Q;     // [node][own action], weighted by the belief at node
};

template <class S>
CseValues<S> cse_values(const Game<S>& game, const Profile<S>& sigma, const BeliefSystem<S>& mu, const S& chi, int player, int type, bool optimize_own = false) {
  CseValues<S> out;
  out.W.assign(game.num_nodes(), std::vector<S>(game.num_type_profiles(), S(0)));
  out.Q.assign(game.num_nodes(), {});
  const auto& mine = game.profiles_with(player, type);
  for (NodeId z : game.terminals()) {
    for (int p : mine) out.W[z][p] = game.payoff(p, z, player);
  }
  auto nodes = game.nonterminals();
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    NodeId h = *it;
    const auto& belief = mu.at(player, type, h);
    auto joints = opponent_joints(game, h, player);
    auto perceived = chi_perceived(game, sigma, belief, chi, player, type, h);
    int m = game.num_actions(player, h);
    int stride = own_stride(game, h, player);
    // per-profile value of each own action
    std::vector<std::vector<S>> action_value(m, std::vector<S>(game.num_type_profiles(), S(0)));
    auto& Q = out.Q[h];
    Q.assign(m, S(0));
    for (int a = 0; a < m; ++a) {
      for (int p : mine) {
        S v(0);
        for (size_t k = 0; k < joints.size(); ++k) {
          if (is_zero(perceived[p][k])) continue;
          v += perceived[p][k] * out.W[game.child(h, joints[k] + a * stride)][p];
        }
        action_value[a][p] = v;
        if (!is_zero(belief[p])) Q[a] += belief[p] * v;
      }
    }
    if (optimize_own) {
      int best = 0;
      for (int a = 1; a < m; ++a) {
        if (Q[a] > Q[best]) best = a;
      }
      for (int p : mine) out.W[h][p] = action_value[best][p];
    } else {
      for (int p : mine) {
        S v(0);
        for (int a = 0; a < m; ++a) {
          const S& s = sigma.prob(player, type, h, a);
          if (!is_zero(s)) v += s * action_value[a][p];
        }
        out.W[h][p] = v;
      }
    }
  }
  return out;
}

// Cursed expected payoff at (theta_i, h) when i plays own_strategy from h on.
template <class S>
S expected_payoff_cse(const Game<S>& game, const Profile<S>& sigma, const BeliefSystem<S>& mu, const S& chi, int player, int type, NodeId h, const Profile<S>& own_strategy) {
  // Opponents follow sigma; player i's rows come from own_strategy.
  Profile<S> mixed = sigma;
  mixed.dist[player] = own_strategy.dist[player];
  // Perceived opponent play only depends on opponents' rows, so reuse W.
  auto values = cse_values(game, mixed, mu, chi, player, type);
  const auto& belief = mu.at(player, type, h);
  S total(0);
  for (int p : game.profiles_with(player, type)) total += belief[p] * values.W[h][p];
  return total;
}

template <class S>
struct Violation {
  int player = 0;
  std::string type;
  std::string history;
  std::string action;
  S slack = S(0);  // value of the played action minus the best value (< 0)
};

template <class S>
struct EquilibriumReport {
  std::string concept_name;
  std::string profile;
  std::vector<std::pair<std::string, S>> parameters;
  bool verdict = false;
  S worst_slack = S(0);
  BeliefSystem<S> beliefs;
  std::vector<std::string> witnesses;
  std::vector<Violation<S>> violations;
  std::vector<std::string> ties;        // "(player,type,history)" where several actions are optimal
  std::vector<std::pair<std::string, std::string>> notes;
};

namespace detail {

template <class S>
std::string info_set_name(const Game<S>& game, int player, int type, NodeId h) {
  return "(" + std::to_string(player + 1) + "," + game.type_label(player, type) + "," + game.path_string(h) + ")";
}

// Best-response check at one information set: every action in the support
// must attain the maximum of Q. Returns the worst slack (<= 0).
template <class S>
S check_support(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h, const std::vector<S>& Q,
                std::vector<Violation<S>>& violations, std::vector<std::string>* ties) {
  S best = Q[0];
  for (const auto& q : Q) best = std::max(best, q);
  S worst(0);
  int optimal = 0;
  for (size_t a = 0; a < Q.size(); ++a) {
    if (approx_equal(Q[a], best, scalar_traits<S>::tolerance())) ++optimal;
    if (is_zero(sigma.prob(player, type, h, static_cast<int>(a)))) continue;
    S slack = Q[a] - best;
    if (slack < -scalar_traits<S>::tolerance()) {
      violations.push_back({player + 1, game.type_label(player, type), game.path_string(h), game.actions(player, h)[a], slack});
      worst = std::min(worst, slack);
    }
  }
  if (ties && optimal > 1) ties->push_back(info_set_name(game, player, type, h));
  return worst;
}

}  // namespace detail

template <class S>
struct CseOptions {
  std::vector<TrembleFamily<S>> families;        // empty: default_families
  std::optional<BeliefSystem<S>> supplied;       // candidate beliefs checked against the dampened bound
  bool full_deviation = false;                   // optimize own continuation instead of following sigma
  bool stop_at_first = false;                    // stop after the first supporting family
};

// Necessary conditions for chi-consistency of a supplied belief system:
// normalized rows, conditional prior at the root, chi-dampened updating,
// no support outside the parent's support, and cursed Bayes' rule wherever
// the observation has positive perceived probability.
template <class S>
std::vector<std::string> check_belief_candidate(const Game<S>& game, const Profile<S>& sigma, const BeliefSystem<S>& mu, const S& chi) {
  std::vector<std::string> problems;
  S tol = scalar_traits<S>::normalization_tolerance();
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      auto cond = game.conditional_prior(i, ti);
      for (NodeId h : game.nonterminals()) {
        const auto& row = mu.at(i, ti, h);
        std::string where = detail::info_set_name(game, i, ti, h);
        if (static_cast<int>(row.size()) != game.num_type_profiles()) {
          problems.push_back(where + ": wrong row length");
          continue;
        }
        S total(0);
        for (int p : game.profiles_with(i, ti)) total += row[p];
        if (!approx_equal(total, S(1), tol)) problems.push_back(where + ": row sums to " + scalar_to_string(total));
        if (h == Game<S>::root()) {
          for (int p : game.profiles_with(i, ti)) {
            if (!approx_equal(row[p], cond[p], tol)) problems.push_back(where + ": root belief differs from the conditional prior");
          }
          continue;
        }
        NodeId parent = game.node(h).parent;
        const auto& prev = mu.at(i, ti, parent);
        for (int p : game.profiles_with(i, ti)) {
          if (row[p] < chi * prev[p] - tol) problems.push_back(where + ": violates the dampened bound");
          if (is_zero(prev[p]) && !is_zero(row[p])) problems.push_back(where + ": mass outside the parent's support");
        }
        int joint = static_cast<int>(std::find(game.node(parent).children.begin(), game.node(parent).children.end(), h) - game.node(parent).children.begin());
        try {
          auto expected = cursed_bayes_step(game, sigma, prev, chi, i, ti, parent, joint);
          for (int p : game.profiles_with(i, ti)) {
            if (!approx_equal(row[p], expected[p], tol)) {
              problems.push_back(where + ": differs from cursed Bayes' rule on a positive-probability step");
              break;
            }
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::ZeroProbabilityObservation) throw;
        }
      }
    }
  }
  return problems;
}

// Checks sigma against beliefs mu; fills violations and returns worst slack.
template <class S>
S cse_best_response_check(const Game<S>& game, const Profile<S>& sigma, const BeliefSystem<S>& mu, const S& chi, bool full_deviation,
                          std::vector<Violation<S>>& violations, std::vector<std::string>* ties) {
  S worst(0);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      auto values = cse_values(game, sigma, mu, chi, i, ti, full_deviation);
      for (NodeId h : game.nonterminals()) {
        if (game.num_actions(i, h) < 2) continue;
        worst = std::min(worst, detail::check_support(game, sigma, i, ti, h, values.Q[h], violations, ties));
      }
    }
  }
  return worst;
}

template <class S>
EquilibriumReport<S> check_cse(const Game<S>& game, const Profile<S>& sigma, const S& chi, const CseOptions<S>& options = {}) {
  validate_profile(game, sigma);
  if (chi < S(0) || chi > S(1)) throw Error(ErrorKind::InvalidParameter, "chi must lie in [0,1]");
  EquilibriumReport<S> report;
  report.concept_name = "cse";
  report.parameters = {{"chi", chi}};
  if (options.full_deviation) report.notes.push_back({"deviation", "full"});

  struct Candidate {
    std::string name;
    BeliefSystem<S> beliefs;
  };
  std::vector<Candidate> candidates;
  if (options.supplied) {
    auto problems = check_belief_candidate(game, sigma, *options.supplied, chi);
    if (problems.empty()) {
      candidates.push_back({"supplied", *options.supplied});
    } else {
      report.notes.push_back({"supplied_beliefs_rejected", problems.front()});
    }
  }
  auto families = options.families.empty() ? default_families(game) : options.families;
  bool have_best = false;
  for (size_t f = 0; f < families.size() + candidates.size(); ++f) {
    Candidate c;
    if (f < candidates.size()) {
      c = candidates[f];
    } else {
      const auto& family = families[f - candidates.size()];
      c = {family.name, consistency_extend(game, sigma, chi, family)};
    }
    std::vector<Violation<S>> violations;
    std::vector<std::string> ties;
    S worst = cse_best_response_check(game, sigma, c.beliefs, chi, options.full_deviation, violations, &ties);
    if (violations.empty()) report.witnesses.push_back(c.name);
    if (!have_best || worst > report.worst_slack) {
      have_best = true;
      report.worst_slack = worst;
      report.beliefs = c.beliefs;
      report.violations = violations;
      report.ties = ties;
    }
    if (options.stop_at_first && violations.empty()) break;
  }
  report.verdict = !report.witnesses.empty();
  if (report.verdict) report.violations.clear();
  return report;
}

}  // namespace cursed
