#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cursed/game.hpp"

namespace cursed {

// Behavioral strategy profile: dist[i][theta_i][h] is a distribution over
// A_i(h), stored for every non-terminal h (terminal rows are empty).
template <class P>
struct Profile {
  std::vector<std::vector<std::vector<std::vector<P>>>> dist;

  const std::vector<P>& at(int player, int type, NodeId h) const { return dist[player][type][h]; }
  std::vector<P>& at(int player, int type, NodeId h) { return dist[player][type][h]; }
  const P& prob(int player, int type, NodeId h, int action) const { return dist[player][type][h][action]; }

  int num_players() const { return static_cast<int>(dist.size()); }
};

template <class P, class S>
Profile<P> empty_profile(const Game<S>& game) {
  Profile<P> out;
  out.dist.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out.dist[i].assign(game.num_types(i), std::vector<std::vector<P>>(game.num_nodes()));
  }
  return out;
}

template <class S>
Profile<S> uniform_profile(const Game<S>& game) {
  auto out = empty_profile<S>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        int m = game.num_actions(i, h);
        out.dist[i][ti][h].assign(m, S(1) / S(m));
      }
    }
  }
  return out;
}

// Pure profile from choice[i][theta_i][h] (ignored at terminals).
template <class S>
Profile<S> pure_profile(const Game<S>& game, const std::vector<std::vector<std::vector<int>>>& choice) {
  auto out = empty_profile<S>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        auto& row = out.dist[i][ti][h];
        row.assign(game.num_actions(i, h), S(0));
        row[choice[i][ti][h]] = S(1);
      }
    }
  }
  return out;
}

template <class S>
bool is_totally_mixed(const Game<S>& game, const Profile<S>& sigma) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        for (const auto& p : sigma.at(i, ti, h)) {
          if (!(p > S(0))) return false;
        }
      }
    }
  }
  return true;
}

template <class S>
bool is_pure(const Game<S>& game, const Profile<S>& sigma) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        for (const auto& p : sigma.at(i, ti, h)) {
          if (p != S(0) && p != S(1)) return false;
        }
      }
    }
  }
  return true;
}

// Action index played with probability one, or -1.
template <class S>
int pure_action(const Profile<S>& sigma, int player, int type, NodeId h) {
  const auto& row = sigma.at(player, type, h);
  for (size_t a = 0; a < row.size(); ++a) {
    if (row[a] == S(1)) return static_cast<int>(a);
  }
  return -1;
}

template <class S>
void validate_profile(const Game<S>& game, const Profile<S>& sigma) {
  if (sigma.num_players() != game.num_players()) throw Error(ErrorKind::InvalidProfile, "profile has the wrong number of players");
  for (int i = 0; i < game.num_players(); ++i) {
    if (static_cast<int>(sigma.dist[i].size()) != game.num_types(i)) throw Error(ErrorKind::InvalidProfile, "wrong number of types");
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      if (static_cast<int>(sigma.dist[i][ti].size()) != game.num_nodes()) throw Error(ErrorKind::InvalidProfile, "wrong number of histories");
      for (NodeId h : game.nonterminals()) {
        const auto& row = sigma.at(i, ti, h);
        if (static_cast<int>(row.size()) != game.num_actions(i, h)) {
          throw Error(ErrorKind::InvalidProfile, "distribution size mismatch at " + game.path_string(h));
        }
        S total(0);
        for (const auto& p : row) {
          if (p < S(0)) throw Error(ErrorKind::InvalidProfile, "negative probability at " + game.path_string(h));
          total += p;
        }
        if (!approx_equal(total, S(1), scalar_traits<S>::normalization_tolerance())) {
          throw Error(ErrorKind::InvalidProfile, "distribution at " + game.path_string(h) + " sums to " + scalar_to_string(total));
        }
      }
    }
  }
}

template <class T, class S>
Profile<T> convert_profile(const Profile<S>& sigma) {
  Profile<T> out;
  out.dist.resize(sigma.dist.size());
  for (size_t i = 0; i < sigma.dist.size(); ++i) {
    out.dist[i].resize(sigma.dist[i].size());
    for (size_t t = 0; t < sigma.dist[i].size(); ++t) {
      out.dist[i][t].resize(sigma.dist[i][t].size());
      for (size_t h = 0; h < sigma.dist[i][t].size(); ++h) {
        for (const auto& p : sigma.dist[i][t][h]) {
          if constexpr (std::is_same_v<T, double>) {
            out.dist[i][t][h].push_back(to_double(p));
          } else {
            out.dist[i][t][h].push_back(T(p));
          }
        }
      }
    }
  }
  return out;
}

// Probability of the joint action `joint` at h under sigma for type profile
// `profile`, optionally skipping one player.
template <class P, class S>
P joint_probability(const Game<S>& game, const Profile<P>& sigma, int profile, NodeId h, int joint, int skip = -1) {
  auto actions = game.decode_joint(h, joint);
  P out(1);
  for (int j = 0; j < game.num_players(); ++j) {
    if (j == skip) continue;
    out *= sigma.prob(j, game.type_of(profile, j), h, actions[j]);
  }
  return out;
}

// reach[theta][h] = F(theta) * prod of all players' action probabilities on
// the path to h.
template <class P, class S>
std::vector<std::vector<P>> path_measure(const Game<S>& game, const Profile<P>& sigma, const std::vector<P>& prior) {
  std::vector<std::vector<P>> reach(game.num_type_profiles(), std::vector<P>(game.num_nodes(), P(0)));
  for (int p = 0; p < game.num_type_profiles(); ++p) {
    reach[p][Game<S>::root()] = prior[p];
    for (NodeId h : game.nonterminals()) {
      if (is_zero(reach[p][h])) continue;
      for (int k = 0; k < game.num_joint_actions(h); ++k) {
        reach[p][game.child(h, k)] = reach[p][h] * joint_probability(game, sigma, p, h, k);
      }
    }
  }
  return reach;
}

// Probability that play starting at h_from ends at terminal h_T under sigma
// for type profile theta.
template <class S>
S terminal_reach_probability(const Game<S>& game, const Profile<S>& sigma, int profile, NodeId from, NodeId terminal) {
  if (!game.is_terminal(terminal)) throw Error(ErrorKind::StageOutOfRange, game.path_string(terminal) + " is not terminal");
  if (!game.is_prefix(from, terminal)) return S(0);
  S out(1);
  for (NodeId x = terminal; x != from; x = game.node(x).parent) {
    NodeId parent = game.node(x).parent;
    std::vector<int> actions(game.num_players());
    for (int j = 0; j < game.num_players(); ++j) actions[j] = game.incoming_action(x, j);
    out *= joint_probability(game, sigma, profile, parent, game.encode_joint(parent, actions));
  }
  return out;
}

// Beliefs: rows[i][theta_i][h] is a distribution over full type profiles,
// zero on profiles whose i-th component differs from theta_i.
template <class S>
struct BeliefSystem {
  std::vector<std::vector<std::vector<std::vector<S>>>> rows;

  const std::vector<S>& at(int player, int type, NodeId h) const { return rows[player][type][h]; }
  std::vector<S>& at(int player, int type, NodeId h) { return rows[player][type][h]; }
};

template <class S, class G>
BeliefSystem<S> empty_beliefs(const Game<G>& game) {
  BeliefSystem<S> out;
  out.rows.resize(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    out.rows[i].assign(game.num_types(i), std::vector<std::vector<S>>(game.num_nodes()));
  }
  return out;
}

// Perturbation direction used to define limits of totally mixed profiles.
// sigma_eps(a) = sigma(a) + c * eps^k * (1 - m * sigma(a)) with m = |A|,
// c = weight[j][theta_j] and k = 1 for the favored type (or every type when
// no type is favored) and 2 otherwise.
template <class S>
struct TrembleFamily {
  std::string name = "uniform";
  std::vector<int> favored;               // per player, -1 = none
  std::vector<std::vector<S>> weight;     // per player and type

  int order(int player, int type) const {
    return (favored[player] < 0 || favored[player] == type) ? 1 : 2;
  }
};

template <class S>
TrembleFamily<S> uniform_family(const Game<S>& game) {
  TrembleFamily<S> f;
  f.favored.assign(game.num_players(), -1);
  for (int j = 0; j < game.num_players(); ++j) f.weight.emplace_back(game.num_types(j), S(1));
  return f;
}

// Uniform trembles, every combination of favored types across players with
// private information (capped), and per-type weight skews.
template <class S>
std::vector<TrembleFamily<S>> default_families(const Game<S>& game, int cap = 64) {
  std::vector<TrembleFamily<S>> out{uniform_family(game)};
  std::vector<int> informed;
  for (int j = 0; j < game.num_players(); ++j) {
    if (game.num_types(j) > 1) informed.push_back(j);
  }
  std::vector<int> choice(informed.size(), -1);
  while (static_cast<int>(out.size()) < cap) {
    size_t k = 0;
    while (k < choice.size() && ++choice[k] == game.num_types(informed[k])) choice[k++] = -1;
    if (k == choice.size()) break;
    auto f = uniform_family(game);
    f.name = "favor";
    for (size_t q = 0; q < informed.size(); ++q) {
      f.favored[informed[q]] = choice[q];
      if (choice[q] >= 0) f.name += ":" + std::to_string(informed[q] + 1) + "=" + game.type_label(informed[q], choice[q]);
    }
    out.push_back(std::move(f));
  }
  for (int j : informed) {
    for (int tj = 0; tj < game.num_types(j) && static_cast<int>(out.size()) < cap; ++tj) {
      auto f = uniform_family(game);
      f.weight[j][tj] = S(2);
      f.name = "skew:" + std::to_string(j + 1) + "=" + game.type_label(j, tj);
      out.push_back(std::move(f));
    }
  }
  return out;
}

// Lifts sigma to the tremble series defined by the family.
template <class S>
Profile<Series<S>> trembled(const Game<S>& game, const Profile<S>& sigma, const TrembleFamily<S>& family) {
  auto out = empty_profile<Series<S>>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      int k = family.order(i, ti);
      const S& c = family.weight[i][ti];
      for (NodeId h : game.nonterminals()) {
        const auto& row = sigma.at(i, ti, h);
        auto& dst = out.at(i, ti, h);
        int m = static_cast<int>(row.size());
        for (const auto& p : row) {
          if (m == 1) {
            dst.emplace_back(S(1));
          } else {
            dst.push_back(Series<S>(p) + Series<S>::monomial(c * (S(1) - S(m) * p), k));
          }
        }
      }
    }
  }
  return out;
}

// Plain profile obtained by evaluating the tremble series at eps.
template <class S>
Profile<double> evaluate_at(const Profile<Series<S>>& sigma, double eps) {
  Profile<double> out;
  out.dist.resize(sigma.dist.size());
  for (size_t i = 0; i < sigma.dist.size(); ++i) {
    out.dist[i].resize(sigma.dist[i].size());
    for (size_t t = 0; t < sigma.dist[i].size(); ++t) {
      out.dist[i][t].resize(sigma.dist[i][t].size());
      for (size_t h = 0; h < sigma.dist[i][t].size(); ++h) {
        for (const auto& p : sigma.dist[i][t][h]) out.dist[i][t][h].push_back(p.evaluate(eps));
      }
    }
  }
  return out;
}

// Players with a real choice somewhere, and the histories where they have it.
template <class S>
std::vector<NodeId> decision_histories(const Game<S>& game, int player) {
  std::vector<NodeId> out;
  for (NodeId h : game.nonterminals()) {
    if (game.num_actions(player, h) > 1) out.push_back(h);
  }
  return out;
}

namespace detail {

// Exact label, then the label without a scramble suffix, then without primes.
template <class S>
int resolve_label(const Game<S>& game, int player, NodeId h, std::string label) {
  int a = game.action_index(player, h, label);
  if (a >= 0) return a;
  while (!label.empty() && label.back() == '\'') label.pop_back();
  const auto& actions = game.actions(player, h);
  for (size_t k = 0; k < actions.size(); ++k) {
    if (base_label(actions[k]) == label) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace detail

// Compact pure-profile notation such as "[(B,B);(L,R)]": one group per
// player with a real choice somewhere, in player order; inside a group,
// entries run over types (outer) and decision histories (inner). Groups
// with one entry may omit the parentheses.
template <class S>
Profile<S> parse_compact_profile(const Game<S>& game, const std::string& text) {
  std::string body = detail::trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw Error(ErrorKind::InvalidProfile, "compact profile must be enclosed in [ ]");
  }
  auto groups = detail::split_top_level(body.substr(1, body.size() - 2), ';');
  std::vector<std::vector<std::vector<int>>> choice(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    choice[i].assign(game.num_types(i), std::vector<int>(game.num_nodes(), 0));
  }
  size_t g = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    auto decisions = decision_histories(game, i);
    if (decisions.empty()) continue;
    if (g >= groups.size()) throw Error(ErrorKind::InvalidProfile, "missing group for player " + std::to_string(i + 1));
    std::string group = detail::trim(groups[g++]);
    if (!group.empty() && group.front() == '(' && group.back() == ')') group = group.substr(1, group.size() - 2);
    auto entries = detail::split_top_level(group, ',');
    size_t expected = decisions.size() * static_cast<size_t>(game.num_types(i));
    if (entries.size() != expected) {
      throw Error(ErrorKind::InvalidProfile, "player " + std::to_string(i + 1) + " needs " + std::to_string(expected) + " entries");
    }
    size_t e = 0;
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : decisions) {
        std::string label = detail::trim(entries[e++]);
        int a = detail::resolve_label(game, i, h, label);
        if (a < 0) throw Error(ErrorKind::InvalidProfile, "unknown action '" + label + "' at " + game.path_string(h));
        choice[i][ti][h] = a;
      }
    }
  }
  if (g != groups.size()) throw Error(ErrorKind::InvalidProfile, "too many groups in compact profile");
  return pure_profile(game, choice);
}

// Inverse of parse_compact_profile for pure profiles; base labels are used
// so scrambled and unscrambled games print alike.
template <class S>
std::string to_compact(const Game<S>& game, const Profile<S>& sigma) {
  std::string out = "[";
  bool first_group = true;
  for (int i = 0; i < game.num_players(); ++i) {
    auto decisions = decision_histories(game, i);
    if (decisions.empty()) continue;
    if (!first_group) out += ';';
    first_group = false;
    std::vector<std::string> entries;
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : decisions) {
        int a = pure_action(sigma, i, ti, h);
        entries.push_back(a < 0 ? std::string("?") : detail::base_label(game.actions(i, h)[a]));
      }
    }
    if (entries.size() == 1) {
      out += entries[0];
    } else {
      out += '(';
      for (size_t k = 0; k < entries.size(); ++k) out += (k ? "," : "") + entries[k];
      out += ')';
    }
  }
  return out + "]";
}

// Every pure profile, in mixed-radix order over (player, type, decision history).
template <class S>
class PureProfileEnumerator {
 public:
  explicit PureProfileEnumerator(const Game<S>& game, double limit = 1e6) : game_(game) {
    double count = 1;
    for (int i = 0; i < game.num_players(); ++i) {
      auto decisions = decision_histories(game, i);
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        for (NodeId h : decisions) {
          slots_.push_back({i, ti, h, game.num_actions(i, h)});
          count *= game.num_actions(i, h);
        }
      }
    }
    if (count > limit) {
      throw Error(ErrorKind::CombinatorialLimitExceeded, "pure profile count " + scalar_to_string(count) + " exceeds the limit");
    }
    total_ = static_cast<long long>(count);
    choice_.resize(game.num_players());
    for (int i = 0; i < game.num_players(); ++i) {
      choice_[i].assign(game.num_types(i), std::vector<int>(game.num_nodes(), 0));
    }
  }

  long long total() const { return total_; }

  Profile<S> at(long long index) const {
    auto choice = choice_;
    for (int k = static_cast<int>(slots_.size()) - 1; k >= 0; --k) {
      const auto& s = slots_[k];
      choice[s.player][s.type][s.node] = static_cast<int>(index % s.radix);
      index /= s.radix;
    }
    return pure_profile(game_, choice);
  }

 private:
  struct Slot {
    int player, type;
    NodeId node;
    int radix;
  };
  const Game<S>& game_;
  std::vector<Slot> slots_;
  std::vector<std::vector<std::vector<int>>> choice_;
  long long total_ = 0;
};

}  // namespace cursed
