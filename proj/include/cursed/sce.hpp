#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cursed/cse.hpp"
#include "cursed/partition.hpp"

namespace cursed {

template <class S>
struct ChiPsi {
  S chi_s = S(0);
  S psi_s = S(0);

  // Weights of the sequentially cursed, typically cursed and Bayesian conjectures.
  std::array<S, 3> weights() const { return {chi_s * psi_s, chi_s * (S(1) - psi_s), S(1) - chi_s}; }
  S typical_weight() const { return chi_s * (S(1) - psi_s); }
  void validate() const {
    if (chi_s < S(0) || chi_s > S(1) || psi_s < S(0) || psi_s > S(1)) {
      throw Error(ErrorKind::InvalidParameter, "chi_s and psi_s must lie in [0,1]");
    }
  }
};

enum Conjecture { kSequential = 0, kTypical = 1, kBayesian = 2 };

// The three conjectures held at one information set (theta_i, h).
// Opponent conjectures are stored for every non-terminal history x that is
// an ancestor or descendant of h; the sequentially and typically cursed ones
// do not depend on theta_j.
template <class S>
struct ConjectureSet {
  int player = 0;
  int type = 0;
  NodeId history = 0;
  std::array<std::vector<S>, 3> nature;                  // rows over type profiles
  std::vector<NodeId> nodes;                             // comparable histories, increasing id
  // [k][j][position in nodes] -> distribution over A_j(x), for k in {sequential, typical}
  std::array<std::vector<std::vector<std::vector<S>>>, 2> cursed;
  // [j][theta_j][position] -> distribution over A_j(x)
  std::vector<std::vector<std::vector<std::vector<S>>>> bayesian;

  int position(NodeId x) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    return (it != nodes.end() && *it == x) ? static_cast<int>(it - nodes.begin()) : -1;
  }
  const std::vector<S>& of(Conjecture k, int j, int theta_j, NodeId x) const {
    int pos = position(x);
    if (pos < 0) throw Error(ErrorKind::DanglingHistory, "history is not comparable with the information set");
    return k == kBayesian ? bayesian[j][theta_j][pos] : cursed[k][j][pos];
  }
};

// Precomputed conjectures for one (profile, partition, tremble family);
// checks for any (chi_s, psi_s) reuse them.
template <class S>
class SceModel {
 public:
  SceModel(const Game<S>& game, const Profile<S>& sigma, const Partition& partition, const TrembleFamily<S>& family)
      : game_(game), sigma_(sigma), partition_(partition), family_name_(family.name) {
    lifted_ = trembled(game, sigma, family);
    std::vector<Series<S>> prior;
    for (const auto& f : game.prior()) prior.emplace_back(f);
    reach_ = path_measure(game, lifted_, prior);
    int n = game.num_players();
    sets_.resize(n);
    compiled_.resize(n);
    for (int i = 0; i < n; ++i) {
      sets_[i].resize(game.num_types(i));
      compiled_[i].resize(game.num_types(i));
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        auto acc = accumulate(i, ti);
        auto typical = typical_conjectures(i, acc);
        for (NodeId h : game.nonterminals()) {
          if (game.num_actions(i, h) < 2) continue;
          auto it = sets_[i][ti].emplace(h, build(i, ti, h, acc, typical)).first;
          compiled_[i][ti].emplace(h, compile(it->second));
        }
      }
    }
  }

  const std::string& family_name() const { return family_name_; }
  const Game<S>& game() const { return game_; }

  // Conjectures at any non-terminal information set.
  ConjectureSet<S> conjectures(int player, int type, NodeId h) const {
    auto it = sets_[player][type].find(h);
    if (it != sets_[player][type].end()) return it->second;
    auto acc = accumulate(player, type);
    return build(player, type, h, acc, typical_conjectures(player, acc));
  }

  // chi_s(1 - psi_s) F(.|theta_i) + [1 - chi_s(1 - psi_s)] mu*, as the weighted
  // average of the three nature conjectures.
  std::vector<S> sce_belief(const ConjectureSet<S>& c, const ChiPsi<S>& w) const {
    auto weights = w.weights();
    std::vector<S> out(game_.num_type_profiles(), S(0));
    for (int k = 0; k < 3; ++k) {
      for (size_t p = 0; p < out.size(); ++p) out[p] += weights[k] * c.nature[k][p];
    }
    return out;
  }

  // Expected utility of each own action at the information set when the own
  // continuation is optimized (own_plan == nullptr) or follows own_plan.
  std::vector<S> action_values(const ConjectureSet<S>& c, const ChiPsi<S>& w, const Profile<S>* own_plan = nullptr) const {
    return evaluate(c, w, own_plan).first;
  }

  S expected_payoff(const ConjectureSet<S>& c, const ChiPsi<S>& w, const Profile<S>& own_plan) const {
    return evaluate(c, w, &own_plan).second;
  }

  // Verifies every information set where the player has a real choice.
  S check(const ChiPsi<S>& w, std::vector<Violation<S>>& violations, std::vector<std::string>* ties = nullptr) const {
    S worst(0);
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int ti = 0; ti < game_.num_types(i); ++ti) {
        for (const auto& [h, c] : sets_[i][ti]) {
          auto Q = action_values(c, w);
          worst = std::min(worst, detail::check_support(game_, sigma_, i, ti, h, Q, violations, ties));
        }
      }
    }
    return worst;
  }

  bool passes(const ChiPsi<S>& w) const {
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int ti = 0; ti < game_.num_types(i); ++ti) {
        for (const auto& [h, c] : sets_[i][ti]) {
          auto Q = evaluate(c, compiled_[i][ti].at(h), w, nullptr).first;
          S best = *std::max_element(Q.begin(), Q.end());
          for (size_t a = 0; a < Q.size(); ++a) {
            if (!is_zero(sigma_.prob(i, ti, h, static_cast<int>(a))) && Q[a] - best < -scalar_traits<S>::tolerance()) return false;
          }
        }
      }
    }
    return true;
  }

  // Best value at h over every pure own partial strategy, by enumeration.
  // Used to cross-check the backward induction in small games.
  std::optional<S> exhaustive_best(const ConjectureSet<S>& c, const ChiPsi<S>& w, long long limit = 4096) const {
    int i = c.player;
    std::vector<NodeId> decisions;
    for (NodeId x : c.nodes) {
      if (game_.is_prefix(c.history, x) && game_.num_actions(i, x) > 1) decisions.push_back(x);
    }
    long long plans = 1;
    for (NodeId x : decisions) {
      plans *= game_.num_actions(i, x);
      if (plans > limit) return std::nullopt;
    }
    std::optional<S> best;
    Profile<S> plan = sigma_;
    for (long long code = 0; code < plans; ++code) {
      long long rest = code;
      for (NodeId x : decisions) {
        int m = game_.num_actions(i, x);
        auto& row = plan.at(i, c.type, x);
        row.assign(m, S(0));
        row[rest % m] = S(1);
        rest /= m;
      }
      S v = expected_payoff(c, w, plan);
      if (!best || v > *best) best = v;
    }
    return best;
  }

 private:
  struct Accumulated {
    std::vector<Series<S>> mass;                        // [node] sum over profiles with theta_i of reach
    std::vector<std::vector<std::vector<Series<S>>>> weighted;  // [j][node][a]
  };

  Accumulated accumulate(int i, int ti) const {
    Accumulated acc;
    acc.mass.assign(game_.num_nodes(), Series<S>());
    acc.weighted.assign(game_.num_players(), std::vector<std::vector<Series<S>>>(game_.num_nodes()));
    for (NodeId y : game_.nonterminals()) {
      for (int p : game_.profiles_with(i, ti)) acc.mass[y] += reach_[p][y];
      for (int j = 0; j < game_.num_players(); ++j) {
        if (j == i || game_.num_actions(j, y) < 2) continue;
        auto& row = acc.weighted[j][y];
        row.assign(game_.num_actions(j, y), Series<S>());
        for (int p : game_.profiles_with(i, ti)) {
          for (size_t a = 0; a < row.size(); ++a) row[a] += reach_[p][y] * lifted_.prob(j, game_.type_of(p, j), y, static_cast<int>(a));
        }
      }
    }
    return acc;
  }

  // [j][cell] -> limit distribution, conditioning on (theta_i, .) and the cell.
  std::vector<std::vector<std::vector<S>>> typical_conjectures(int i, const Accumulated& acc) const {
    std::vector<std::vector<std::vector<S>>> out(game_.num_players());
    for (int j = 0; j < game_.num_players(); ++j) {
      if (j == i) continue;
      out[j].resize(partition_.cells[j].size());
      for (size_t c = 0; c < partition_.cells[j].size(); ++c) {
        const auto& cell = partition_.cells[j][c];
        int m = game_.num_actions(j, cell.front());
        if (m < 2) {
          out[j][c] = {S(1)};
          continue;
        }
        std::vector<Series<S>> num(m);
        Series<S> den;
        for (NodeId y : cell) {
          den += acc.mass[y];
          for (int a = 0; a < m; ++a) num[a] += acc.weighted[j][y][a];
        }
        for (int a = 0; a < m; ++a) out[j][c].push_back((num[a] / den).limit());
      }
    }
    return out;
  }

  ConjectureSet<S> build(int i, int ti, NodeId h, const Accumulated& acc, const std::vector<std::vector<std::vector<S>>>& typical) const {
    ConjectureSet<S> c;
    c.player = i;
    c.type = ti;
    c.history = h;
    int n = game_.num_players();
    // nature: Bayesian posterior, prior conditional on own type, Bayesian posterior
    std::vector<S> posterior(game_.num_type_profiles(), S(0));
    for (int p : game_.profiles_with(i, ti)) posterior[p] = (reach_[p][h] / acc.mass[h]).limit();
    c.nature = {posterior, game_.conditional_prior(i, ti), posterior};

    for (NodeId x = h; x >= 0; x = game_.node(x).parent) c.nodes.push_back(x);
    std::vector<NodeId> stack{h};
    std::vector<NodeId> below;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : game_.node(x).children) {
        if (game_.is_terminal(y)) continue;
        below.push_back(y);
        stack.push_back(y);
      }
    }
    c.nodes.insert(c.nodes.end(), below.begin(), below.end());
    std::sort(c.nodes.begin(), c.nodes.end());

    // Sequentially cursed sums over the cell restricted to h's subtree.
    std::vector<std::map<int, std::pair<std::vector<Series<S>>, Series<S>>>> seq(n);
    for (NodeId y : c.nodes) {
      if (game_.stage(y) < game_.stage(h)) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || game_.num_actions(j, y) < 2) continue;
        auto& slot = seq[j][partition_.cell_of[j][y]];
        if (slot.first.empty()) slot.first.resize(game_.num_actions(j, y));
        for (size_t a = 0; a < slot.first.size(); ++a) slot.first[a] += acc.weighted[j][y][a];
        slot.second += acc.mass[y];
      }
    }

    c.cursed[0].assign(n, std::vector<std::vector<S>>(c.nodes.size()));
    c.cursed[1].assign(n, std::vector<std::vector<S>>(c.nodes.size()));
    c.bayesian.assign(n, {});
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      c.bayesian[j].assign(game_.num_types(j), std::vector<std::vector<S>>(c.nodes.size()));
      for (size_t pos = 0; pos < c.nodes.size(); ++pos) {
        NodeId x = c.nodes[pos];
        int m = game_.num_actions(j, x);
        bool past = game_.stage(x) < game_.stage(h);
        std::vector<S> observed;
        if (past) {
          observed.assign(m, S(0));
          observed[game_.incoming_action(game_.ancestor(h, game_.stage(x) + 1), j)] = S(1);
        }
        c.cursed[kTypical][j][pos] = typical[j][partition_.cell_of[j][x]];
        if (past) {
          c.cursed[kSequential][j][pos] = observed;
        } else if (m < 2) {
          c.cursed[kSequential][j][pos] = {S(1)};
        } else {
          const auto& slot = seq[j].at(partition_.cell_of[j][x]);
          for (int a = 0; a < m; ++a) c.cursed[kSequential][j][pos].push_back((slot.first[a] / slot.second).limit());
        }
        for (int tj = 0; tj < game_.num_types(j); ++tj) {
          c.bayesian[j][tj][pos] = past ? observed : sigma_.at(j, tj, x);
        }
      }
    }
    return c;
  }

  // The parts of the backward induction at one information set that do not
  // depend on (chi_s, psi_s): subtree order, perceived opponent probability
  // of every edge for each (conjecture, type profile), and the products of
  // those along the path from h.
  struct Compiled {
    struct Edge {
      int action = 0;
      int child = -1;          // local index, -1 at terminals
      std::vector<S> prob;     // [k * np + q]
      std::vector<S> payoff;   // [q], terminals only
    };
    int np = 0;
    std::vector<NodeId> nodes;                // h first, then its descendants top-down
    std::vector<std::vector<S>> reach;        // [local][k * np + q]
    std::vector<int> num_actions;
    std::vector<std::vector<Edge>> edges;
    // Without later own decisions, Q at h is linear in the conjecture weights.
    bool linear = false;
    std::array<std::vector<S>, 3> basis;
  };

  Compiled compile(const ConjectureSet<S>& c) const {
    int i = c.player;
    const auto& mine = game_.profiles_with(i, c.type);
    Compiled out;
    int np = out.np = static_cast<int>(mine.size());
    std::map<NodeId, int> local;
    for (NodeId x : c.nodes) {
      if (game_.stage(x) < game_.stage(c.history)) continue;
      local[x] = static_cast<int>(out.nodes.size());
      out.nodes.push_back(x);
    }
    out.reach.assign(out.nodes.size(), std::vector<S>(3 * np, S(0)));
    out.reach[0].assign(3 * np, S(1));
    out.num_actions.resize(out.nodes.size());
    out.edges.resize(out.nodes.size());
    for (size_t lx = 0; lx < out.nodes.size(); ++lx) {
      NodeId x = out.nodes[lx];
      int pos = c.position(x);
      out.num_actions[lx] = game_.num_actions(i, x);
      for (int joint = 0; joint < game_.num_joint_actions(x); ++joint) {
        auto actions = game_.decode_joint(x, joint);
        NodeId y = game_.child(x, joint);
        typename Compiled::Edge e;
        e.action = actions[i];
        e.prob.assign(3 * np, S(0));
        for (int k = 0; k < 3; ++k) {
          for (int q = 0; q < np; ++q) {
            if (is_zero(out.reach[lx][k * np + q])) continue;
            S prob(1);
            for (int j = 0; j < game_.num_players() && !is_zero(prob); ++j) {
              if (j == i) continue;
              const auto& row = k == kBayesian ? c.bayesian[j][game_.type_of(mine[q], j)][pos] : c.cursed[k][j][pos];
              prob *= row[actions[j]];
            }
            e.prob[k * np + q] = prob;
          }
        }
        if (game_.is_terminal(y)) {
          for (int q = 0; q < np; ++q) e.payoff.push_back(game_.payoff(mine[q], y, i));
        } else {
          e.child = local.at(y);
          for (int r = 0; r < 3 * np; ++r) out.reach[e.child][r] = out.reach[lx][r] * e.prob[r];
        }
        out.edges[lx].push_back(std::move(e));
      }
    }
    out.linear = std::all_of(out.num_actions.begin() + 1, out.num_actions.end(), [](int m) { return m == 1; });
    if (out.linear) {
      for (int k = 0; k < 3; ++k) {
        std::array<S, 3> unit{S(0), S(0), S(0)};
        unit[k] = S(1);
        out.basis[k] = evaluate(c, out, unit, nullptr).first;
      }
    }
    return out;
  }

  const Compiled* cached(const ConjectureSet<S>& c) const {
    auto it = compiled_[c.player][c.type].find(c.history);
    return it == compiled_[c.player][c.type].end() ? nullptr : &it->second;
  }

  // Backward induction over h's subtree in the perceived model. Returns
  // (Q at h, value of the plan or of the optimum).
  std::pair<std::vector<S>, S> evaluate(const ConjectureSet<S>& c, const ChiPsi<S>& w, const Profile<S>* own_plan) const {
    if (const Compiled* comp = cached(c)) return evaluate(c, *comp, w, own_plan);
    return evaluate(c, compile(c), w, own_plan);
  }

  std::pair<std::vector<S>, S> evaluate(const ConjectureSet<S>& c, const Compiled& comp, const ChiPsi<S>& w, const Profile<S>* own_plan) const {
    if (comp.linear && !own_plan) {
      auto weights = w.weights();
      std::vector<S> Q(comp.basis[0].size(), S(0));
      for (int k = 0; k < 3; ++k) {
        if (is_zero(weights[k])) continue;
        for (size_t a = 0; a < Q.size(); ++a) Q[a] += weights[k] * comp.basis[k][a];
      }
      return {Q, *std::max_element(Q.begin(), Q.end())};
    }
    return evaluate(c, comp, w.weights(), own_plan);
  }

  std::pair<std::vector<S>, S> evaluate(const ConjectureSet<S>& c, const Compiled& comp, const std::array<S, 3>& weights, const Profile<S>* own_plan) const {
    int i = c.player, ti = c.type, np = comp.np;
    const auto& mine = game_.profiles_with(i, ti);
    std::vector<S> start(3 * np, S(0));
    for (int k = 0; k < 3; ++k) {
      for (int q = 0; q < np; ++q) start[k * np + q] = weights[k] * c.nature[k][mine[q]];
    }
    std::vector<std::vector<S>> value(comp.nodes.size());
    std::vector<S> Q_at_h, px(3 * np);
    for (size_t lx = comp.nodes.size(); lx-- > 0;) {
      for (int r = 0; r < 3 * np; ++r) px[r] = start[r] * comp.reach[lx][r];
      int m = comp.num_actions[lx];
      std::vector<std::vector<S>> per_action(m, std::vector<S>(3 * np, S(0)));
      for (const auto& e : comp.edges[lx]) {
        auto& acc = per_action[e.action];
        for (int r = 0; r < 3 * np; ++r) {
          if (is_zero(px[r]) || is_zero(e.prob[r])) continue;
          acc[r] += e.prob[r] * (e.child < 0 ? e.payoff[r % np] : value[e.child][r]);
        }
      }
      std::vector<S> Q(m, S(0));
      for (int a = 0; a < m; ++a) {
        for (int r = 0; r < 3 * np; ++r) {
          if (!is_zero(px[r])) Q[a] += px[r] * per_action[a][r];
        }
      }
      auto& vx = value[lx];
      if (own_plan) {
        vx.assign(3 * np, S(0));
        NodeId x = comp.nodes[lx];
        for (int a = 0; a < m; ++a) {
          const S& s = own_plan->prob(i, ti, x, a);
          if (is_zero(s)) continue;
          for (int r = 0; r < 3 * np; ++r) vx[r] += s * per_action[a][r];
        }
      } else {
        int best = 0;
        for (int a = 1; a < m; ++a) {
          if (Q[a] > Q[best]) best = a;
        }
        vx = std::move(per_action[best]);
      }
      if (lx == 0) Q_at_h = std::move(Q);
    }
    S total(0);
    for (int r = 0; r < 3 * np; ++r) total += start[r] * value[0][r];
    return {Q_at_h, total};
  }

  const Game<S>& game_;
  Profile<S> sigma_;
  Partition partition_;
  std::string family_name_;
  Profile<Series<S>> lifted_;
  std::vector<std::vector<Series<S>>> reach_;
  std::vector<std::vector<std::map<NodeId, ConjectureSet<S>>>> sets_;
  std::vector<std::vector<std::map<NodeId, Compiled>>> compiled_;
};

// Free-function views over a model built with uniform trembles.
template <class S>
ConjectureSet<S> conjectures(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h, const Partition& partition) {
  SceModel<S> model(game, sigma, partition, uniform_family(game));
  return model.conjectures(player, type, h);
}

template <class S>
std::vector<S> sce_belief(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h, const Partition& partition, const ChiPsi<S>& w) {
  SceModel<S> model(game, sigma, partition, uniform_family(game));
  return model.sce_belief(model.conjectures(player, type, h), w);
}

template <class S>
S expected_payoff_sce(const Game<S>& game, const Profile<S>& sigma, int player, int type, NodeId h, const Profile<S>& own_plan, const Partition& partition, const ChiPsi<S>& w) {
  SceModel<S> model(game, sigma, partition, uniform_family(game));
  return model.expected_payoff(model.conjectures(player, type, h), w, own_plan);
}

template <class S>
struct SceOptions {
  bool force_phc = false;
  std::vector<TrembleFamily<S>> families;  // empty: default_families
  bool exhaustive_cross_check = false;     // compare backward induction with plan enumeration
  bool stop_at_first = false;
};

// All models needed to check one profile at many (chi_s, psi_s) points.
template <class S>
class SceChecker {
 public:
  SceChecker(const Game<S>& game, const Profile<S>& sigma, const SceOptions<S>& options = {})
      : game_(game), sigma_(sigma), options_(options), partition_(coarsest_valid_partition(game, options.force_phc)) {
    validate_profile(game, sigma);
    auto families = options.families.empty() ? default_families(game) : options.families;
    for (const auto& f : families) models_.emplace_back(game, sigma_, partition_, f);
  }

  const Partition& partition() const { return partition_; }
  const std::vector<SceModel<S>>& models() const { return models_; }

  bool passes(const ChiPsi<S>& w) const {
    for (const auto& m : models_) {
      if (m.passes(w)) return true;
    }
    return false;
  }

  EquilibriumReport<S> report(const ChiPsi<S>& w) const {
    w.validate();
    EquilibriumReport<S> out;
    out.concept_name = "sce";
    out.parameters = {{"chi_s", w.chi_s}, {"psi_s", w.psi_s}};
    out.notes.push_back({"partition_phc", partition_.phc ? "true" : "false"});
    out.notes.push_back({"forced_phc", partition_.forced_phc ? "true" : "false"});
    out.notes.push_back({"partition_provenance", partition_.provenance});
    out.notes.push_back({"own_continuation", "optimized"});
    bool have_best = false;
    for (const auto& m : models_) {
      std::vector<Violation<S>> violations;
      std::vector<std::string> ties;
      S worst = m.check(w, violations, &ties);
      if (violations.empty()) out.witnesses.push_back(m.family_name());
      if (options_.exhaustive_cross_check) cross_check(m, w, out);
      if (!have_best || worst > out.worst_slack) {
        have_best = true;
        out.worst_slack = worst;
        out.violations = violations;
        out.ties = ties;
        out.beliefs = beliefs(m, w);
      }
      if (options_.stop_at_first && violations.empty()) break;
    }
    out.verdict = !out.witnesses.empty();
    if (out.verdict) out.violations.clear();
    return out;
  }

 private:
  BeliefSystem<S> beliefs(const SceModel<S>& m, const ChiPsi<S>& w) const {
    auto out = empty_beliefs<S>(game_);
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int ti = 0; ti < game_.num_types(i); ++ti) {
        for (NodeId h : game_.nonterminals()) out.at(i, ti, h) = m.sce_belief(m.conjectures(i, ti, h), w);
      }
    }
    return out;
  }

  void cross_check(const SceModel<S>& m, const ChiPsi<S>& w, EquilibriumReport<S>& out) const {
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int ti = 0; ti < game_.num_types(i); ++ti) {
        for (NodeId h : game_.nonterminals()) {
          if (game_.num_actions(i, h) < 2) continue;
          auto c = m.conjectures(i, ti, h);
          auto best = m.exhaustive_best(c, w);
          if (!best) continue;
          auto Q = m.action_values(c, w);
          S q = *std::max_element(Q.begin(), Q.end());
          if (!approx_equal(q, *best, S(scalar_traits<S>::tolerance()))) {
            out.notes.push_back({"cross_check_mismatch", detail::info_set_name(game_, i, ti, h)});
          }
        }
      }
    }
  }

  const Game<S>& game_;
  Profile<S> sigma_;
  SceOptions<S> options_;
  Partition partition_;
  std::vector<SceModel<S>> models_;
};

template <class S>
EquilibriumReport<S> check_sce(const Game<S>& game, const Profile<S>& sigma, const S& chi_s, const S& psi_s, const SceOptions<S>& options = {}) {
  ChiPsi<S> w{chi_s, psi_s};
  w.validate();
  SceChecker<S> checker(game, sigma, options);
  auto report = checker.report(w);
  report.profile = "";
  return report;
}

}  // namespace cursed
