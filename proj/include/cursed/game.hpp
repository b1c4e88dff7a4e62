#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cursed/error.hpp"
#include "cursed/scalar.hpp"

namespace cursed {

using NodeId = int;

// Label of the only action of a player who does not move at a stage.
inline const std::string kPassLabel = "pass";
// Type label given to players without private information.
inline const std::string kTrivialType = "_";

// One public history. Children are ordered by the joint action index, a
// mixed-radix number over players with player 0 most significant.
struct HistoryNode {
  NodeId parent = -1;
  int stage = 0;
  int index_in_stage = 0;
  std::vector<int> incoming;    // action index of each player at the parent
  std::vector<int> label_sets;  // per player, id into the game's label pool
  std::vector<NodeId> children;
};

// Stage-by-stage label view of a public history, used by generic builders.
using PublicHistory = std::vector<std::vector<std::string>>;

template <class S>
class GameBuilder;

// Immutable multi-stage game with observed actions.
template <class S>
class Game {
 public:
  using Scalar = S;

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(types_.size()); }
  int horizon() const { return horizon_; }

  int num_types(int player) const { return static_cast<int>(types_[player].size()); }
  const std::vector<std::string>& type_labels(int player) const { return types_[player]; }
  const std::string& type_label(int player, int type) const { return types_[player][type]; }
  bool has_private_types(int player) const { return num_types(player) > 1; }

  // Type profiles are mixed-radix numbers over players, player 0 most significant.
  int num_type_profiles() const { return static_cast<int>(prior_.size()); }
  int type_of(int profile, int player) const { return (profile / type_stride_[player]) % num_types(player); }
  int profile_index(const std::vector<int>& types) const {
    int idx = 0;
    for (int i = 0; i < num_players(); ++i) idx += types[i] * type_stride_[i];
    return idx;
  }
  std::vector<int> decode_profile(int profile) const {
    std::vector<int> out(num_players());
    for (int i = 0; i < num_players(); ++i) out[i] = type_of(profile, i);
    return out;
  }
  // Profiles whose component for `player` equals `type`, ascending.
  const std::vector<int>& profiles_with(int player, int type) const { return profiles_with_[player][type]; }

  const std::vector<S>& prior() const { return prior_; }
  const S& prior(int profile) const { return prior_[profile]; }

  // F(theta_-i | theta_i) as a full-length vector over type profiles; entries
  // whose component for `player` differs from `type` are zero.
  std::vector<S> conditional_prior(int player, int type) const {
    std::vector<S> out(num_type_profiles(), S(0));
    S total(0);
    for (int p : profiles_with(player, type)) total += prior_[p];
    for (int p : profiles_with(player, type)) out[p] = prior_[p] / total;
    return out;
  }

  S marginal_prior(int player, int type) const {
    S total(0);
    for (int p : profiles_with(player, type)) total += prior_[p];
    return total;
  }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  static constexpr NodeId root() { return 0; }
  const HistoryNode& node(NodeId h) const { return nodes_[h]; }
  int stage(NodeId h) const { return nodes_[h].stage; }
  bool is_terminal(NodeId h) const { return nodes_[h].stage == horizon_; }
  const std::vector<NodeId>& nodes_at_stage(int t) const {
    if (t < 0 || t > horizon_) throw Error(ErrorKind::StageOutOfRange, "stage " + std::to_string(t));
    return by_stage_[t];
  }
  const std::vector<NodeId>& terminals() const { return by_stage_[horizon_]; }
  std::vector<NodeId> nonterminals() const {
    std::vector<NodeId> out;
    for (int t = 0; t < horizon_; ++t) out.insert(out.end(), by_stage_[t].begin(), by_stage_[t].end());
    return out;
  }

  const std::vector<std::string>& actions(int player, NodeId h) const {
    return label_pool_[nodes_[h].label_sets[player]];
  }
  int num_actions(int player, NodeId h) const { return static_cast<int>(actions(player, h).size()); }
  int label_set_id(int player, NodeId h) const { return nodes_[h].label_sets[player]; }
  const std::vector<std::string>& label_set(int id) const { return label_pool_[id]; }
  int action_index(int player, NodeId h, const std::string& label) const {
    const auto& a = actions(player, h);
    auto it = std::find(a.begin(), a.end(), label);
    return it == a.end() ? -1 : static_cast<int>(it - a.begin());
  }

  // Joint action profiles at h, in child order.
  int num_joint_actions(NodeId h) const { return static_cast<int>(nodes_[h].children.size()); }
  std::vector<int> decode_joint(NodeId h, int joint) const {
    std::vector<int> out(num_players());
    for (int i = num_players() - 1; i >= 0; --i) {
      int m = num_actions(i, h);
      out[i] = joint % m;
      joint /= m;
    }
    return out;
  }
  int encode_joint(NodeId h, const std::vector<int>& actions) const {
    int joint = 0;
    for (int i = 0; i < num_players(); ++i) joint = joint * num_actions(i, h) + actions[i];
    return joint;
  }
  NodeId child(NodeId h, int joint) const { return nodes_[h].children[joint]; }
  NodeId child(NodeId h, const std::vector<int>& actions) const { return child(h, encode_joint(h, actions)); }

  // Action player took at the parent of h (h must not be the root).
  int incoming_action(NodeId h, int player) const { return nodes_[h].incoming[player]; }

  NodeId ancestor(NodeId h, int at_stage) const {
    if (at_stage < 0 || at_stage > stage(h)) throw Error(ErrorKind::StageOutOfRange, "ancestor stage");
    while (stage(h) > at_stage) h = nodes_[h].parent;
    return h;
  }
  // a precedes-or-equals b.
  bool is_prefix(NodeId a, NodeId b) const { return stage(a) <= stage(b) && ancestor(b, stage(a)) == a; }

  // Root-to-h node sequence, inclusive.
  std::vector<NodeId> path(NodeId h) const {
    std::vector<NodeId> out;
    for (NodeId x = h; x >= 0; x = nodes_[x].parent) out.push_back(x);
    std::reverse(out.begin(), out.end());
    return out;
  }

  PublicHistory labels_of(NodeId h) const {
    PublicHistory out;
    auto p = path(h);
    for (size_t k = 1; k < p.size(); ++k) {
      std::vector<std::string> step(num_players());
      for (int i = 0; i < num_players(); ++i) step[i] = actions(i, p[k - 1])[incoming_action(p[k], i)];
      out.push_back(std::move(step));
    }
    return out;
  }

  // Canonical textual path: "root", or steps joined by '/', each step the
  // label of the only player with a real choice, or a full "(a1,...,an)".
  std::string path_string(NodeId h) const {
    if (h == root()) return "root";
    auto p = path(h);
    std::string out;
    for (size_t k = 1; k < p.size(); ++k) {
      if (k > 1) out += '/';
      NodeId parent = p[k - 1];
      int mover = sole_mover(parent);
      if (mover >= 0) {
        out += actions(mover, parent)[incoming_action(p[k], mover)];
      } else {
        out += '(';
        for (int i = 0; i < num_players(); ++i) {
          if (i) out += ',';
          out += actions(i, parent)[incoming_action(p[k], i)];
        }
        out += ')';
      }
    }
    return out;
  }

  // The only player with more than one action at h, or -1.
  int sole_mover(NodeId h) const {
    int mover = -1;
    for (int i = 0; i < num_players(); ++i) {
      if (num_actions(i, h) > 1) {
        if (mover >= 0) return -1;
        mover = i;
      }
    }
    return mover;
  }

  std::optional<NodeId> find_history(const std::string& path) const;

  std::span<const S> payoffs(int profile, NodeId terminal) const {
    const auto& row = payoffs_[terminal];
    return std::span<const S>(row).subspan(static_cast<size_t>(profile) * num_players(), num_players());
  }
  const S& payoff(int profile, NodeId terminal, int player) const {
    return payoffs_[terminal][static_cast<size_t>(profile) * num_players() + player];
  }

  template <class T>
  Game<T> convert() const {
    Game<T> out;
    out.name_ = name_;
    out.types_ = types_;
    out.type_stride_ = type_stride_;
    out.profiles_with_ = profiles_with_;
    out.horizon_ = horizon_;
    out.nodes_ = nodes_;
    out.by_stage_ = by_stage_;
    out.label_pool_ = label_pool_;
    for (const auto& p : prior_) out.prior_.push_back(convert_scalar<T>(p));
    out.payoffs_.resize(payoffs_.size());
    for (size_t h = 0; h < payoffs_.size(); ++h) {
      for (const auto& u : payoffs_[h]) out.payoffs_[h].push_back(convert_scalar<T>(u));
    }
    return out;
  }

  // Relabels actions in place of a new game; `relabel(player, node, label)`
  // returns the new label. Structure, probabilities and payoffs are kept.
  Game relabeled(const std::function<std::string(int, NodeId, const std::string&)>& relabel) const {
    Game out = *this;
    out.label_pool_.clear();
    std::map<std::vector<std::string>, int> interned;
    for (auto& node : out.nodes_) {
      if (node.label_sets.empty()) continue;
      NodeId h = static_cast<NodeId>(&node - out.nodes_.data());
      for (int i = 0; i < num_players(); ++i) {
        std::vector<std::string> labels;
        for (const auto& l : actions(i, h)) labels.push_back(relabel(i, h, l));
        auto [it, inserted] = interned.emplace(labels, static_cast<int>(out.label_pool_.size()));
        if (inserted) out.label_pool_.push_back(labels);
        node.label_sets[i] = it->second;
      }
    }
    return out;
  }

  Game renamed(std::string name) const {
    Game out = *this;
    out.name_ = std::move(name);
    return out;
  }

  friend bool operator==(const Game& a, const Game& b) {
    if (a.name_ != b.name_ || a.types_ != b.types_ || a.horizon_ != b.horizon_ || a.prior_ != b.prior_) return false;
    if (a.nodes_.size() != b.nodes_.size() || a.payoffs_ != b.payoffs_) return false;
    for (NodeId h = 0; h < a.num_nodes(); ++h) {
      if (a.nodes_[h].children != b.nodes_[h].children || a.nodes_[h].parent != b.nodes_[h].parent) return false;
      if (a.is_terminal(h)) continue;
      for (int i = 0; i < a.num_players(); ++i) {
        if (a.actions(i, h) != b.actions(i, h)) return false;
      }
    }
    return true;
  }

 private:
  template <class T>
  friend class Game;
  friend class GameBuilder<S>;

  template <class T, class U>
  static T convert_scalar(const U& x) {
    if constexpr (std::is_same_v<T, U>) {
      return x;
    } else if constexpr (std::is_same_v<T, double>) {
      return to_double(x);
    } else {
      return T(x);
    }
  }

  std::string name_;
  std::vector<std::vector<std::string>> types_;
  std::vector<int> type_stride_;
  std::vector<std::vector<std::vector<int>>> profiles_with_;
  std::vector<S> prior_;
  int horizon_ = 0;
  std::vector<HistoryNode> nodes_;
  std::vector<std::vector<NodeId>> by_stage_;
  std::vector<std::vector<std::string>> label_pool_;
  std::vector<std::vector<S>> payoffs_;  // per node; only terminals are filled
};

// Incremental construction: declare action sets on the frontier stage,
// expand, repeat until the horizon, then attach payoffs and build().
template <class S>
class GameBuilder {
 public:
  GameBuilder(std::string name, std::vector<std::vector<std::string>> types, std::vector<S> prior, int horizon) {
    if (horizon < 1) throw Error(ErrorKind::StageOutOfRange, "horizon must be at least 1");
    if (types.empty()) throw Error(ErrorKind::InvalidParameter, "a game needs at least one player");
    for (auto& t : types) {
      if (t.empty()) t.push_back(kTrivialType);
    }
    g_.name_ = std::move(name);
    g_.types_ = std::move(types);
    g_.horizon_ = horizon;
    int n = static_cast<int>(g_.types_.size());
    g_.type_stride_.assign(n, 1);
    for (int i = n - 2; i >= 0; --i) g_.type_stride_[i] = g_.type_stride_[i + 1] * static_cast<int>(g_.types_[i + 1].size());
    int profiles = g_.type_stride_[0] * static_cast<int>(g_.types_[0].size());
    if (prior.empty() && profiles == 1) prior.push_back(S(1));
    if (static_cast<int>(prior.size()) != profiles) {
      throw Error(ErrorKind::PriorNotNormalized, "prior has " + std::to_string(prior.size()) + " entries, expected " + std::to_string(profiles));
    }
    S total(0);
    for (const auto& p : prior) {
      if (!(p > S(0))) throw Error(ErrorKind::PriorNotFullSupport, "every type profile needs positive prior mass");
      total += p;
    }
    if (!approx_equal(total, S(1), scalar_traits<S>::normalization_tolerance())) {
      throw Error(ErrorKind::PriorNotNormalized, "prior sums to " + scalar_to_string(total));
    }
    g_.prior_ = std::move(prior);
    g_.profiles_with_.resize(n);
    for (int i = 0; i < n; ++i) {
      g_.profiles_with_[i].resize(g_.types_[i].size());
      for (int p = 0; p < profiles; ++p) g_.profiles_with_[i][g_.type_of(p, i)].push_back(p);
    }
    HistoryNode root;
    root.label_sets.assign(n, -1);
    g_.nodes_.push_back(root);
    g_.by_stage_.assign(horizon + 1, {});
    g_.by_stage_[0].push_back(0);
  }

  const Game<S>& partial() const { return g_; }
  int current_stage() const { return stage_; }
  const std::vector<NodeId>& frontier() const { return g_.by_stage_[stage_]; }

  void set_actions(NodeId h, int player, std::vector<std::string> labels) {
    if (labels.empty()) {
      throw Error(ErrorKind::EmptyActionSet, "player " + std::to_string(player + 1) + " has no actions at " + g_.path_string(h));
    }
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::DuplicateDeclaration, "repeated action label at " + g_.path_string(h));
    }
    auto [it, inserted] = interned_.emplace(labels, static_cast<int>(g_.label_pool_.size()));
    if (inserted) g_.label_pool_.push_back(std::move(labels));
    g_.nodes_[h].label_sets[player] = it->second;
  }

  // Materializes the next stage.
  void expand() {
    if (stage_ >= g_.horizon_) throw Error(ErrorKind::StageOutOfRange, "cannot expand past the horizon");
    int n = g_.num_players();
    for (NodeId h : g_.by_stage_[stage_]) {
      for (int i = 0; i < n; ++i) {
        if (g_.nodes_[h].label_sets[i] < 0) {
          throw Error(ErrorKind::EmptyActionSet, "player " + std::to_string(i + 1) + " has no action set at " + g_.path_string(h));
        }
      }
      int joint = 1;
      for (int i = 0; i < n; ++i) joint *= g_.num_actions(i, h);
      for (int k = 0; k < joint; ++k) {
        HistoryNode c;
        c.parent = h;
        c.stage = stage_ + 1;
        c.index_in_stage = static_cast<int>(g_.by_stage_[stage_ + 1].size());
        c.incoming = g_.decode_joint(h, k);
        if (c.stage < g_.horizon_) c.label_sets.assign(n, -1);
        NodeId id = static_cast<NodeId>(g_.nodes_.size());
        g_.nodes_.push_back(std::move(c));
        g_.nodes_[h].children.push_back(id);
        g_.by_stage_[stage_ + 1].push_back(id);
      }
    }
    ++stage_;
  }

  void set_payoff(int profile, NodeId terminal, std::vector<S> values) {
    if (!g_.is_terminal(terminal)) throw Error(ErrorKind::DanglingHistory, g_.path_string(terminal) + " is not terminal");
    if (static_cast<int>(values.size()) != g_.num_players()) {
      throw Error(ErrorKind::MissingPayoff, "payoff vector length differs from the number of players");
    }
    auto& row = pending_[terminal];
    if (row.empty()) row.resize(g_.num_type_profiles());
    row[profile] = std::move(values);
  }

  Game<S> build() && {
    if (stage_ != g_.horizon_) throw Error(ErrorKind::StageOutOfRange, "tree not expanded to the horizon");
    g_.payoffs_.assign(g_.nodes_.size(), {});
    int n = g_.num_players();
    for (NodeId z : g_.terminals()) {
      auto it = pending_.find(z);
      auto& row = g_.payoffs_[z];
      row.reserve(static_cast<size_t>(g_.num_type_profiles()) * n);
      for (int p = 0; p < g_.num_type_profiles(); ++p) {
        if (it == pending_.end() || it->second[p].empty()) {
          throw Error(ErrorKind::MissingPayoff, "no payoff for type profile " + std::to_string(p) + " at " + g_.path_string(z));
        }
        row.insert(row.end(), it->second[p].begin(), it->second[p].end());
      }
    }
    return std::move(g_);
  }

 private:
  Game<S> g_;
  int stage_ = 0;
  std::map<std::vector<std::string>, int> interned_;
  std::map<NodeId, std::vector<std::vector<S>>> pending_;
};

// Declarative description consumed by build_game.
template <class S>
struct GameSpec {
  std::string name = "game";
  std::vector<std::vector<std::string>> types;  // one entry per player; empty = no private type
  std::vector<S> prior;                          // over type profiles; may be empty when |Theta| = 1
  int horizon = 1;
  // Action labels of `player` at a non-terminal history; return {} for a
  // non-mover to get the singleton pass action.
  std::function<std::vector<std::string>(int player, const PublicHistory&)> actions;
  // Payoff vector for a type profile (indices per player) at a terminal history.
  std::function<std::optional<std::vector<S>>(const std::vector<int>& types, const PublicHistory&)> payoff;
  bool empty_means_pass = true;
};

template <class S>
Game<S> build_game(const GameSpec<S>& spec) {
  GameBuilder<S> b(spec.name, spec.types, spec.prior, spec.horizon);
  int n = static_cast<int>(spec.types.size());
  for (int t = 0; t < spec.horizon; ++t) {
    for (NodeId h : b.frontier()) {
      auto history = b.partial().labels_of(h);
      for (int i = 0; i < n; ++i) {
        auto labels = spec.actions(i, history);
        if (labels.empty() && spec.empty_means_pass) labels.push_back(kPassLabel);
        b.set_actions(h, i, std::move(labels));
      }
    }
    b.expand();
  }
  const auto& g = b.partial();
  std::vector<NodeId> terminals = g.terminals();
  for (NodeId z : terminals) {
    auto history = g.labels_of(z);
    for (int p = 0; p < g.num_type_profiles(); ++p) {
      auto u = spec.payoff(g.decode_profile(p), history);
      if (!u) throw Error(ErrorKind::MissingPayoff, "no payoff at " + g.path_string(z));
      b.set_payoff(p, z, std::move(*u));
    }
  }
  return std::move(b).build();
}

namespace detail {

// Splits on `sep` at parenthesis depth zero.
inline std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Label with any scramble suffix ("@h<t>:<k>") removed.
inline std::string base_label(const std::string& label) {
  auto at = label.find('@');
  return at == std::string::npos ? label : label.substr(0, at);
}

}  // namespace detail

template <class S>
std::optional<NodeId> Game<S>::find_history(const std::string& text) const {
  std::string path = detail::trim(text);
  if (path == "root" || path.empty()) return root();
  // Exact label, else a unique label with that base (scrambled games).
  auto match = [this](int i, NodeId at, const std::string& label) {
    int a = action_index(i, at, label);
    if (a >= 0) return a;
    const auto& labels = actions(i, at);
    for (size_t k = 0; k < labels.size(); ++k) {
      if (detail::base_label(labels[k]) != label) continue;
      if (a >= 0) return -1;
      a = static_cast<int>(k);
    }
    return a;
  };
  NodeId h = root();
  for (const auto& raw : detail::split_top_level(path, '/')) {
    std::string step = detail::trim(raw);
    if (is_terminal(h) || step.empty()) return std::nullopt;
    std::vector<int> chosen(num_players(), -1);
    if (step.front() == '(') {
      if (step.back() != ')') return std::nullopt;
      auto parts = detail::split_top_level(step.substr(1, step.size() - 2), ',');
      if (static_cast<int>(parts.size()) != num_players()) return std::nullopt;
      for (int i = 0; i < num_players(); ++i) {
        chosen[i] = match(i, h, detail::trim(parts[i]));
        if (chosen[i] < 0) return std::nullopt;
      }
    } else {
      int mover = sole_mover(h);
      for (int i = 0; i < num_players(); ++i) {
        if (i == mover || num_actions(i, h) == 1) chosen[i] = (i == mover) ? match(i, h, step) : 0;
      }
      if (mover < 0) {
        // Nobody has a real choice: accept any player's (unique) label.
        bool matched = false;
        for (int i = 0; i < num_players(); ++i) matched = matched || match(i, h, step) == 0;
        if (!matched) return std::nullopt;
      }
      if (std::any_of(chosen.begin(), chosen.end(), [](int a) { return a < 0; })) return std::nullopt;
    }
    h = child(h, chosen);
  }
  return h;
}

// F(theta_-i | theta_i) restricted to the opponents' profiles, in the order
// of profiles_with(player, type).
template <class S>
std::vector<S> conditional_prior(const Game<S>& game, int player, int type) {
  auto full = game.conditional_prior(player, type);
  std::vector<S> out;
  for (int p : game.profiles_with(player, type)) out.push_back(full[p]);
  return out;
}

}  // namespace cursed
