#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cursed/game.hpp"

namespace cursed {

// Line-oriented game format:
//
//   game <name>
//   players <n>
//   types <i>: <label>+            (omit for players without private types)
//   prior: (<label tuple>) = <number>
//   scrambled: auto                (optional)
//   stage <t>:
//     actions <i> at <*|root|path>: <label>+
//   payoffs: (<type tuple>, <terminal path>) = (<u_1>, ..., <u_n>)
//
// Type tuples list one label per player with declared types, in player
// order; `*` matches any type in payoff tuples. Players without an actions
// line at a history get the single action `pass`.
namespace dsl_detail {

using detail::split_top_level;
using detail::trim;

struct Line {
  int number = 0;
  int indent = 0;  // 0-based column of the first character of `text`
  std::string raw;
  std::string text;
};

inline std::vector<Line> split_lines(std::string_view source) {
  std::vector<Line> out;
  int number = 0;
  size_t start = 0;
  while (start <= source.size()) {
    size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    ++number;
    std::string raw(source.substr(start, end - start));
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string body = raw.substr(0, raw.find('#'));
    size_t first = body.find_first_not_of(" \t");
    if (first != std::string::npos) {
      size_t last = body.find_last_not_of(" \t");
      out.push_back({number, static_cast<int>(first), raw, body.substr(first, last - first + 1)});
    }
    if (end == source.size()) break;
    start = end + 1;
  }
  return out;
}

inline std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// Splits "head: tail" at the first ':' followed by whitespace or end of line.
inline bool split_colon(const std::string& text, std::string& head, std::string& tail) {
  for (size_t k = 0; k < text.size(); ++k) {
    if (text[k] == ':' && (k + 1 == text.size() || text[k + 1] == ' ' || text[k + 1] == '\t')) {
      head = trim(text.substr(0, k));
      tail = k + 1 < text.size() ? trim(text.substr(k + 1)) : std::string();
      return true;
    }
  }
  return false;
}

inline bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' || c == '/' || c == '*' || c == '#') return false;
  }
  return label != "root";
}

}  // namespace dsl_detail

template <class S>
Game<S> scramble(const Game<S>& game);

template <class S>
Game<S> parse_game(std::string_view source) {
  using namespace dsl_detail;
  using detail::split_top_level;
  using detail::trim;
  auto lines = split_lines(source);
  size_t pos = 0;
  auto fail = [&](ErrorKind kind, const std::string& message, const Line* line, int column = -1) -> Error {
    if (!line) return Error(kind, message, static_cast<int>(lines.empty() ? 1 : lines.back().number + 1), 1);
    return Error(kind, message, line->number, (column >= 0 ? column : line->indent) + 1);
  };
  auto col_of = [](const Line& line, const std::string& token) {
    auto at = line.raw.find(token);
    return at == std::string::npos ? line.indent : static_cast<int>(at);
  };
  auto wrap = [&](const Line& line, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.line() > 0) throw;
      std::string msg = e.what();
      auto colon = msg.find(": ");
      throw Error(e.kind(), colon == std::string::npos ? msg : msg.substr(colon + 2), line.number, line.indent + 1);
    }
  };

  if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty game description: expected 'game <name>'", 1, 1);

  // game <name>
  const Line& head = lines[pos++];
  if (!starts_with(head.text, "game") || (head.text.size() > 4 && head.text[4] != ' ' && head.text[4] != '\t')) {
    throw fail(ErrorKind::SyntaxError, "expected 'game <name>'", &head);
  }
  std::string name = trim(head.text.substr(4));
  if (name.empty()) throw fail(ErrorKind::SyntaxError, "missing game name", &head);

  // players <n>
  if (pos >= lines.size()) throw fail(ErrorKind::SyntaxError, "expected 'players <n>'", nullptr);
  const Line& pl = lines[pos++];
  auto pw = words(pl.text);
  if (pw.size() != 2 || pw[0] != "players") throw fail(ErrorKind::SyntaxError, "expected 'players <n>'", &pl);
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(pw[1], &used);
    if (used != pw[1].size() || n < 1) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw fail(ErrorKind::SyntaxError, "player count must be a positive integer", &pl, col_of(pl, pw[1]));
  }

  auto parse_player = [&](const Line& line, const std::string& token) {
    int i = 0;
    try {
      size_t used = 0;
      i = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument("player");
    } catch (const std::exception&) {
      throw fail(ErrorKind::SyntaxError, "expected a player number, got '" + token + "'", &line, col_of(line, token));
    }
    if (i < 1 || i > n) throw fail(ErrorKind::UndeclaredLabel, "player " + token + " is not declared", &line, col_of(line, token));
    return i - 1;
  };

  // types
  std::vector<std::vector<std::string>> types(n);
  while (pos < lines.size() && starts_with(lines[pos].text, "types")) {
    const Line& line = lines[pos++];
    std::string h, tail;
    if (!split_colon(line.text, h, tail)) throw fail(ErrorKind::SyntaxError, "expected 'types <i>: <label>+'", &line);
    auto hw = words(h);
    if (hw.size() != 2) throw fail(ErrorKind::SyntaxError, "expected 'types <i>: <label>+'", &line);
    int i = parse_player(line, hw[1]);
    if (!types[i].empty()) throw fail(ErrorKind::DuplicateDeclaration, "types of player " + hw[1] + " declared twice", &line);
    auto labels = words(tail);
    if (labels.empty()) throw fail(ErrorKind::SyntaxError, "a type declaration needs at least one label", &line);
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!valid_label(l)) throw fail(ErrorKind::SyntaxError, "invalid type label '" + l + "'", &line, col_of(line, l));
      if (!seen.insert(l).second) throw fail(ErrorKind::DuplicateDeclaration, "type '" + l + "' repeated", &line, col_of(line, l));
    }
    types[i] = labels;
  }
  std::vector<int> typed;
  for (int i = 0; i < n; ++i) {
    if (!types[i].empty()) typed.push_back(i);
  }
  auto full_types = types;
  for (auto& t : full_types) {
    if (t.empty()) t.push_back(kTrivialType);
  }
  int profiles = 1;
  for (const auto& t : full_types) profiles *= static_cast<int>(t.size());
  auto profile_of = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * static_cast<int>(full_types[i].size()) + t[i];
    return idx;
  };

  // Parses "(a, b, ...)" into its top-level comma-separated items.
  auto tuple_items = [&](const Line& line, const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw fail(ErrorKind::SyntaxError, "expected a parenthesized tuple", &line, col_of(line, t));
    auto inner = trim(t.substr(1, t.size() - 2));
    std::vector<std::string> items;
    if (inner.empty()) return items;
    for (auto& item : split_top_level(inner, ',')) items.push_back(trim(item));
    return items;
  };
  // Resolves a type tuple over typed players; -1 marks a wildcard.
  auto resolve_types = [&](const Line& line, const std::vector<std::string>& items, bool allow_wildcard) {
    std::vector<int> out(n, 0);
    for (size_t k = 0; k < typed.size(); ++k) {
      int i = typed[k];
      const auto& label = items[k];
      if (label == "*" && allow_wildcard) {
        out[i] = -1;
        continue;
      }
      auto it = std::find(types[i].begin(), types[i].end(), label);
      if (it == types[i].end()) throw fail(ErrorKind::UndeclaredLabel, "type '" + label + "' is not declared for player " + std::to_string(i + 1), &line, col_of(line, label));
      out[i] = static_cast<int>(it - types[i].begin());
    }
    return out;
  };

  // prior
  std::vector<S> prior(profiles, S(0));
  std::vector<bool> prior_set(profiles, false);
  while (pos < lines.size() && starts_with(lines[pos].text, "prior")) {
    const Line& line = lines[pos++];
    std::string h, tail;
    if (!split_colon(line.text, h, tail) || h != "prior") throw fail(ErrorKind::SyntaxError, "expected 'prior: (<types>) = <p>'", &line);
    auto eq = tail.rfind('=');
    if (eq == std::string::npos) throw fail(ErrorKind::SyntaxError, "expected '=' in prior line", &line);
    auto items = tuple_items(line, tail.substr(0, eq));
    if (items.size() != typed.size()) throw fail(ErrorKind::SyntaxError, "prior tuple needs " + std::to_string(typed.size()) + " labels", &line);
    auto t = resolve_types(line, items, false);
    int idx = profile_of(t);
    if (prior_set[idx]) throw fail(ErrorKind::DuplicateDeclaration, "prior entry repeated", &line);
    std::string value = trim(tail.substr(eq + 1));
    prior[idx] = wrap(line, [&] { return parse_scalar<S>(value); });
    prior_set[idx] = true;
  }
  if (profiles == 1 && !prior_set[0]) {
    prior[0] = S(1);
    prior_set[0] = true;
  }
  for (int p = 0; p < profiles; ++p) {
    if (!prior_set[p]) {
      const Line* at = pos < lines.size() ? &lines[pos] : nullptr;
      throw fail(ErrorKind::PriorNotFullSupport, "type profile " + std::to_string(p) + " has no prior entry", at);
    }
  }

  bool scrambled = false;
  if (pos < lines.size() && starts_with(lines[pos].text, "scrambled")) {
    const Line& line = lines[pos++];
    std::string h, tail;
    if (!split_colon(line.text, h, tail) || h != "scrambled" || tail != "auto") throw fail(ErrorKind::SyntaxError, "expected 'scrambled: auto'", &line);
    scrambled = true;
  }

  // Stage blocks; count them first to learn the horizon.
  int horizon = 0;
  for (size_t k = pos; k < lines.size() && !starts_with(lines[k].text, "payoffs"); ++k) {
    if (starts_with(lines[k].text, "stage")) ++horizon;
  }
  if (horizon == 0) {
    const Line* at = pos < lines.size() ? &lines[pos] : nullptr;
    throw fail(ErrorKind::SyntaxError, "expected at least one 'stage <t>:' block", at);
  }

  auto builder = wrap(lines[pos < lines.size() ? pos : lines.size() - 1], [&] { return GameBuilder<S>(name, types, prior, horizon); });

  for (int t = 1; t <= horizon; ++t) {
    const Line& sl = lines[pos++];
    std::string h, tail;
    auto sw = words(sl.text);
    if (!split_colon(sl.text, h, tail) || !tail.empty() || words(h).size() != 2 || words(h)[0] != "stage") {
      throw fail(ErrorKind::SyntaxError, "expected 'stage <t>:'", &sl);
    }
    if (words(h)[1] != std::to_string(t)) throw fail(ErrorKind::StageOutOfRange, "expected stage " + std::to_string(t), &sl, col_of(sl, words(h)[1]));
    std::map<std::pair<int, NodeId>, std::vector<std::string>> explicit_actions;
    std::map<int, std::vector<std::string>> wildcard_actions;
    while (pos < lines.size() && starts_with(lines[pos].text, "actions")) {
      const Line& line = lines[pos++];
      if (!split_colon(line.text, h, tail)) throw fail(ErrorKind::SyntaxError, "expected 'actions <i> at <history>: <label>+'", &line);
      auto hw = words(h);
      if (hw.size() < 4 || hw[2] != "at") throw fail(ErrorKind::SyntaxError, "expected 'actions <i> at <history>: <label>+'", &line);
      int i = parse_player(line, hw[1]);
      auto at_pos = h.find(" at ");
      std::string pattern = trim(h.substr(at_pos + 4));
      auto labels = words(tail);
      if (labels.empty()) throw fail(ErrorKind::EmptyActionSet, "empty action list", &line);
      for (const auto& l : labels) {
        if (!valid_label(l)) throw fail(ErrorKind::SyntaxError, "invalid action label '" + l + "'", &line, col_of(line, l));
      }
      if (pattern == "*") {
        if (wildcard_actions.count(i)) throw fail(ErrorKind::DuplicateDeclaration, "wildcard actions repeated for player " + hw[1], &line);
        wildcard_actions[i] = labels;
        continue;
      }
      auto node = builder.partial().find_history(pattern);
      if (!node) throw fail(ErrorKind::UndeclaredLabel, "history '" + pattern + "' does not exist", &line, col_of(line, pattern));
      if (builder.partial().stage(*node) != t - 1) {
        throw fail(ErrorKind::StageOutOfRange, "history '" + pattern + "' is not at stage " + std::to_string(t - 1), &line, col_of(line, pattern));
      }
      if (!explicit_actions.emplace(std::make_pair(i, *node), labels).second) {
        throw fail(ErrorKind::DuplicateDeclaration, "actions of player " + hw[1] + " at '" + pattern + "' repeated", &line);
      }
    }
    std::vector<NodeId> frontier = builder.frontier();
    for (NodeId node : frontier) {
      for (int i = 0; i < n; ++i) {
        std::vector<std::string> labels{kPassLabel};
        if (auto it = explicit_actions.find({i, node}); it != explicit_actions.end()) {
          labels = it->second;
        } else if (auto w = wildcard_actions.find(i); w != wildcard_actions.end()) {
          labels = w->second;
        }
        wrap(sl, [&] {
          builder.set_actions(node, i, labels);
          return 0;
        });
      }
    }
    builder.expand();
  }

  // payoffs
  std::map<std::pair<int, NodeId>, int> specificity;
  while (pos < lines.size()) {
    const Line& line = lines[pos++];
    std::string h, tail;
    if (!starts_with(line.text, "payoffs") || !split_colon(line.text, h, tail) || h != "payoffs") {
      throw fail(ErrorKind::SyntaxError, "expected 'payoffs: (<types>, <path>) = (<u>...)'", &line);
    }
    auto lhs_end = split_top_level(tail, '=');
    if (lhs_end.size() != 2) throw fail(ErrorKind::SyntaxError, "expected exactly one '=' in payoff line", &line);
    auto items = tuple_items(line, lhs_end[0]);
    if (items.size() != typed.size() + 1) throw fail(ErrorKind::SyntaxError, "payoff key needs " + std::to_string(typed.size()) + " type labels and a path", &line);
    auto values = tuple_items(line, lhs_end[1]);
    if (static_cast<int>(values.size()) != n) throw fail(ErrorKind::MissingPayoff, "payoff vector needs " + std::to_string(n) + " entries", &line);
    std::vector<std::string> type_items(items.begin(), items.end() - 1);
    auto t = resolve_types(line, type_items, true);
    const std::string& path = items.back();
    auto node = builder.partial().find_history(path);
    if (!node) throw fail(ErrorKind::UndeclaredLabel, "history '" + path + "' does not exist", &line, col_of(line, path));
    if (!builder.partial().is_terminal(*node)) throw fail(ErrorKind::DanglingHistory, "history '" + path + "' is not terminal", &line, col_of(line, path));
    std::vector<S> u;
    for (const auto& v : values) u.push_back(wrap(line, [&] { return parse_scalar<S>(v); }));
    int spec = 0;
    for (int i = 0; i < n; ++i) spec += t[i] >= 0 ? 1 : 0;
    for (int p = 0; p < profiles; ++p) {
      bool match = true;
      int rest = p;
      std::vector<int> tp(n);
      for (int i = n - 1; i >= 0; --i) {
        int m = static_cast<int>(full_types[i].size());
        tp[i] = rest % m;
        rest /= m;
      }
      for (int i = 0; i < n; ++i) match = match && (t[i] < 0 || t[i] == tp[i]);
      if (!match) continue;
      auto key = std::make_pair(p, *node);
      auto it = specificity.find(key);
      if (it != specificity.end()) {
        if (it->second == spec) throw fail(ErrorKind::DuplicateDeclaration, "payoff for '" + path + "' repeated", &line);
        if (it->second > spec) continue;
      }
      specificity[key] = spec;
      builder.set_payoff(p, *node, u);
    }
  }
  Game<S> game = std::move(builder).build();
  return scrambled ? scramble(game) : game;
}

template <class S>
std::string serialize(const Game<S>& game) {
  std::ostringstream out;
  int n = game.num_players();
  out << "game " << game.name() << "\n";
  out << "players " << n << "\n";
  std::vector<int> typed;
  for (int i = 0; i < n; ++i) {
    if (game.type_labels(i).size() == 1 && game.type_label(i, 0) == kTrivialType) continue;
    typed.push_back(i);
    out << "types " << i + 1 << ":";
    for (const auto& t : game.type_labels(i)) out << ' ' << t;
    out << "\n";
  }
  auto type_tuple = [&](int p) {
    std::string s;
    for (size_t k = 0; k < typed.size(); ++k) s += (k ? ", " : "") + game.type_label(typed[k], game.type_of(p, typed[k]));
    return s;
  };
  if (!typed.empty()) {
    for (int p = 0; p < game.num_type_profiles(); ++p) {
      out << "prior: (" << type_tuple(p) << ") = " << scalar_to_string(game.prior(p)) << "\n";
    }
  }
  auto join = [](const std::vector<std::string>& labels) {
    std::string s;
    for (const auto& l : labels) s += ' ' + l;
    return s;
  };
  for (int t = 1; t <= game.horizon(); ++t) {
    out << "stage " << t << ":\n";
    const auto& nodes = game.nodes_at_stage(t - 1);
    for (int i = 0; i < n; ++i) {
      int shared = game.label_set_id(i, nodes.front());
      bool uniform = std::all_of(nodes.begin(), nodes.end(), [&](NodeId h) { return game.label_set_id(i, h) == shared; });
      bool is_pass = game.label_set(shared) == std::vector<std::string>{kPassLabel};
      if (uniform) {
        if (!is_pass) out << "  actions " << i + 1 << " at *:" << join(game.label_set(shared)) << "\n";
        continue;
      }
      for (NodeId h : nodes) {
        if (game.actions(i, h) == std::vector<std::string>{kPassLabel}) continue;
        out << "  actions " << i + 1 << " at " << game.path_string(h) << ":" << join(game.actions(i, h)) << "\n";
      }
    }
  }
  for (NodeId z : game.terminals()) {
    for (int p = 0; p < game.num_type_profiles(); ++p) {
      out << "payoffs: (";
      if (!typed.empty()) out << type_tuple(p) << ", ";
      out << game.path_string(z) << ") = (";
      auto u = game.payoffs(p, z);
      for (int i = 0; i < n; ++i) out << (i ? ", " : "") << scalar_to_string(u[i]);
      out << ")\n";
    }
  }
  return out.str();
}

// Relabels every action `a` of player i at history h (stage t, position k
// among stage-t histories) to "a@h<t>:<k>", so same-stage histories never
// share labels. Labels that already carry a suffix keep their base label.
template <class S>
Game<S> scramble(const Game<S>& game) {
  return game.relabeled([&](int, NodeId h, const std::string& label) {
    return detail::base_label(label) + "@h" + std::to_string(game.stage(h)) + ":" + std::to_string(game.node(h).index_in_stage);
  });
}

template <class S>
bool is_scrambled(const Game<S>& game) {
  for (int t = 0; t < game.horizon(); ++t) {
    const auto& nodes = game.nodes_at_stage(t);
    for (int i = 0; i < game.num_players(); ++i) {
      std::set<std::string> seen;
      for (NodeId h : nodes) {
        for (const auto& l : game.actions(i, h)) {
          if (!seen.insert(l).second) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace cursed
