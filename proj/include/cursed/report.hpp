#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cursed/cse.hpp"
#include "cursed/one_stage.hpp"
#include "cursed/scenarios.hpp"

namespace cursed {

using Json = nlohmann::ordered_json;

// Exact values are written as strings ("1/3"), floats as numbers.
template <class S>
Json scalar_json(const S& x) {
  if constexpr (scalar_traits<S>::exact) return scalar_to_string(x);
  else return x;
}

template <class S>
std::string opponent_types_label(const Game<S>& game, int player, int profile) {
  std::string out;
  auto types = game.decode_profile(profile);
  for (int j = 0; j < game.num_players(); ++j) {
    if (j == player) continue;
    if (!out.empty()) out += ",";
    out += game.type_label(j, types[j]);
  }
  return out;
}

// Rows where the player is uncertain about someone's type.
template <class S>
Json beliefs_json(const Game<S>& game, const BeliefSystem<S>& mu) {
  Json out = Json::array();
  if (mu.rows.empty()) return out;
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      const auto& mine = game.profiles_with(i, ti);
      if (mine.size() < 2) continue;
      for (NodeId h : game.nonterminals()) {
        const auto& row = mu.at(i, ti, h);
        if (row.empty()) continue;
        Json dist = Json::object();
        for (int p : mine) dist[opponent_types_label(game, i, p)] = scalar_json(row[p]);
        out.push_back({{"player", i + 1}, {"type", game.type_label(i, ti)}, {"history", game.path_string(h)}, {"belief", dist}});
      }
    }
  }
  return out;
}

template <class S>
Json to_json(const Game<S>& game, const EquilibriumReport<S>& report) {
  Json out;
  out["concept"] = report.concept_name;
  out["profile"] = report.profile;
  for (const auto& [name, value] : report.parameters) out[name] = scalar_json(value);
  for (const auto& [name, value] : report.notes) {
    if (value == "true" || value == "false") out[name] = value == "true";
    else out[name] = value;
  }
  out["verdict"] = report.verdict;
  out["worst_slack"] = scalar_json(report.worst_slack);
  out["witnesses"] = report.witnesses;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"player", v.player}, {"type", v.type}, {"history", v.history}, {"action", v.action}, {"slack", scalar_json(v.slack)}});
  }
  out["violations"] = violations;
  out["ties"] = report.ties;
  out["beliefs"] = beliefs_json(game, report.beliefs);
  return out;
}

template <class S>
Json profile_to_json(const Game<S>& game, const Profile<S>& sigma) {
  Json out = Json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : decision_histories(game, i)) {
        Json entry{{"player", i + 1}, {"type", game.type_label(i, ti)}, {"history", game.path_string(h)}};
        int a = pure_action(sigma, i, ti, h);
        if (a >= 0) {
          entry["action"] = game.actions(i, h)[a];
        } else {
          Json dist = Json::object();
          for (int k = 0; k < game.num_actions(i, h); ++k) dist[game.actions(i, h)[k]] = scalar_json(sigma.prob(i, ti, h, k));
          entry["distribution"] = dist;
        }
        out.push_back(entry);
      }
    }
  }
  return out;
}

namespace detail {

template <class S>
S json_scalar(const Json& v) {
  if (v.is_string()) return parse_scalar<S>(v.get<std::string>());
  if (v.is_number_integer()) return parse_scalar<S>(std::to_string(v.get<long long>()));
  if (v.is_number()) return parse_scalar<S>(v.dump());
  throw Error(ErrorKind::InvalidProfile, "probability must be a number or a rational string");
}

}  // namespace detail

// Entries {player, type, history, action} or {player, type, history,
// distribution: {label: p}}. Every decision point must be covered.
template <class S>
Profile<S> profile_from_json(const Game<S>& game, const Json& doc) {
  if (!doc.is_array()) throw Error(ErrorKind::InvalidProfile, "profile JSON must be an array of entries");
  auto sigma = empty_profile<S>(game);
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        if (game.num_actions(i, h) == 1) sigma.at(i, ti, h) = {S(1)};
      }
    }
  }
  for (const auto& e : doc) {
    if (!e.is_object() || !e.contains("player") || !e.contains("history")) throw Error(ErrorKind::InvalidProfile, "entry needs player and history: " + e.dump());
    int i = e["player"].get<int>() - 1;
    if (i < 0 || i >= game.num_players()) throw Error(ErrorKind::InvalidProfile, "no player " + e["player"].dump());
    std::string type_label = e.value("type", std::string(kTrivialType));
    int ti = -1;
    for (int t = 0; t < game.num_types(i); ++t) {
      if (game.type_label(i, t) == type_label) ti = t;
    }
    if (ti < 0) throw Error(ErrorKind::InvalidProfile, "player " + std::to_string(i + 1) + " has no type '" + type_label + "'");
    auto h = game.find_history(e["history"].get<std::string>());
    if (!h || game.is_terminal(*h)) throw Error(ErrorKind::InvalidProfile, "no decision history '" + e["history"].get<std::string>() + "'");
    auto& row = sigma.at(i, ti, *h);
    row.assign(game.num_actions(i, *h), S(0));
    if (e.contains("action")) {
      int a = detail::resolve_label(game, i, *h, e["action"].get<std::string>());
      if (a < 0) throw Error(ErrorKind::InvalidProfile, "unknown action " + e["action"].dump() + " at " + game.path_string(*h));
      row[a] = S(1);
    } else if (e.contains("distribution")) {
      for (const auto& [label, p] : e["distribution"].items()) {
        int a = detail::resolve_label(game, i, *h, label);
        if (a < 0) throw Error(ErrorKind::InvalidProfile, "unknown action '" + label + "' at " + game.path_string(*h));
        row[a] = detail::json_scalar<S>(p);
      }
    } else {
      throw Error(ErrorKind::InvalidProfile, "entry needs action or distribution: " + e.dump());
    }
  }
  for (int i = 0; i < game.num_players(); ++i) {
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        if (sigma.at(i, ti, h).empty()) {
          throw Error(ErrorKind::InvalidProfile, "missing entry for player " + std::to_string(i + 1) + ", type " + game.type_label(i, ti) + ", history " + game.path_string(h));
        }
      }
    }
  }
  validate_profile(game, sigma);
  return sigma;
}

// JSON entries or the compact notation.
template <class S>
Profile<S> parse_profile(const Game<S>& game, const std::string& text) {
  auto t = detail::trim(text);
  bool json = !t.empty() && t.front() == '[' && t.find_first_not_of(" \t\r\n", 1) != std::string::npos && t[t.find_first_not_of(" \t\r\n", 1)] == '{';
  if (!json) return parse_compact_profile(game, t);
  Json doc;
  try {
    doc = Json::parse(t);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidProfile, std::string("malformed profile JSON: ") + e.what());
  }
  return profile_from_json(game, doc);
}

template <class S>
Json to_json(const Game<S>& game, const std::vector<PureEquilibrium<S>>& eqs, const OneStageConcept<S>& spec) {
  Json out;
  out["concept"] = spec.name();
  if (spec.kind == OneStageConcept<S>::kCE) out["chi"] = scalar_json(spec.chi);
  Json list = Json::array();
  for (const auto& e : eqs) {
    Json objectives = Json::array();
    for (int i = 0; i < game.num_players(); ++i) {
      for (int ti = 0; ti < game.num_types(i); ++ti) {
        Json values = Json::object();
        for (int a = 0; a < game.num_actions(i, Game<S>::root()); ++a) values[game.actions(i, Game<S>::root())[a]] = scalar_json(e.objectives[i][ti][a]);
        objectives.push_back({{"player", i + 1}, {"type", game.type_label(i, ti)}, {"objective", values}});
      }
    }
    list.push_back({{"profile", e.compact}, {"index", e.index}, {"objectives", objectives}, {"ties", e.ties}});
  }
  out["equilibria"] = list;
  return out;
}

// Runtime is left out so that identical runs print identical JSON.
inline Json to_json(const ClaimReport& report) {
  Json out;
  out["claim"] = report.claim;
  out["arithmetic"] = report.arithmetic;
  out["passed"] = report.passed();
  out["grid"] = report.grid;
  out["mismatches"] = report.mismatches;
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back({{"parameters", p.parameters}, {"engine", p.engine}, {"predicted", p.predicted}, {"match", p.match}});
  }
  out["points"] = points;
  return out;
}

}  // namespace cursed
