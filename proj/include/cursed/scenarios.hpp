#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cursed/cse.hpp"
#include "cursed/dsl.hpp"
#include "cursed/one_stage.hpp"
#include "cursed/parallel.hpp"
#include "cursed/sce.hpp"

namespace cursed {

// ---------------------------------------------------------------------------
// Example games

template <class S>
Game<S> signaling_game(bool scrambled = false) {
  GameSpec<S> spec;
  spec.name = scrambled ? "signaling_scrambled" : "signaling";
  spec.types = {{"t1", "t2"}, {}};
  spec.prior = {S(1) / S(4), S(3) / S(4)};
  spec.horizon = 2;
  spec.actions = [](int player, const PublicHistory& h) -> std::vector<std::string> {
    if (h.empty() && player == 0) return {"A", "B"};
    if (h.size() == 1 && player == 1) return {"L", "R"};
    return {};
  };
  spec.payoff = [](const std::vector<int>& types, const PublicHistory& h) -> std::optional<std::vector<S>> {
    bool a = h[0][0] == "A", l = h[1][1] == "L";
    if (types[0] == 0) {
      if (a) return l ? std::vector<S>{2, 2} : std::vector<S>{-1, 4};
      return l ? std::vector<S>{4, -1} : std::vector<S>{1, 0};
    }
    if (a) return l ? std::vector<S>{2, 1} : std::vector<S>{-1, 0};
    return l ? std::vector<S>{4, -2} : std::vector<S>{1, 0};
  };
  auto game = build_game(spec);
  return scrambled ? scramble(game) : game;
}

template <class S>
Game<S> perfect_info_game(const S& x, const S& y) {
  if (!(y < S(1))) throw Error(ErrorKind::InvalidY, "y must be below 1, got " + scalar_to_string(y));
  GameSpec<S> spec;
  spec.name = "perfect_info";
  spec.types = {{}, {}};
  spec.horizon = 2;
  spec.actions = [](int player, const PublicHistory& h) -> std::vector<std::string> {
    if (h.empty() && player == 0) return {"B", "R"};
    if (h.size() == 1 && player == 1) return {"b", "r"};
    return {};
  };
  spec.payoff = [x, y](const std::vector<int>&, const PublicHistory& h) -> std::optional<std::vector<S>> {
    bool first = h[0][0] == "B", second = h[1][1] == "b";
    if (first) return second ? std::vector<S>{2, 2} : std::vector<S>{0, 0};
    return second ? std::vector<S>{x, y} : std::vector<S>{1, 1};
  };
  return build_game(spec);
}

template <class S>
Game<S> matching_game(const S& eps) {
  if (!(eps > S(0)) || !(eps < S(1) / S(2))) throw Error(ErrorKind::InvalidEpsilon, "epsilon must lie in (0, 1/2), got " + scalar_to_string(eps));
  GameSpec<S> spec;
  spec.name = "matching";
  spec.types = {{"b", "r"}, {"b", "r"}, {}};
  S same = S(1) / S(2) - eps;
  spec.prior = {same, eps, eps, same};
  spec.horizon = 1;
  spec.actions = [](int, const PublicHistory&) -> std::vector<std::string> { return {"b", "r", "m"}; };
  spec.payoff = [](const std::vector<int>& types, const PublicHistory& h) -> std::optional<std::vector<S>> {
    const auto& a = h[0];
    const char* label[] = {"b", "r"};
    S u1 = a[0] == label[types[0]] ? S(1) : S(0);
    S u2 = a[1] == label[types[1]] ? S(1) : S(0);
    bool hit = a[0] == a[1] ? a[2] == a[0] : a[2] == "m";
    return std::vector<S>{u1, u2, hit ? S(1) : S(0)};
  };
  return build_game(spec);
}

namespace detail {

template <class S>
GameSpec<S> broadcaster_spec(int n, const S& alpha, bool chain) {
  if (!(alpha > S(0)) || !(alpha < S(1))) throw Error(ErrorKind::InvalidAlpha, "alpha must lie in (0, 1), got " + scalar_to_string(alpha));
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "need at least one player besides the broadcaster");
  GameSpec<S> spec;
  spec.name = chain ? "announcement_chain" : "broadcaster";
  spec.types.assign(n + 1, {});
  spec.types[0] = {"g", "b"};
  spec.prior = {S(1) / S(2), S(1) / S(2)};
  spec.horizon = 2 * n;
  spec.actions = [chain](int player, const PublicHistory& h) -> std::vector<std::string> {
    int t = static_cast<int>(h.size());
    if (t % 2 == 0) {
      if (player != 0) return {};
      if (chain) {
        for (const auto& step : h) {
          if (base_label(step[0]) == "b") return {};
        }
      }
      return {"g", "b"};
    }
    if (player == (t + 1) / 2) return {"s", "r"};
    return {};
  };
  spec.payoff = [n, alpha](const std::vector<int>& types, const PublicHistory& h) -> std::optional<std::vector<S>> {
    std::vector<S> u(n + 1, S(0));
    const char* truth = types[0] == 0 ? "g" : "b";
    for (int t = 0; t < static_cast<int>(h.size()); ++t) {
      if (t % 2 == 0) {
        if (base_label(h[t][0]) == truth) u[0] += S(1);
      } else {
        int i = (t + 1) / 2;
        if (base_label(h[t][i]) == "r") u[i] = types[0] == 0 ? alpha : S(-1);
      }
    }
    return u;
  };
  return spec;
}

}  // namespace detail

// Broadcaster B (player 1, types g/b) announces at odd stages; player i+1
// picks safe or risky at stage 2i. Every action is labeled per history.
template <class S>
Game<S> broadcaster_game(int n, const S& alpha) {
  return scramble(build_game(detail::broadcaster_spec(n, alpha, false)));
}

// Same game except that B has no further announcements once it has said b.
// Histories where all announcements are g are unchanged, so the cutoff is
// the same, with (n+1) 2^n terminals instead of 4^n.
template <class S>
Game<S> announcement_chain_game(int n, const S& alpha) {
  return scramble(build_game(detail::broadcaster_spec(n, alpha, true)));
}

// ---------------------------------------------------------------------------
// Broadcaster cutoffs

inline constexpr int kAllSafe = 0;

inline std::string cutoff_string(int cutoff) { return cutoff == kAllSafe ? "s_bar" : std::to_string(cutoff); }

template <class S>
S risk_threshold(const S& alpha) {
  return S(2) * alpha / (S(1) + alpha);
}

template <class S>
int cutoff_sce(const S& alpha, const S& chi_s, const S& psi_s, int n) {
  (void)n;
  return chi_s * (S(1) - psi_s) <= risk_threshold(alpha) + scalar_traits<S>::normalization_tolerance() ? 1 : kAllSafe;
}

// Smallest i with chi^i <= 2 alpha / (1 + alpha).
template <class S>
int cutoff_cse(const S& alpha, const S& chi, int n) {
  S q = risk_threshold(alpha), power(1);
  for (int i = 1; i <= n; ++i) {
    power *= chi;
    if (power <= q + scalar_traits<S>::normalization_tolerance()) return i;
  }
  return kAllSafe;
}

struct EngineCutoff {
  int cutoff = kAllSafe;
  bool verified = false;   // the best-response profile passed the equilibrium check
  bool monotone = true;    // once some player takes r on the all-g path, every later one does
};

namespace detail {

template <class S>
int label_index(const Game<S>& game, int player, NodeId h, const std::string& base) {
  const auto& labels = game.actions(player, h);
  for (size_t a = 0; a < labels.size(); ++a) {
    if (base_label(labels[a]) == base) return static_cast<int>(a);
  }
  return -1;
}

// Truthful broadcaster, everyone else safe.
template <class S>
std::vector<std::vector<std::vector<int>>> broadcaster_choices(const Game<S>& game) {
  std::vector<std::vector<std::vector<int>>> choice(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    choice[i].assign(game.num_types(i), std::vector<int>(game.num_nodes(), 0));
    for (int ti = 0; ti < game.num_types(i); ++ti) {
      for (NodeId h : game.nonterminals()) {
        if (game.num_actions(i, h) < 2) continue;
        choice[i][ti][h] = label_index(game, i, h, i == 0 ? game.type_label(0, ti) : "s");
      }
    }
  }
  return choice;
}

// Replaces every non-broadcaster choice by the better of s and r under
// q(player, h); r wins ties.
template <class S>
void fill_best_responses(const Game<S>& game, std::vector<std::vector<std::vector<int>>>& choice,
                         const std::function<std::vector<S>(int, NodeId)>& q) {
  for (int i = 1; i < game.num_players(); ++i) {
    for (NodeId h : game.nonterminals()) {
      if (game.num_actions(i, h) < 2) continue;
      auto values = q(i, h);
      int s = label_index(game, i, h, "s"), r = label_index(game, i, h, "r");
      choice[i][0][h] = values[r] >= values[s] - scalar_traits<S>::normalization_tolerance() ? r : s;
    }
  }
}

// Walks the path on which B announces g and everyone follows `choice`.
template <class S>
EngineCutoff read_cutoff(const Game<S>& game, const std::vector<std::vector<std::vector<int>>>& choice) {
  EngineCutoff out;
  NodeId h = Game<S>::root();
  while (!game.is_terminal(h)) {
    std::vector<int> joint(game.num_players(), 0);
    for (int i = 0; i < game.num_players(); ++i) {
      if (game.num_actions(i, h) < 2) continue;
      joint[i] = choice[i][0][h];
      if (i > 0 && base_label(game.actions(i, h)[joint[i]]) == "r") {
        if (out.cutoff == kAllSafe) out.cutoff = i;
      } else if (i > 0 && out.cutoff != kAllSafe) {
        out.monotone = false;
      }
    }
    h = game.child(h, joint);
  }
  return out;
}

}  // namespace detail

// Cutoff of the CSE in which B is truthful and every other player best
// responds at every history, verified with check_cse.
template <class S>
EngineCutoff engine_cutoff_cse(const Game<S>& game, const S& chi) {
  auto choice = detail::broadcaster_choices(game);
  auto family = uniform_family(game);
  auto base = pure_profile(game, choice);
  auto mu = consistency_extend(game, base, chi, family);
  std::vector<CseValues<S>> values(game.num_players());
  for (int i = 1; i < game.num_players(); ++i) values[i] = cse_values(game, base, mu, chi, i, 0);
  detail::fill_best_responses<S>(game, choice, [&](int i, NodeId h) { return values[i].Q[h]; });
  auto out = detail::read_cutoff(game, choice);
  CseOptions<S> options;
  options.families = {family};
  out.verified = check_cse(game, pure_profile(game, choice), chi, options).verdict;
  return out;
}

template <class S>
EngineCutoff engine_cutoff_sce(const Game<S>& game, const S& chi_s, const S& psi_s) {
  ChiPsi<S> w{chi_s, psi_s};
  w.validate();
  auto choice = detail::broadcaster_choices(game);
  auto family = uniform_family(game);
  auto partition = coarsest_valid_partition(game);
  SceModel<S> model(game, pure_profile(game, choice), partition, family);
  detail::fill_best_responses<S>(game, choice, [&](int i, NodeId h) { return model.action_values(model.conjectures(i, 0, h), w); });
  auto out = detail::read_cutoff(game, choice);
  SceOptions<S> options;
  options.families = {family};
  out.verified = SceChecker<S>(game, pure_profile(game, choice), options).passes(w);
  return out;
}

// Bisection on chi for the point where the engine CSE cutoff stops being
// equal to its value at lo. Float arithmetic.
inline double cse_switch_point(const Game<double>& game, double lo, double hi, double tol = 1e-12) {
  int at_lo = engine_cutoff_cse(game, lo).cutoff;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (engine_cutoff_cse(game, mid).cutoff == at_lo) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Grids, region maps and claim reports

// points evenly spaced values on [0,1] plus extra values, sorted, no duplicates.
template <class S>
std::vector<S> unit_grid(int points, const std::vector<S>& extra = {}) {
  std::vector<S> out;
  if (points == 1) out.push_back(S(0));
  for (int k = 0; points > 1 && k < points; ++k) out.push_back(S(k) / S(points - 1));
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct RegionRow {
  std::string chi_s;
  std::string psi_s;
  std::string profile;
  bool is_equilibrium = false;
};

// SCE verdict of every profile at every (chi_s, psi_s) pair, chi_s-major.
template <class S>
std::vector<RegionRow> region_map_sce(const Game<S>& game, const std::vector<Profile<S>>& profiles, const std::vector<S>& chi_axis,
                                      const std::vector<S>& psi_axis, bool force_phc = false, int threads = 0) {
  SceOptions<S> options;
  options.force_phc = force_phc;
  std::vector<SceChecker<S>> checkers;
  std::vector<std::string> names;
  for (const auto& p : profiles) {
    checkers.emplace_back(game, p, options);
    names.push_back(to_compact(game, p));
  }
  long long cells = static_cast<long long>(chi_axis.size() * psi_axis.size());
  std::vector<RegionRow> rows(cells * profiles.size());
  parallel_for(cells, resolve_threads(threads), [&](long long k) {
    const S& c = chi_axis[k / psi_axis.size()];
    const S& p = psi_axis[k % psi_axis.size()];
    for (size_t j = 0; j < profiles.size(); ++j) {
      rows[k * profiles.size() + j] = {scalar_to_string(c), scalar_to_string(p), names[j], checkers[j].passes(ChiPsi<S>{c, p})};
    }
  });
  return rows;
}

// CSE verdicts over a chi axis; psi_s is left empty.
template <class S>
std::vector<RegionRow> region_map_cse(const Game<S>& game, const std::vector<Profile<S>>& profiles, const std::vector<S>& chi_axis, int threads = 0) {
  std::vector<RegionRow> rows(chi_axis.size() * profiles.size());
  CseOptions<S> options;
  options.stop_at_first = true;
  parallel_for(static_cast<long long>(rows.size()), resolve_threads(threads), [&](long long k) {
    const S& c = chi_axis[k / profiles.size()];
    const auto& p = profiles[k % profiles.size()];
    rows[k] = {scalar_to_string(c), "", to_compact(game, p), check_cse(game, p, c, options).verdict};
  });
  return rows;
}

inline std::string region_csv(const std::vector<RegionRow>& rows) {
  std::string out = "chi_s,psi_s,profile_id,is_equilibrium\n";
  for (const auto& r : rows) out += r.chi_s + "," + r.psi_s + ",\"" + r.profile + "\"," + (r.is_equilibrium ? "true" : "false") + "\n";
  return out;
}

template <class S>
std::vector<Profile<S>> all_pure_profiles(const Game<S>& game) {
  PureProfileEnumerator<S> e(game);
  std::vector<Profile<S>> out;
  for (long long k = 0; k < e.total(); ++k) out.push_back(e.at(k));
  return out;
}

struct ClaimPoint {
  std::string parameters;
  std::string engine;
  std::string predicted;
  bool match = false;
};

struct ClaimReport {
  std::string claim;
  std::string arithmetic;
  std::vector<std::string> grid;        // axis descriptions
  std::vector<ClaimPoint> points;
  std::vector<std::string> mismatches;  // parameters of points where engine != predicted
  double runtime_seconds = 0;

  bool passed() const { return mismatches.empty(); }
};

struct ClaimGrid {
  int points = 101;  // per axis
  int threads = 0;
};

inline const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids{"C3", "C4", "C5", "C6", "C7", "C8", "C11", "ci_cse"};
  return ids;
}

namespace detail {

template <class S>
std::string axis_string(const std::string& name, const std::vector<S>& axis) {
  std::string out = name + " in {";
  for (size_t k = 0; k < axis.size(); ++k) out += (k ? "," : "") + scalar_to_string(axis[k]);
  return out + "}";
}

inline std::string set_string(const std::vector<std::string>& items) {
  std::string out = "{";
  for (size_t k = 0; k < items.size(); ++k) out += (k ? " " : "") + items[k];
  return out + "}";
}

inline void add_point(ClaimReport& report, std::string parameters, std::string engine, std::string predicted) {
  bool match = engine == predicted;
  if (!match) report.mismatches.push_back(parameters);
  report.points.push_back({std::move(parameters), std::move(engine), std::move(predicted), match});
}

inline std::string verdict_string(bool v) { return v ? "pass" : "fail"; }

template <class S>
S sqrt_if_float(const S& x) {
  if constexpr (scalar_traits<S>::exact) return x;
  else return std::sqrt(x);
}

template <class S>
void claim_c3(ClaimReport& report, const ClaimGrid& grid) {
  S alpha = S(1) / S(2);
  auto game = broadcaster_game<S>(2, alpha);
  auto axis = unit_grid<S>(grid.points, {risk_threshold(alpha)});
  report.grid = {axis_string("chi_s(1-psi_s)", axis), "(chi_s,psi_s) in {(w,0),(1,1-w)}", "alpha=1/2", "n=2"};
  std::vector<std::pair<S, S>> pairs;
  for (const auto& w : axis) {
    pairs.push_back({w, S(0)});
    pairs.push_back({S(1), S(1) - w});
  }
  std::vector<EngineCutoff> cut(pairs.size());
  parallel_for(static_cast<long long>(pairs.size()), resolve_threads(grid.threads),
               [&](long long k) { cut[k] = engine_cutoff_sce(game, pairs[k].first, pairs[k].second); });
  for (size_t k = 0; k < pairs.size(); ++k) {
    const auto& [c, p] = pairs[k];
    std::string engine = "cutoff=" + cutoff_string(cut[k].cutoff) + (cut[k].verified ? "" : " unverified");
    add_point(report, "chi_s=" + scalar_to_string(c) + " psi_s=" + scalar_to_string(p), engine, "cutoff=" + cutoff_string(cutoff_sce(alpha, c, p, 2)));
  }
}

template <class S>
void claim_c4(ClaimReport& report, const ClaimGrid& grid) {
  S alpha = S(1) / S(2);
  S q = risk_threshold(alpha);
  std::vector<S> extra{q};
  if constexpr (!scalar_traits<S>::exact) extra.push_back(sqrt_if_float(q));
  auto axis = unit_grid<S>(grid.points, extra);
  std::vector<S> long_axis{S(1) / S(2), S(7) / S(10), S(9) / S(10), S(19) / S(20)};
  int long_n = scalar_traits<S>::exact ? 6 : 10;
  report.grid = {axis_string("chi (n=2, broadcaster)", axis), axis_string("chi (n=" + std::to_string(long_n) + ", announcement chain)", long_axis), "alpha=1/2"};
  struct Job {
    const Game<S>* game;
    int n = 0;
    S chi;
  };
  auto small = broadcaster_game<S>(2, alpha);
  auto chain = announcement_chain_game<S>(long_n, alpha);
  std::vector<Job> jobs;
  for (const auto& c : axis) jobs.push_back({&small, 2, c});
  for (const auto& c : long_axis) jobs.push_back({&chain, long_n, c});
  std::vector<EngineCutoff> cut(jobs.size());
  parallel_for(static_cast<long long>(jobs.size()), resolve_threads(grid.threads),
               [&](long long k) { cut[k] = engine_cutoff_cse(*jobs[k].game, jobs[k].chi); });
  for (size_t k = 0; k < jobs.size(); ++k) {
    std::string engine = "cutoff=" + cutoff_string(cut[k].cutoff) + (cut[k].verified ? "" : " unverified") + (cut[k].monotone ? "" : " non-monotone");
    add_point(report, "n=" + std::to_string(jobs[k].n) + " chi=" + scalar_to_string(jobs[k].chi), engine,
              "cutoff=" + cutoff_string(cutoff_cse(alpha, jobs[k].chi, jobs[k].n)));
  }
}

template <class S>
void claim_c5(ClaimReport& report, const ClaimGrid& grid) {
  auto game = signaling_game<S>(false);
  S bound = S(8) / S(9);
  auto axis = unit_grid<S>(grid.points, {bound});
  report.grid = {axis_string("chi", axis)};
  std::vector<Profile<S>> profiles{parse_compact_profile(game, "[(A,A);(L,R)]"), parse_compact_profile(game, "[(B,B);(R,R)]")};
  auto rows = region_map_cse(game, profiles, axis, grid.threads);
  for (size_t k = 0; k < rows.size(); ++k) {
    const S& c = axis[k / 2];
    bool predicted = k % 2 == 0 ? true : c <= bound;
    add_point(report, "chi=" + rows[k].chi_s + " profile=" + rows[k].profile, verdict_string(rows[k].is_equilibrium), verdict_string(predicted));
  }
}

template <class S>
std::string passing_set(const std::vector<RegionRow>& rows, size_t begin, size_t end) {
  std::vector<std::string> names;
  for (size_t k = begin; k < end; ++k) {
    if (rows[k].is_equilibrium) names.push_back(rows[k].profile);
  }
  return set_string(names);
}

template <class S>
bool signaling_sce_prediction(const std::string& profile, const S& chi_s, const S& psi_s) {
  S third = S(1) / S(3);
  if (profile == "[(A,A);(L,R)]") return chi_s <= third;
  if (profile == "[(B,B);(L,R)]") return chi_s >= third;
  if (profile == "[(B,A);(L,R)]") return chi_s == third;
  if (profile == "[(B,B);(R,R)]") return chi_s * (S(1) - psi_s) <= S(8) / S(9);
  return false;
}

template <class S>
void claim_c6(ClaimReport& report, const ClaimGrid& grid) {
  auto game = signaling_game<S>(false);
  auto chi_axis = unit_grid<S>(grid.points, {S(1) / S(3), S(8) / S(9)});
  auto psi_axis = unit_grid<S>(grid.points, {S(1) / S(9)});
  report.grid = {axis_string("chi_s", chi_axis), axis_string("psi_s", psi_axis), "profiles: all pure"};
  auto profiles = all_pure_profiles(game);
  auto rows = region_map_sce(game, profiles, chi_axis, psi_axis, false, grid.threads);
  size_t m = profiles.size();
  for (size_t cell = 0; cell < rows.size() / m; ++cell) {
    const S& c = chi_axis[cell / psi_axis.size()];
    const S& p = psi_axis[cell % psi_axis.size()];
    std::vector<std::string> predicted;
    for (size_t j = 0; j < m; ++j) {
      if (signaling_sce_prediction(rows[cell * m + j].profile, c, p)) predicted.push_back(rows[cell * m + j].profile);
    }
    add_point(report, "chi_s=" + rows[cell * m].chi_s + " psi_s=" + rows[cell * m].psi_s, passing_set<S>(rows, cell * m, (cell + 1) * m),
              set_string(predicted));
  }
}

template <class S>
void claim_c7(ClaimReport& report, const ClaimGrid& grid) {
  S half = S(1) / S(2);
  std::vector<S> xs{S(-1000000), S(0), S(10)}, ys{S(-1000000), half};
  auto chi_axis = unit_grid<S>(grid.points, {half});
  std::vector<S> psi_axis{S(0), half, S(1)};
  report.grid = {axis_string("x", xs), axis_string("y", ys), axis_string("chi_s", chi_axis), axis_string("psi_s", psi_axis)};
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      auto game = perfect_info_game<S>(x, y);
      std::vector<Profile<S>> profiles{parse_compact_profile(game, "[R;(b,r)]")};
      auto rows = region_map_sce(game, profiles, chi_axis, psi_axis, false, grid.threads);
      for (size_t k = 0; k < rows.size(); ++k) {
        const S& c = chi_axis[k / psi_axis.size()];
        add_point(report, "x=" + scalar_to_string(x) + " y=" + scalar_to_string(y) + " chi_s=" + rows[k].chi_s + " psi_s=" + rows[k].psi_s,
                  verdict_string(rows[k].is_equilibrium), verdict_string(c >= half));
      }
    }
  }
}

template <class S>
void claim_c8(ClaimReport& report, const ClaimGrid& grid) {
  auto scrambled = signaling_game<S>(true);
  auto plain = signaling_game<S>(false);
  std::vector<S> chi_axis{S(0), S(1) / S(4), S(1) / S(2), S(8) / S(9), S(1)};
  std::vector<S> psi_axis{S(0), S(1) / S(4), S(1) / S(2), S(3) / S(4), S(1)};
  report.grid = {axis_string("chi_s", chi_axis), axis_string("psi_s", psi_axis), "profiles: all pure", "chi = chi_s(1-psi_s)"};
  auto sce_profiles = all_pure_profiles(scrambled);
  auto cse_profiles = all_pure_profiles(plain);
  auto sce_rows = region_map_sce(scrambled, sce_profiles, chi_axis, psi_axis, false, grid.threads);
  std::vector<S> products;
  for (const auto& c : chi_axis) {
    for (const auto& p : psi_axis) products.push_back(c * (S(1) - p));
  }
  auto cse_rows = region_map_cse(plain, cse_profiles, products, grid.threads);
  size_t m = sce_profiles.size();
  for (size_t cell = 0; cell < products.size(); ++cell) {
    add_point(report,
              "chi_s=" + sce_rows[cell * m].chi_s + " psi_s=" + sce_rows[cell * m].psi_s + " chi=" + scalar_to_string(products[cell]),
              passing_set<S>(sce_rows, cell * m, (cell + 1) * m), passing_set<S>(cse_rows, cell * m, (cell + 1) * m));
  }
}

template <class S>
std::string third_player_actions(const Game<S>& game, const std::vector<PureEquilibrium<S>>& eqs) {
  std::set<int> seen;
  for (const auto& e : eqs) seen.insert(pure_action(e.profile, 2, 0, Game<S>::root()));
  std::vector<std::string> labels;
  for (int a : seen) labels.push_back(game.actions(2, Game<S>::root())[a]);
  return set_string(labels);
}

template <class S>
void claim_c11(ClaimReport& report, const ClaimGrid& grid) {
  std::vector<S> eps{S(1) / S(20), S(1) / S(10), S(1) / S(6), S(1) / S(5), S(3) / S(10), S(2) / S(5)};
  report.grid = {axis_string("epsilon", eps), "concepts: CE(chi=1), ICE"};
  OneStageConcept<S> ce{OneStageConcept<S>::kCE, S(1)}, ice{OneStageConcept<S>::kICE, S(1)};
  S boundary = S(1) / S(6);
  for (const auto& e : eps) {
    auto game = matching_game<S>(e);
    auto ce_eqs = enumerate_pure(game, ce, grid.threads);
    auto ice_eqs = enumerate_pure(game, ice, grid.threads);
    std::set<std::string> ce_names, overlap;
    for (const auto& q : ce_eqs) ce_names.insert(q.compact);
    for (const auto& q : ice_eqs) {
      if (ce_names.count(q.compact)) overlap.insert(q.compact);
    }
    bool ce_tie = false;
    for (const auto& q : ce_eqs) {
      const auto& obj = q.objectives[2][0];
      S best = *std::max_element(obj.begin(), obj.end());
      ce_tie = ce_tie || (approx_equal(obj[2], best, scalar_traits<S>::tolerance()) && approx_equal(obj[0], obj[2], scalar_traits<S>::tolerance()));
    }
    std::string engine = "ce_a3=" + third_player_actions(game, ce_eqs) + " ice_a3=" + third_player_actions(game, ice_eqs) +
                         " overlap=" + std::to_string(overlap.size()) + " m_tied=" + (ce_tie ? "yes" : "no");
    std::string predicted;
    bool tie = approx_equal(e, boundary, scalar_traits<S>::normalization_tolerance());
    if (tie) predicted = "ce_a3={b r m} ice_a3={m} overlap=1 m_tied=yes";
    else if (e < boundary) predicted = "ce_a3={b r} ice_a3={m} overlap=0 m_tied=no";
    else predicted = "ce_a3={m} ice_a3={m} overlap=1 m_tied=no";
    add_point(report, "epsilon=" + scalar_to_string(e), engine, predicted);
  }
}

template <class S>
void claim_ci_cse(ClaimReport& report, const ClaimGrid& grid) {
  std::vector<S> xs{S(-1000000), S(0), S(10)}, ys{S(-1000000), S(1) / S(2)};
  std::vector<S> chis{S(0), S(1) / S(4), S(1) / S(2), S(3) / S(4), S(1)};
  report.grid = {axis_string("x", xs), axis_string("y", ys), axis_string("chi", chis), "profiles: all pure"};
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      auto game = perfect_info_game<S>(x, y);
      auto profiles = all_pure_profiles(game);
      auto rows = region_map_cse(game, profiles, chis, grid.threads);
      size_t m = profiles.size();
      // Sequential equilibrium: chi = 0 with full deviations.
      CseOptions<S> seq;
      seq.full_deviation = true;
      std::vector<std::string> se;
      for (const auto& p : profiles) {
        if (check_cse(game, p, S(0), seq).verdict) se.push_back(to_compact(game, p));
      }
      std::string predicted = set_string(se);
      if (predicted != "{[B;(b,r)]}") report.mismatches.push_back("x=" + scalar_to_string(x) + " y=" + scalar_to_string(y) + " sequential equilibria " + predicted);
      for (size_t c = 0; c < chis.size(); ++c) {
        add_point(report, "x=" + scalar_to_string(x) + " y=" + scalar_to_string(y) + " chi=" + scalar_to_string(chis[c]),
                  passing_set<S>(rows, c * m, (c + 1) * m), predicted);
      }
    }
  }
}

}  // namespace detail

template <class S>
ClaimReport verify_claim(const std::string& id, const ClaimGrid& grid = {}) {
  auto start = std::chrono::steady_clock::now();
  ClaimReport report;
  report.claim = id;
  report.arithmetic = scalar_traits<S>::name;
  if (id == "C3") detail::claim_c3<S>(report, grid);
  else if (id == "C4") detail::claim_c4<S>(report, grid);
  else if (id == "C5") detail::claim_c5<S>(report, grid);
  else if (id == "C6") detail::claim_c6<S>(report, grid);
  else if (id == "C7") detail::claim_c7<S>(report, grid);
  else if (id == "C8") detail::claim_c8<S>(report, grid);
  else if (id == "C11") detail::claim_c11<S>(report, grid);
  else if (id == "ci_cse") detail::claim_ci_cse<S>(report, grid);
  else throw Error(ErrorKind::UnknownClaim, "unknown claim '" + id + "'");
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cursed
