#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cursed/cursed.hpp"

namespace {

using namespace cursed;

struct Config {
  std::string subcommand;
  std::string input;
  std::string concept_name = "cse";
  std::vector<std::string> profiles;
  std::string chi = "1";
  std::string chi_s = "0";
  std::string psi_s = "0";
  bool force_phc = false;
  bool exact = false;
  bool full_deviation = false;
  int threads = 0;
  int grid = 101;
  std::string output;
  // scenario parameters
  int n = 2;
  std::string alpha = "1/2";
  std::string x = "0";
  std::string y = "1/2";
  std::string eps = "1/10";
  bool scrambled = false;
};

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class S>
Game<S> scenario_game(const std::string& name, const Config& c) {
  if (name == "signaling") return signaling_game<S>(c.scrambled);
  if (name == "perfect_info") return perfect_info_game<S>(parse_scalar<S>(c.x), parse_scalar<S>(c.y));
  if (name == "matching") return matching_game<S>(parse_scalar<S>(c.eps));
  if (name == "broadcaster") return broadcaster_game<S>(c.n, parse_scalar<S>(c.alpha));
  if (name == "announcement_chain") return announcement_chain_game<S>(c.n, parse_scalar<S>(c.alpha));
  throw Error(ErrorKind::InvalidParameter, "unknown scenario '" + name + "'");
}

template <class S>
Game<S> load_game(const Config& c) {
  if (std::filesystem::exists(c.input)) return parse_game<S>(read_file(c.input));
  return scenario_game<S>(c.input, c);
}

template <class S>
S parameter(const std::string& text, const char* name) {
  S v = parse_scalar<S>(text);
  if (v < S(0) || v > S(1)) throw Error(ErrorKind::InvalidParameter, std::string(name) + " must lie in [0,1], got " + text);
  return v;
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidParameter, "cannot write '" + c.output + "'");
  out << text;
}

template <class S>
EquilibriumReport<S> check_one(const Game<S>& game, const Profile<S>& sigma, const Config& c) {
  EquilibriumReport<S> report;
  if (c.concept_name == "cse") {
    CseOptions<S> options;
    options.full_deviation = c.full_deviation;
    report = check_cse(game, sigma, parameter<S>(c.chi, "chi"), options);
  } else if (c.concept_name == "sce") {
    SceOptions<S> options;
    options.force_phc = c.force_phc;
    report = check_sce(game, sigma, parameter<S>(c.chi_s, "chi_s"), parameter<S>(c.psi_s, "psi_s"), options);
  } else if (c.concept_name == "ce") {
    report = check_ce(game, sigma, parameter<S>(c.chi, "chi"));
  } else if (c.concept_name == "ice") {
    report = check_ice(game, sigma);
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown concept '" + c.concept_name + "'");
  }
  report.profile = to_compact(game, sigma);
  return report;
}

template <class S>
int run(const Config& c) {
  const auto& sub = c.subcommand;
  if (sub == "parse") {
    emit(c, serialize(load_game<S>(c)));
    return kOk;
  }
  if (sub == "scramble") {
    emit(c, serialize(scramble(load_game<S>(c))));
    return kOk;
  }
  if (sub == "scenario") {
    emit(c, serialize(scenario_game<S>(c.input, c)));
    return kOk;
  }
  if (sub == "check") {
    auto game = load_game<S>(c);
    if (c.profiles.size() != 1) throw Error(ErrorKind::InvalidProfile, "check needs exactly one --profile");
    auto report = check_one(game, parse_profile(game, c.profiles.front()), c);
    emit(c, to_json(game, report).dump(2) + "\n");
    return kOk;
  }
  if (sub == "enumerate") {
    auto game = load_game<S>(c);
    if (c.concept_name == "ce" || c.concept_name == "ice") {
      OneStageConcept<S> spec{c.concept_name == "ce" ? OneStageConcept<S>::kCE : OneStageConcept<S>::kICE,
                              c.concept_name == "ce" ? parameter<S>(c.chi, "chi") : S(1)};
      emit(c, to_json(game, enumerate_pure(game, spec, c.threads), spec).dump(2) + "\n");
      return kOk;
    }
    auto profiles = all_pure_profiles(game);
    std::vector<unsigned char> pass(profiles.size(), 0);
    parallel_for(static_cast<long long>(profiles.size()), resolve_threads(c.threads),
                 [&](long long k) { pass[k] = check_one(game, profiles[k], c).verdict ? 1 : 0; });
    Json out;
    out["concept"] = c.concept_name;
    if (c.concept_name == "cse") out["chi"] = scalar_json(parameter<S>(c.chi, "chi"));
    if (c.concept_name == "sce") {
      out["chi_s"] = scalar_json(parameter<S>(c.chi_s, "chi_s"));
      out["psi_s"] = scalar_json(parameter<S>(c.psi_s, "psi_s"));
    }
    Json list = Json::array();
    for (size_t k = 0; k < profiles.size(); ++k) {
      if (pass[k]) list.push_back(to_compact(game, profiles[k]));
    }
    out["equilibria"] = list;
    emit(c, out.dump(2) + "\n");
    return kOk;
  }
  if (sub == "verify") {
    auto report = verify_claim<S>(c.input, ClaimGrid{c.grid, c.threads});
    std::cerr << "runtime_seconds " << report.runtime_seconds << "\n";
    emit(c, to_json(report).dump(2) + "\n");
    return report.passed() ? kOk : kMismatch;
  }
  if (sub == "regions") {
    auto game = load_game<S>(c);
    std::vector<Profile<S>> profiles;
    for (const auto& p : c.profiles) profiles.push_back(parse_profile(game, p));
    if (profiles.empty()) profiles = all_pure_profiles(game);
    auto axis = unit_grid<S>(c.grid);
    if (c.concept_name == "sce") {
      emit(c, region_csv(region_map_sce(game, profiles, axis, axis, c.force_phc, c.threads)));
    } else if (c.concept_name == "cse") {
      emit(c, region_csv(region_map_cse(game, profiles, axis, c.threads)));
    } else {
      throw Error(ErrorKind::InvalidParameter, "regions supports --concept sce or cse");
    }
    return kOk;
  }
  throw Error(ErrorKind::InvalidParameter, "no subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Solver and verifier for cursed sequential equilibria in multi-stage games"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* s) {
    s->add_flag("--exact", c.exact, "Exact rational arithmetic");
    s->add_option("--threads", c.threads, "Worker threads (default: CURSED_GAMES_THREADS or 1)");
    s->add_option("-o,--output", c.output, "Write to a file instead of standard output");
  };
  auto add_scenario_params = [&](CLI::App* s) {
    s->add_option("--n", c.n, "Players besides the broadcaster");
    s->add_option("--alpha", c.alpha, "Broadcaster game payoff of r in the good state");
    s->add_option("--x", c.x, "Perfect-information payoff x");
    s->add_option("--y", c.y, "Perfect-information payoff y");
    s->add_option("--eps", c.eps, "Matching game epsilon");
    s->add_flag("--scrambled", c.scrambled, "Scrambled signaling game");
  };
  // A plain string option keeps CLI11 from reading "[...]" as a list.
  std::string profile_slot;
  auto add_profile = [&](CLI::App* s, const char* help) {
    return s->add_option("--profile", profile_slot, help)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->each([&](const std::string& v) { c.profiles.push_back(v); });
  };
  auto add_concept = [&](CLI::App* s) {
    s->add_option("--concept", c.concept_name, "cse, sce, ce or ice")->check(CLI::IsMember({"cse", "sce", "ce", "ice"}));
    s->add_option("--chi", c.chi, "chi for cse and ce");
    s->add_option("--chi-s", c.chi_s, "chi_S for sce");
    s->add_option("--psi-s", c.psi_s, "psi_S for sce");
    s->add_flag("--force-phc", c.force_phc, "Use the public-history partition");
  };

  auto* parse = app.add_subcommand("parse", "Validate a game file and print its canonical form");
  parse->add_option("file", c.input, "Game file")->required();
  add_common(parse);

  auto* check = app.add_subcommand("check", "Check one profile");
  check->add_option("file", c.input, "Game file or scenario name")->required();
  add_profile(check, "Compact profile or JSON entries")->required();
  check->add_flag("--full-deviation", c.full_deviation, "cse: optimize own continuation");
  add_concept(check);
  add_common(check);
  add_scenario_params(check);

  auto* enumerate = app.add_subcommand("enumerate", "List the pure equilibria");
  enumerate->add_option("file", c.input, "Game file or scenario name")->required();
  add_concept(enumerate);
  add_common(enumerate);
  add_scenario_params(enumerate);

  auto* scramble_cmd = app.add_subcommand("scramble", "Relabel actions per history");
  scramble_cmd->add_option("file", c.input, "Game file")->required();
  add_common(scramble_cmd);

  auto* scenario = app.add_subcommand("scenario", "Print a built-in game");
  scenario->add_option("name", c.input, "signaling, perfect_info, matching, broadcaster or announcement_chain")->required();
  add_scenario_params(scenario);
  add_common(scenario);

  auto* verify = app.add_subcommand("verify", "Run a claim harness");
  verify->add_option("claim", c.input, "C3, C4, C5, C6, C7, C8, C11 or ci_cse")->required();
  verify->add_option("--grid", c.grid, "Points per axis");
  add_common(verify);

  auto* regions = app.add_subcommand("regions", "Equilibrium regions over a parameter grid as CSV");
  regions->add_option("file", c.input, "Game file or scenario name")->required();
  add_profile(regions, "Profiles, repeatable (default: every pure profile)");
  regions->add_option("--grid", c.grid, "Points per axis");
  add_concept(regions);
  add_common(regions);
  add_scenario_params(regions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  try {
    return c.exact ? run<Rational>(c) : run<double>(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
