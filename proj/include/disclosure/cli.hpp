#ifndef DISCLOSURE_CLI_HPP_
#define DISCLOSURE_CLI_HPP_

// Command-line front end. Every command writes one JSON document (or, for
// sweeps, a CSV table) that embeds a run manifest. Output depends only on the
// flags: no clock, no environment, no worker-count effects (the timestamp is
// opt-in through --timestamp).
//
// Exit codes: 0 success, 1 internal invariant violation or failed
// verification, 2 argument or domain error, 3 scale error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "disclosure/benchmarks.hpp"
#include "disclosure/detector.hpp"
#include "disclosure/experiments.hpp"
#include "disclosure/io.hpp"
#include "disclosure/mechanisms.hpp"
#include "disclosure/model.hpp"
#include "disclosure/oracle.hpp"
#include "disclosure/sim.hpp"
#include "disclosure/solver.hpp"
#include "disclosure/version.hpp"

namespace disclosure::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kScale = 3 };

namespace detail {

struct ModelFlags {
  double mu = 0.0;
  double q = 0.0;
  double c = 0.0;
  int horizon = 0;

  void add(CLI::App& app, bool required) {
    auto* a = app.add_option("--mu", mu, "P(chain starts in the good state)");
    auto* b = app.add_option("--q", q, "per-step jump probability");
    auto* d = app.add_option("--c", c, "delay cost per period");
    auto* e = app.add_option("--T", horizon, "horizon length");
    if (required) {
      for (auto* opt : {a, b, d, e}) opt->required();
    }
  }

  ModelParams params() const {
    ModelParams p{mu, q, horizon, c};
    p.validate();
    return p;
  }
};

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Flags given on the command line, sorted by name; --threads and --out are
// execution details and are left out so they cannot change the document.
inline Json manifest(const CLI::App& sub, std::optional<std::uint64_t> seed, bool timestamp) {
  std::map<std::string, std::string> given;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "threads" || name == "out" || name == "timestamp") continue;
    std::string value;
    for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    given[name] = value;
  }
  Json params = Json::object();
  for (const auto& [k, v] : given) params[k] = v;
  Json m{{"command", sub.get_name()},
         {"parameters", params},
         {"tool_version", kVersion},
         {"seed", seed ? Json(*seed) : Json(nullptr)},
         {"timestamp", timestamp ? Json(utc_now()) : Json(nullptr)}};
  return m;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ParameterError("out", "cannot open output file " + out_path);
  file << text;
}

inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json obedience_slacks(const ModelParams& params, const TbpMechanism& mech) {
  return numbers(tbp_obedience(params, mech).slack);
}

// --- solve --------------------------------------------------------------------

struct SolveFlags {
  ModelFlags model;
  bool fast = false;
  std::string out;
  bool timestamp = false;
};

inline int cmd_solve(const CLI::App& sub, const SolveFlags& f, std::ostream& out) {
  const ModelParams params = f.model.params();
  const SolveResult r = f.fast ? algorithm1_fast(params) : algorithm1(params);
  const ObedienceReport obedience = tbp_obedience(params, r.mechanism);
  if (!obedience.satisfied) return kInternal;
  Json result{{"solver", f.fast ? "algorithm1_fast" : "algorithm1"},
              {"n_p_star", r.mechanism.threshold()},
              {"q_star", number(r.mechanism.bad_silence())},
              {"optimal_utility", number(r.optimal_utility)},
              {"tau_no", r.tau_no},
              {"binding_constraint_time",
               r.binding_constraint_time ? Json(*r.binding_constraint_time) : Json(nullptr)},
              {"obedience_satisfied", obedience.satisfied},
              {"obedience_slacks", numbers(obedience.slack)},
              {"mechanism", to_json(r.mechanism)}};
  Json doc{{"manifest", manifest(sub, std::nullopt, f.timestamp)},
           {"model", to_json(params)},
           {"result", result}};
  emit(dump(doc), f.out, out);
  return kOk;
}

// --- benchmarks ---------------------------------------------------------------

inline int cmd_benchmarks(const CLI::App& sub, const SolveFlags& f, std::ostream& out) {
  const ModelParams params = f.model.params();
  const ComparisonPoint point = compare_at(params);
  const SolveResult r = algorithm1(params);
  if (point.optimal < point.best_benchmark() - 1e-9) return kInternal;
  BenchmarkSuite suite{point.no_info, point.full_info, point.static_rho, point.static_};
  Json result{{"benchmarks", to_json(suite)},
              {"optimal_utility", number(point.optimal)},
              {"mechanism", to_json(r.mechanism)},
              {"best_benchmark", number(point.best_benchmark())},
              {"improvement_pct", number(point.improvement_pct)}};
  Json doc{{"manifest", manifest(sub, std::nullopt, f.timestamp)},
           {"model", to_json(params)},
           {"result", result}};
  emit(dump(doc), f.out, out);
  return kOk;
}

// --- verify -------------------------------------------------------------------

struct VerifyFlags {
  ModelFlags model{0.9, 0.3, 0.1, 8};
  std::string grid;
  std::string mode = "all";
  double step = 1e-3;
  std::string out;
  bool timestamp = false;
  unsigned threads = 0;
};

inline std::vector<ModelParams> verify_instances(const VerifyFlags& f) {
  std::vector<ModelParams> cells;
  if (f.grid.empty()) {
    cells.push_back(f.model.params());
    return cells;
  }
  std::vector<double> probs, costs;
  std::vector<int> horizons;
  if (f.grid == "small") {
    probs = {0.1, 0.5, 0.9};
    costs = {0.1, 0.6};
    horizons = {3, 5};
  } else {  // acceptance
    probs = {0.1, 0.3, 0.5, 0.7, 0.9};
    costs = {0.02, 0.1, 0.3, 0.6, 1.0};
    horizons = {3, 5, 8};
  }
  for (int T : horizons)
    for (double mu : probs)
      for (double q : probs)
        for (double c : costs) cells.push_back(ModelParams{mu, q, T, c});
  return cells;
}

struct CheckOutcome {
  Json record;
  bool pass = true;
};

inline CheckOutcome verify_instance(const ModelParams& p, const VerifyFlags& f) {
  CheckOutcome outcome;
  outcome.record = Json{{"model", to_json(p)}};
  const bool do_oracle = f.mode != "enumerate";
  const bool do_enum = f.mode != "oracle";
  const SolveResult opt = algorithm1(p);
  if (do_oracle) {
    const OracleResult oracle = brute_force_tbp(p, f.step);
    const SolveResult fast = algorithm1_fast(p);
    const double dq = std::abs(opt.mechanism.bad_silence() - oracle.best_mechanism.bad_silence());
    const bool same_n = opt.mechanism.threshold() == oracle.best_mechanism.threshold();
    const bool agree = same_n && dq <= 2.0 * f.step;
    const bool fast_agrees =
        fast.mechanism.threshold() == opt.mechanism.threshold() &&
        std::abs(fast.mechanism.bad_silence() - opt.mechanism.bad_silence()) <= 1e-12;
    const bool tau_agrees = brute_force_tau_no(p) == opt.tau_no;
    outcome.record["oracle"] = Json{{"solver", to_json(opt.mechanism)},
                                    {"oracle", to_json(oracle.best_mechanism)},
                                    {"abs_dq", number(dq)},
                                    {"solver_matches_oracle", agree},
                                    {"fast_matches_solver", fast_agrees},
                                    {"tau_no_matches", tau_agrees}};
    outcome.pass = outcome.pass && agree && fast_agrees && tau_agrees;
  }
  if (do_enum) {
    const int T = p.horizon;
    const std::vector<std::pair<const char*, SilentPathPolicy>> policies{
        {"optimal", tbp_to_silent_path(opt.mechanism)},
        {"no_info", SilentPathPolicy::no_information(T)},
        {"full_info", SilentPathPolicy::full_information(T)},
        {"static", SilentPathPolicy::stationary(T, best_static_rho(p))}};
    Json list = Json::array();
    for (const auto& [name, policy] : policies) {
      const double dp = solve_dp(p, policy).expected_cost;
      const double brute = enumerate_stopping_rules(p, policy);
      const bool ok = std::abs(dp - brute) <= 1e-9;
      list.push_back(Json{{"policy", name},
                          {"dp_value", number(dp)},
                          {"enumerated_value", number(brute)},
                          {"agree", ok}});
      outcome.pass = outcome.pass && ok;
    }
    outcome.record["dp_vs_enumeration"] = list;
  }
  outcome.record["pass"] = outcome.pass;
  return outcome;
}

inline int cmd_verify(const CLI::App& sub, const VerifyFlags& f, std::ostream& out,
                      std::ostream& err) {
  const auto cells = verify_instances(f);
  for (const auto& p : cells) {
    p.validate();
    if (f.mode != "enumerate" && p.horizon > kMaxOracleHorizon) {
      err << "error: --T " << p.horizon << " exceeds the brute-force limit "
          << kMaxOracleHorizon << "\n";
      return kScale;
    }
    if (f.mode != "oracle" && p.horizon > kMaxEnumerationHorizon) {
      err << "error: --T " << p.horizon << " exceeds the enumeration limit "
          << kMaxEnumerationHorizon << "\n";
      return kScale;
    }
  }
  std::vector<CheckOutcome> outcomes(cells.size());
  parallel_for(cells.size(), f.threads,
               [&](std::size_t i) { outcomes[i] = verify_instance(cells[i], f); });
  Json checks = Json::array();
  bool all = true;
  for (const auto& o : outcomes) {
    checks.push_back(o.record);
    all = all && o.pass;
  }
  Json doc{{"manifest", manifest(sub, std::nullopt, f.timestamp)},
           {"instances", static_cast<int>(cells.size())},
           {"all_passed", all},
           {"checks", checks}};
  emit(dump(doc), f.out, out);
  return all ? kOk : kInternal;
}

// --- simulate -----------------------------------------------------------------

struct SimulateFlags {
  ModelFlags model;
  std::int64_t episodes = 100000;
  std::int64_t seed = 0;
  std::string policy = "optimal";
  std::string policy_file;
  std::string mode = "obedient";
  std::string out;
  bool timestamp = false;
  unsigned threads = 0;
};

inline SilentPathPolicy simulate_policy(const SimulateFlags& f, const ModelParams& p) {
  if (!f.policy_file.empty()) {
    std::ifstream in(f.policy_file);
    if (!in) throw ParameterError("policy-file", "cannot read " + f.policy_file);
    try {
      SilentPathPolicy policy = any_policy_from_json(Json::parse(in), p.horizon);
      check_horizon(p, policy.horizon());
      return policy;
    } catch (const Json::exception& e) {
      throw ParameterError("policy-file", std::string("malformed policy document: ") + e.what());
    }
  }
  if (f.policy == "optimal") return tbp_to_silent_path(algorithm1(p).mechanism);
  if (f.policy == "full-info") return SilentPathPolicy::full_information(p.horizon);
  if (f.policy == "no-info") return SilentPathPolicy::no_information(p.horizon);
  if (f.policy == "static") return SilentPathPolicy::stationary(p.horizon, best_static_rho(p));
  throw ParameterError("policy", "unsupported policy " + f.policy);
}

inline int cmd_simulate(const CLI::App& sub, const SimulateFlags& f, std::ostream& out) {
  const ModelParams params = f.model.params();
  if (f.episodes < 1) throw ParameterError("episodes", "--episodes must be at least 1");
  const SilentPathPolicy policy = simulate_policy(f, params);
  const DetectorMode mode = f.mode == "dp" ? DetectorMode::kBestResponse : DetectorMode::kObedient;
  const auto seed = static_cast<std::uint64_t>(f.seed);
  const SimReport report = estimate(params, policy, SimConfig{f.episodes, seed, mode, f.threads});

  double expected_utility = 0.0;
  double expected_cost = 0.0;
  if (mode == DetectorMode::kBestResponse) {
    const DetectorSolution sol = solve_dp(params, policy);
    expected_utility = expected_principal_utility(params, policy, &sol.wait_is_optimal);
    expected_cost = sol.expected_cost;
  } else {
    expected_utility = expected_principal_utility(params, policy);
    expected_cost = obedient_expected_cost(params, policy);
  }
  auto in_stderr = [](double empirical, double exact, const std::optional<double>& se) {
    if (!se || *se == 0.0) return Json(nullptr);
    return number((empirical - exact) / *se);
  };
  Json closed{{"expected_principal_utility", number(expected_utility)},
              {"expected_detector_cost", number(expected_cost)},
              {"utility_delta_in_stderr",
               in_stderr(report.mean_principal_utility, expected_utility, report.stderr_utility)},
              {"cost_delta_in_stderr",
               in_stderr(report.mean_detector_cost, expected_cost, report.stderr_cost)}};
  Json m = manifest(sub, seed, f.timestamp);
  m["generator"] = kGeneratorName;
  Json doc{{"manifest", m},
           {"model", to_json(params)},
           {"detector_mode", to_string(mode)},
           {"policy", to_json(policy)},
           {"report", to_json(report)},
           {"closed_form", closed}};
  emit(dump(doc), f.out, out);
  return kOk;
}

// --- sweep --------------------------------------------------------------------

struct SweepFlags {
  std::string mode;
  std::string fix = "c=0.1";
  int grid = 101;
  int horizon = 100;
  double mu = 0.9;
  double q = 0.3;
  int points = 101;
  std::string out;
  bool timestamp = false;
  unsigned threads = 0;
};

inline int cmd_sweep(const CLI::App& sub, const SweepFlags& f, std::ostream& out) {
  const Json m = manifest(sub, std::nullopt, f.timestamp);
  std::ostringstream csv;
  csv << "# manifest: " << m.dump() << "\n";
  Json summary;
  if (f.mode == "patience") {
    const auto eq = f.fix.find('=');
    const auto axis = parse_axis(eq == std::string::npos ? f.fix : f.fix.substr(0, eq));
    if (!axis || eq == std::string::npos) {
      throw ParameterError("fix", "--fix expects mu=<v>, q=<v> or c=<v>");
    }
    double value = 0.0;
    try {
      value = std::stod(f.fix.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParameterError("fix", "--fix value is not a number");
    }
    const PatienceSweep sweep = patience_sweep(*axis, value, f.grid, f.horizon, f.threads);
    csv << "row,col,mu,q,c,T,tau_no,n_p_star,q_star,eta,never_declares\n";
    for (const auto& cell : sweep.cells) {
      csv << cell.row << ',' << cell.col << ',' << fmt12(cell.params.prior_good) << ','
          << fmt12(cell.params.hazard) << ',' << fmt12(cell.params.delay_cost) << ','
          << cell.params.horizon << ',' << cell.tau_no << ',' << cell.n_p_star << ','
          << fmt12(cell.q_star) << ',' << cell.eta << ',' << (cell.never_declares ? 1 : 0)
          << "\n";
    }
    Json pct = Json::object();
    for (std::size_t k = 0; k < kPatienceThresholds.size(); ++k) {
      pct["eta>=" + std::to_string(kPatienceThresholds[k])] = number(sweep.percent_at_least[k]);
    }
    summary = Json{{"fixed", axis_name(*axis)},
                   {"fixed_value", number(value)},
                   {"grid", f.grid},
                   {"T", f.horizon},
                   {"cells", static_cast<int>(sweep.cells.size())},
                   {"percent_at_least", pct},
                   {"never_declares_cells", sweep.never_declares_count},
                   {"grid_points", "(i+1)/(grid+1), i = 0..grid-1"},
                   {"never_declares_rule", "tau_no = T+1 reported as eta = 0, in no bucket"}};
  } else {
    ModelParams base{f.mu, f.q, f.horizon, 0.0};
    base.validate();
    const auto points = utility_vs_c(base, unit_grid(f.points), f.threads);
    csv << "c,optimal,no_info,full_info,static,static_rho,improvement_pct\n";
    bool dominance = true;
    double max_improvement = -1.0;
    double max_at = 0.0;
    for (const auto& pt : points) {
      csv << fmt12(pt.c) << ',' << fmt12(pt.optimal) << ',' << fmt12(pt.no_info) << ','
          << fmt12(pt.full_info) << ',' << fmt12(pt.static_) << ',' << fmt12(pt.static_rho)
          << ',' << (pt.improvement_pct ? fmt12(*pt.improvement_pct) : std::string("NA"))
          << "\n";
      dominance = dominance && pt.optimal >= pt.best_benchmark() - 1e-9;
      if (pt.improvement_pct && *pt.improvement_pct > max_improvement) {
        max_improvement = *pt.improvement_pct;
        max_at = pt.c;
      }
    }
    summary = Json{{"model", to_json(base)},
                   {"points", f.points},
                   {"dominance_holds", dominance},
                   {"max_improvement_pct", number(max_improvement)},
                   {"max_improvement_at_c", number(max_at)}};
    if (!dominance) return kInternal;
  }
  csv << "# summary: " << summary.dump() << "\n";
  if (f.out.empty()) {
    out << csv.str();
  } else {
    emit(csv.str(), f.out, out);
    out << dump(Json{{"manifest", m}, {"table", f.out}, {"summary", summary}});
  }
  return kOk;
}

}  // namespace detail

// Runs the tool on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Optimal dynamic disclosure against a quickest-detection detector"};
  app.name("disclosure");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "optimal time-based prioritized mechanism");
  solve_flags.model.add(*solve, true);
  solve->add_flag("--fast", solve_flags.fast, "use the single-constraint variant past tau_no");
  solve->add_option("--out", solve_flags.out, "write the document to a file");
  solve->add_flag("--timestamp", solve_flags.timestamp, "record the wall-clock time");

  SolveFlags bench_flags;
  auto* bench = app.add_subcommand("benchmarks", "no-info, full-info and best static utilities");
  bench_flags.model.add(*bench, true);
  bench->add_option("--out", bench_flags.out, "write the document to a file");
  bench->add_flag("--timestamp", bench_flags.timestamp, "record the wall-clock time");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "solver-vs-oracle and DP-vs-enumeration checks");
  verify_flags.model.add(*verify, false);
  verify->add_option("--grid", verify_flags.grid, "built-in instance grid")
      ->check(CLI::IsMember({"small", "acceptance"}));
  verify->add_option("--mode", verify_flags.mode, "which checks to run")
      ->check(CLI::IsMember({"all", "oracle", "enumerate"}));
  verify->add_option("--step", verify_flags.step, "oracle grid step for q_np")
      ->check(CLI::Range(1e-6, 0.1));
  verify->add_option("--out", verify_flags.out, "write the report to a file");
  verify->add_option("--threads", verify_flags.threads, "worker threads (0 = all cores)");
  verify->add_flag("--timestamp", verify_flags.timestamp, "record the wall-clock time");

  SimulateFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo play of a policy");
  sim_flags.model.add(*sim, true);
  sim->add_option("--episodes", sim_flags.episodes, "number of episodes");
  sim->add_option("--seed", sim_flags.seed, "master seed");
  sim->add_option("--policy", sim_flags.policy, "optimal | full-info | no-info | static")
      ->check(CLI::IsMember({"optimal", "full-info", "no-info", "static"}));
  sim->add_option("--policy-file", sim_flags.policy_file,
                  "JSON mechanism {n_p, q_np} or policy {rho_g, rho_b}");
  sim->add_option("--mode", sim_flags.mode, "detector behaviour: obedient | dp")
      ->check(CLI::IsMember({"obedient", "dp"}));
  sim->add_option("--out", sim_flags.out, "write the document to a file");
  sim->add_option("--threads", sim_flags.threads, "worker threads (0 = all cores)");
  sim->add_flag("--timestamp", sim_flags.timestamp, "record the wall-clock time");

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "patience maps and utility-vs-delay-cost curves");
  sweep->add_option("--mode", sweep_flags.mode, "patience | utility-vs-c")
      ->required()
      ->check(CLI::IsMember({"patience", "utility-vs-c"}));
  sweep->add_option("--fix", sweep_flags.fix, "fixed parameter for patience maps, e.g. c=0.1");
  sweep->add_option("--grid", sweep_flags.grid, "cells per free axis");
  sweep->add_option("--T", sweep_flags.horizon, "horizon length");
  sweep->add_option("--mu", sweep_flags.mu, "P(start good) for utility-vs-c");
  sweep->add_option("--q", sweep_flags.q, "jump probability for utility-vs-c");
  sweep->add_option("--points", sweep_flags.points, "number of delay-cost values on [0, 1]");
  sweep->add_option("--out", sweep_flags.out, "write the table to a file");
  sweep->add_option("--threads", sweep_flags.threads, "worker threads (0 = all cores)");
  sweep->add_flag("--timestamp", sweep_flags.timestamp, "record the wall-clock time");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(*solve, solve_flags, out);
    if (bench->parsed()) return cmd_benchmarks(*bench, bench_flags, out);
    if (verify->parsed()) return cmd_verify(*verify, verify_flags, out, err);
    if (sim->parsed()) return cmd_simulate(*sim, sim_flags, out);
    if (sweep->parsed()) return cmd_sweep(*sweep, sweep_flags, out);
  } catch (const ParameterError& e) {
    err << "error: --" << e.field() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedPolicyError& e) {
    err << "error: --policy: " << e.what() << "\n";
    return kUsage;
  } catch (const ScaleError& e) {
    err << "error: --T: " << e.what() << "\n";
    return kScale;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace disclosure::cli

#endif  // DISCLOSURE_CLI_HPP_
