#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbci/errors.hpp"
#include "rbci/inversion.hpp"
#include "rbci/simulation.hpp"
#include "rbci/trial_io.hpp"

namespace rbci::cli {

namespace {

struct DataOptions {
  std::string input;
  std::string statistic = "t";
  std::string mode = "auto";
  std::size_t n_fisher = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t exact_cap = 1'000'000;
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("input", o.input, "Trial CSV with header z,y ('-' for stdin)")->required();
  cmd->add_option("--stat", o.statistic, "Test statistic")
      ->check(CLI::IsMember({"dim", "t"}))
      ->capture_default_str();
  cmd->add_option("--mode", o.mode, "Reference set: exact enumeration, Monte Carlo, or auto")
      ->check(CLI::IsMember({"auto", "exact", "mc"}))
      ->capture_default_str();
  cmd->add_option("--n-fisher", o.n_fisher, "Monte Carlo reference set size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
  cmd->add_option("--exact-cap", o.exact_cap, "Largest C(n, n1) enumerated in auto mode")
      ->capture_default_str();
}

struct Prepared {
  TrialData trial;
  Statistic statistic;
  ReferenceSet refset;
};

Prepared prepare(const DataOptions& o) {
  TrialData trial = read_trial_file(o.input);
  const Statistic statistic = parse_statistic(o.statistic);
  validate_trial(trial, statistic);
  const std::size_t n = trial.size();
  const std::size_t n1 = treated_count(trial.z);
  bool exact = o.mode == "exact";
  if (o.mode == "auto") {
    const auto total = binomial(n, n1);
    exact = total && *total <= o.exact_cap;
  }
  ReferenceSet refset = exact ? enumerate_cre(n, n1) : sample_cre(n, n1, o.n_fisher, o.seed, trial.z);
  return {std::move(trial), statistic, std::move(refset)};
}

int cmd_ci(const DataOptions& o, double alpha, const std::string& alternative, std::ostream& out) {
  const Prepared p = prepare(o);
  const ConfidenceInterval ci = confidence_interval(p.trial.z, p.trial.y, p.refset, p.statistic,
                                                    alpha, parse_alternative(alternative));
  nlohmann::ordered_json j;
  j["lower"] = bound_to_json(ci.lower);
  j["upper"] = bound_to_json(ci.upper);
  j["alpha"] = alpha;
  j["alternative"] = to_string(ci.alternative);
  j["statistic"] = to_string(p.statistic);
  j["mode"] = to_string(p.refset.mode());
  j["n_assignments"] = p.refset.cardinality();
  j["jump_count"] = ci.diagnostics.jump_count;
  j["seed"] = o.seed;
  if (p.refset.mode() == ReferenceMode::MonteCarlo) j["generator"] = p.refset.generator();
  if (ci.diagnostics.p_below_lower) j["p_below_lower"] = ci.diagnostics.p_below_lower->value();
  if (ci.diagnostics.p_above_upper) j["p_above_upper"] = ci.diagnostics.p_above_upper->value();
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_pfunction(const DataOptions& o, const std::string& side_name, std::ostream& out) {
  const Prepared p = prepare(o);
  const Side side = parse_side(side_name);
  const ImputedStatistics stats(p.trial.z, p.trial.y, p.refset, p.statistic);
  const PValueStepFunction pfun = recover_p_function(stats, side, collect_jumps(stats));
  out << "theta,p,kind\n";
  out << format_number(pfun.base_theta()) << ',' << format_number(pfun.interval_value(0).value())
      << ",base\n";
  for (std::size_t k = 0; k < pfun.jump_count(); ++k)
    out << format_number(pfun.jumps()[k].theta) << ','
        << format_number(pfun.interval_value(k + 1).value()) << ",jump\n";
  return kExitOk;
}

struct SimulateOptions {
  std::string dgp = "normal";
  std::size_t n = 100;
  std::size_t n_fisher = 10'000;
  std::size_t n_rep = 1'000;
  double alpha = 0.05;
  std::string alternative = "two-sided";
  std::string statistic = "t";
  std::uint64_t seed = 0;
  std::string out_csv;
  unsigned threads = 0;
  bool rows = false;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const Statistic statistic = parse_statistic(o.statistic);
  const Alternative alternative = parse_alternative(o.alternative);
  SimulationReport report;
  nlohmann::ordered_json j;
  if (o.dgp == "example1-exact") {
    report = exact_sweep_example1(o.alpha, alternative, statistic, o.rows);
    j["dgp"] = "example1-exact";
  } else {
    SimulationConfig config;
    config.n = o.n;
    config.n1 = o.n / 2;
    config.n_fisher = o.n_fisher;
    config.n_rep = o.n_rep;
    config.alpha = o.alpha;
    config.alternative = alternative;
    config.statistic = statistic;
    config.seed = o.seed;
    config.threads = o.threads;
    config.keep_rows = o.rows;
    report = run_replications(config);
    j["dgp"] = "normal";
    j["seed"] = o.seed;
  }
  j["alpha"] = o.alpha;
  j["alternative"] = to_string(alternative);
  j["statistic"] = to_string(statistic);
  const nlohmann::json body = to_json(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  out << j.dump(2) << '\n';
  if (!o.out_csv.empty()) {
    std::ofstream csv(o.out_csv);
    if (!csv) throw Error(ErrorCode::InvalidInput, "cannot write '" + o.out_csv + "'");
    csv << table_csv_header() << '\n' << table_csv_row(report) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact randomization-based confidence intervals by inverting the Fisher randomization test",
               "rbci"};
  app.require_subcommand(1);

  DataOptions ci_opts;
  double alpha = 0.05;
  std::string alternative = "two-sided";
  auto* ci = app.add_subcommand("ci", "Confidence interval for a constant treatment effect");
  add_data_options(ci, ci_opts);
  ci->add_option("--alpha", alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  ci->add_option("--alternative", alternative, "Alternative hypothesis")
      ->check(CLI::IsMember({"greater", "less", "two-sided"}))
      ->capture_default_str();

  DataOptions pf_opts;
  std::string side = "greater";
  auto* pf = app.add_subcommand("pfunction", "Export the p-value step function as CSV");
  add_data_options(pf, pf_opts);
  pf->add_option("--side", side, "Tail of the p-value")
      ->check(CLI::IsMember({"greater", "less"}))
      ->capture_default_str();

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Coverage and type-I error simulations");
  simulate->add_option("--dgp", sim.dgp, "Data generating process")
      ->check(CLI::IsMember({"example1-exact", "normal"}))
      ->capture_default_str();
  simulate->add_option("--n", sim.n, "Units (half treated)")->capture_default_str();
  simulate->add_option("--n-fisher", sim.n_fisher, "Monte Carlo reference set size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--n-rep", sim.n_rep, "Replications")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--alpha", sim.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  simulate->add_option("--alternative", sim.alternative, "Alternative hypothesis")
      ->check(CLI::IsMember({"greater", "less", "two-sided"}))
      ->capture_default_str();
  simulate->add_option("--stat", sim.statistic, "Test statistic")
      ->check(CLI::IsMember({"dim", "t"}))
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--out", sim.out_csv, "Write a summary CSV (header and one row) to this file");
  simulate->add_option("--threads", sim.threads, "Worker threads (default: RBCI_THREADS or all cores)");
  simulate->add_flag("--rows", sim.rows, "Include per-replication rows in the JSON report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*ci) return cmd_ci(ci_opts, alpha, alternative, out);
    if (*pf) return cmd_pfunction(pf_opts, side, out);
    return cmd_simulate(sim, out);
  } catch (const Error& e) {
    err << "rbci: " << e.what() << '\n';
    return e.code() == ErrorCode::EmptyInterval ? kExitEmptyInterval : kExitInvalid;
  }
}

}  // namespace rbci::cli
