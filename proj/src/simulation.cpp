#include "rbci/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "rbci/errors.hpp"
#include "rbci/random.hpp"
#include "rbci/trial_io.hpp"

namespace rbci {

namespace {

// Seed streams derived from the master seed, one per random ingredient.
enum Stream : std::uint64_t { kScience = 1, kAssignment = 2, kReference = 3 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finalize(SimulationReport& report, std::vector<ReplicationRow> rows, bool keep_rows) {
  report.n_rep = rows.size();
  double tp = 0.0;
  double tr = 0.0;
  for (const auto& r : rows) {
    report.covered += r.covered;
    report.rejected += r.rejected;
    report.empty_intervals += r.empty_interval;
    report.disagreements += r.covered == r.rejected;
    tp += r.seconds_pvalue;
    tr += r.seconds_rbci;
  }
  const double reps = static_cast<double>(report.n_rep);
  report.coverage = static_cast<double>(report.covered) / reps;
  report.type1_error = static_cast<double>(report.rejected) / reps;
  report.mean_seconds_pvalue = tp / reps;
  report.mean_seconds_rbci = tr / reps;
  if (keep_rows) report.rows = std::move(rows);
}

// Test and interval on one observed data set; timings include the reference set.
template <class MakeReference>
ReplicationRow analyse(std::size_t index, AssignmentView z, OutcomeView y, double alpha,
                       Alternative alternative, Statistic statistic, double true_theta,
                       MakeReference make_reference) {
  ReplicationRow row;
  row.index = index;

  auto start = Clock::now();
  {
    const ReferenceSet refset = make_reference();
    row.p = p_value(z, y, refset, statistic, {true_theta, alternative});
  }
  row.seconds_pvalue = seconds_since(start);
  row.rejected = row.p.value() <= alpha;

  start = Clock::now();
  try {
    const ReferenceSet refset = make_reference();
    const ConfidenceInterval ci = confidence_interval(z, y, refset, statistic, alpha, alternative);
    row.lower = ci.lower;
    row.upper = ci.upper;
    row.covered = ci.contains(true_theta);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyInterval) throw;
    row.empty_interval = true;
    row.covered = false;
    row.lower = std::numeric_limits<double>::quiet_NaN();
    row.upper = std::numeric_limits<double>::quiet_NaN();
  }
  row.seconds_rbci = seconds_since(start);
  return row;
}

}  // namespace

std::vector<double> ScienceTable::observe(AssignmentView z) const {
  if (z.size() != y0.size() || y1.size() != y0.size())
    throw Error(ErrorCode::InvalidDesign, "assignment does not match the science table");
  std::vector<double> y(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) y[i] = z[i] ? y1[i] : y0[i];
  return y;
}

ScienceTable dgp_example1() {
  ScienceTable t;
  t.y0 = {0.14, 1.12, 0.80, 1.80, 0.90, 0.44, 1.13, 0.53};
  t.y1.reserve(t.y0.size());
  for (double v : t.y0) t.y1.push_back(v + 1.0);
  return t;
}

Assignment example1_assignment() { return {1, 1, 0, 1, 0, 0, 1, 0}; }

ScienceTable dgp_normal(std::size_t n, std::uint64_t seed) {
  if (n < 4) throw Error(ErrorCode::InvalidInput, "normal design needs at least 4 units");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ScienceTable t;
  t.y0.resize(n);
  t.y1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.y0[i] = normal(rng);
    t.y1[i] = t.y0[i] + 1.0;
  }
  return t;
}

const char* to_string(Dgp d) noexcept {
  return d == Dgp::Example1 ? "example1" : "normal";
}

void SimulationConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidInput, msg); };
  if (dgp == Dgp::Example1 && (n != 8 || n1 != 4 || true_theta != 1.0))
    fail("the example1 design is fixed at n = 8, n1 = 4, theta = 1");
  if (dgp == Dgp::NormalUnitEffect && true_theta != 1.0)
    fail("the normal design has unit effect 1");
  if (n1 == 0 || n1 >= n) fail("treated count must lie in (0, n)");
  if (statistic == Statistic::StudentizedT && (n1 < 2 || n - n1 < 2))
    fail("the t statistic needs two units per arm");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (n_rep == 0) fail("n_rep must be positive");
  if (refset_mode == ReferenceMode::MonteCarlo && n_fisher == 0) fail("n_fisher must be positive");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("RBCI_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SimulationReport exact_sweep_example1(double alpha, Alternative alternative, Statistic statistic,
                                      bool keep_rows) {
  const ScienceTable table = dgp_example1();
  const ReferenceSet space = enumerate_cre(8, 4);
  std::vector<ReplicationRow> rows;
  rows.reserve(space.cardinality());
  for (std::size_t k = 0; k < space.cardinality(); ++k) {
    const Assignment z(space[k].begin(), space[k].end());
    const std::vector<double> y = table.observe(z);
    rows.push_back(analyse(k, z, y, alpha, alternative, statistic, 1.0,
                           [&] { return enumerate_cre(8, 4); }));
  }
  SimulationReport report;
  report.n = 8;
  report.n_fisher = space.cardinality();
  finalize(report, std::move(rows), keep_rows);
  return report;
}

SimulationReport run_replications(const SimulationConfig& config) {
  config.validate();
  std::vector<ReplicationRow> rows(config.n_rep);

  auto one = [&](std::size_t r) {
    const ScienceTable table =
        config.dgp == Dgp::Example1
            ? dgp_example1()
            : dgp_normal(config.n, derive_seed(config.seed, kScience, r));
    Rng assign_rng(derive_seed(config.seed, kAssignment, r));
    const Assignment z = draw_assignment(config.n, config.n1, assign_rng);
    const std::vector<double> y = table.observe(z);
    const std::uint64_t ref_seed = derive_seed(config.seed, kReference, r);
    auto make_reference = [&] {
      return config.refset_mode == ReferenceMode::Exhaustive
                 ? enumerate_cre(config.n, config.n1)
                 : sample_cre(config.n, config.n1, config.n_fisher, ref_seed, z);
    };
    rows[r] = analyse(r, z, y, config.alpha, config.alternative, config.statistic,
                      config.true_theta, make_reference);
  };

  const unsigned threads =
      std::min<std::size_t>(config.threads ? config.threads : default_thread_count(), config.n_rep);
  if (threads <= 1) {
    for (std::size_t r = 0; r < config.n_rep; ++r) one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r; (r = next.fetch_add(1)) < config.n_rep;) {
          try {
            one(r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  SimulationReport report;
  report.n = config.n;
  report.n_fisher = config.refset_mode == ReferenceMode::Exhaustive
                        ? static_cast<std::size_t>(*binomial(config.n, config.n1))
                        : config.n_fisher;
  if (config.refset_mode == ReferenceMode::MonteCarlo) report.generator = kGeneratorName;
  finalize(report, std::move(rows), config.keep_rows);
  return report;
}

nlohmann::json bound_to_json(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "+inf";
  return std::stod(format_number(v));
}

nlohmann::json to_json(const SimulationReport& report) {
  nlohmann::json j = {
      {"n", report.n},
      {"n_fisher", report.n_fisher},
      {"n_rep", report.n_rep},
      {"coverage", report.coverage},
      {"type1_error", report.type1_error},
      {"covered", report.covered},
      {"rejected", report.rejected},
      {"empty_intervals", report.empty_intervals},
      {"disagreements", report.disagreements},
      {"mean_seconds_pvalue", report.mean_seconds_pvalue},
      {"mean_seconds_rbci", report.mean_seconds_rbci},
  };
  if (!report.generator.empty()) j["generator"] = report.generator;
  if (!report.rows.empty()) {
    auto& rows = j["replications"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"index", r.index},
                      {"covered", r.covered},
                      {"rejected", r.rejected},
                      {"empty_interval", r.empty_interval},
                      {"lower", r.empty_interval ? nlohmann::json(nullptr) : bound_to_json(r.lower)},
                      {"upper", r.empty_interval ? nlohmann::json(nullptr) : bound_to_json(r.upper)},
                      {"p_count", r.p.count},
                      {"p_denominator", r.p.denominator}});
    }
  }
  return j;
}

std::string table_csv_header() { return "n,n_fisher,coverage,type1,time_pvalue_s,time_rbci_s"; }

std::string table_csv_row(const SimulationReport& report) {
  return std::to_string(report.n) + "," + std::to_string(report.n_fisher) + "," +
         format_number(report.coverage) + "," + format_number(report.type1_error) + "," +
         format_number(report.mean_seconds_pvalue) + "," + format_number(report.mean_seconds_rbci);
}

}  // namespace rbci
