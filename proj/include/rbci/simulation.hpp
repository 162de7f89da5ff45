#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbci/assignment_space.hpp"
#include "rbci/inversion.hpp"
#include "rbci/statistics.hpp"

namespace rbci {

/// Potential outcomes of every unit under control (y0) and treatment (y1).
struct ScienceTable {
  std::vector<double> y0;
  std::vector<double> y1;

  std::size_t size() const noexcept { return y0.size(); }
  /// Y_i = z_i Y_i(1) + (1 - z_i) Y_i(0).
  std::vector<double> observe(AssignmentView z) const;
};

/// The 8-unit table with unit effect 1 used as the worked example.
ScienceTable dgp_example1();
/// Observed assignment of the worked example.
Assignment example1_assignment();
/// Y(0) ~ N(0, 1) iid, Y(1) = Y(0) + 1.
ScienceTable dgp_normal(std::size_t n, std::uint64_t seed);

enum class Dgp { Example1, NormalUnitEffect };

const char* to_string(Dgp d) noexcept;

struct SimulationConfig {
  std::size_t n = 100;
  std::size_t n1 = 50;
  Dgp dgp = Dgp::NormalUnitEffect;
  Statistic statistic = Statistic::StudentizedT;
  double alpha = 0.05;
  Alternative alternative = Alternative::TwoSided;
  ReferenceMode refset_mode = ReferenceMode::MonteCarlo;
  std::size_t n_fisher = 10'000;
  std::size_t n_rep = 1'000;
  std::uint64_t seed = 0;
  double true_theta = 1.0;
  /// 0 = RBCI_THREADS or hardware concurrency.
  unsigned threads = 0;
  bool keep_rows = false;

  /// Throws InvalidInput on inconsistent settings.
  void validate() const;
};

struct ReplicationRow {
  std::size_t index = 0;
  bool covered = false;
  bool rejected = false;
  bool empty_interval = false;
  double lower = 0.0;
  double upper = 0.0;
  PValue p;
  double seconds_pvalue = 0.0;
  double seconds_rbci = 0.0;
};

struct SimulationReport {
  std::size_t n = 0;
  std::size_t n_fisher = 0;
  std::size_t n_rep = 0;
  double coverage = 0.0;
  double type1_error = 0.0;
  double mean_seconds_pvalue = 0.0;
  double mean_seconds_rbci = 0.0;
  std::size_t covered = 0;
  std::size_t rejected = 0;
  std::size_t empty_intervals = 0;
  /// Replications where "interval covers theta" and "test does not reject" disagree.
  std::size_t disagreements = 0;
  std::string generator;
  std::vector<ReplicationRow> rows;
};

/// All C(8,4) = 70 observed assignments of the worked example against the
/// fixed table: coverage of the interval at theta = 1 and the rejection
/// rate of the test of theta = 1.
SimulationReport exact_sweep_example1(double alpha, Alternative alternative, Statistic statistic,
                                      bool keep_rows = false);

/// Repeated sampling: each replication draws a fresh science table and a
/// fresh assignment, then a reference set under its own derived seed.
SimulationReport run_replications(const SimulationConfig& config);

/// Number of worker threads: RBCI_THREADS if set and positive, else the hardware count.
unsigned default_thread_count();

nlohmann::json to_json(const SimulationReport& report);
/// Finite values rounded to 12 significant digits; infinities as "-inf" / "+inf".
nlohmann::json bound_to_json(double v);
/// Header line of the summary CSV.
std::string table_csv_header();
std::string table_csv_row(const SimulationReport& report);

}  // namespace rbci
