#pragma once

#include <vector>

#include "rbci/assignment_space.hpp"
#include "rbci/inversion.hpp"
#include "rbci/statistics.hpp"

// Brute-force p-value evaluation for validating the analytic inversion.
// Nothing here calls into the statistic or decomposition code it checks.
namespace rbci::oracle {

enum class ProbeProvenance { Midpoints, JumpPoints, Uniform, User };

/// Strictly increasing, finite probe locations.
class ProbeGrid {
 public:
  ProbeGrid(std::vector<double> thetas, ProbeProvenance provenance);

  /// Midpoints of every bounded interval of pfun, plus one probe on each
  /// unbounded side. A function without jumps yields {0}.
  static ProbeGrid midpoints(const PValueStepFunction& pfun);
  static ProbeGrid jump_points(const PValueStepFunction& pfun);
  static ProbeGrid uniform(double lo, double hi, std::size_t count);

  const std::vector<double>& thetas() const noexcept { return thetas_; }
  ProbeProvenance provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return thetas_.size(); }

 private:
  std::vector<double> thetas_;
  ProbeProvenance provenance_;
};

PValue oracle_p(AssignmentView z, OutcomeView y, const ReferenceSet& refset, Statistic kind,
                double theta, Side side);

std::vector<PValue> oracle_sweep(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                                 Statistic kind, const ProbeGrid& grid, Side side);

}  // namespace rbci::oracle
