#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbci/assignment_space.hpp"
#include "rbci/statistics.hpp"

namespace rbci {

/// Tail of a one-sided p-value: Greater counts T_pi >= T_obs, Less T_pi <= T_obs.
enum class Side { Greater, Less };
enum class Alternative { Greater, Less, TwoSided };

const char* to_string(Side s) noexcept;
const char* to_string(Alternative a) noexcept;
Side parse_side(std::string_view text);
Alternative parse_alternative(std::string_view text);

/// Sharp null of a constant effect theta.
struct Hypothesis {
  double theta = 0.0;
  Alternative alternative = Alternative::TwoSided;
};

/// Exact p-value count / denominator.
struct PValue {
  std::uint64_t count = 0;
  std::uint64_t denominator = 1;

  double value() const noexcept {
    return static_cast<double>(count) / static_cast<double>(denominator);
  }
  bool operator==(const PValue&) const = default;
};

/// Location where the p-value changes, with the aggregated signed number
/// of upward (below -> above the observed statistic) crossings.
struct JumpPoint {
  double theta = 0.0;
  int direction = 0;
  /// Upward and downward crossings merged into this point; direction == up - down.
  int up = 0;
  int down = 0;
};

struct JumpSet {
  std::vector<JumpPoint> jumps;  // sorted by theta, no zero directions
  double eps = 1e-3;
};

/// Step function p(theta) taking value p_k on the open interval
/// (theta_k, theta_{k+1}), 0 <= k <= K, with theta_0 = -inf and
/// theta_{K+1} = +inf.
class PValueStepFunction {
 public:
  PValueStepFunction(Side side, std::uint64_t denominator, std::vector<JumpPoint> jumps,
                     std::vector<std::uint64_t> interval_counts, double base_theta);

  Side side() const noexcept { return side_; }
  std::uint64_t denominator() const noexcept { return denominator_; }
  const std::vector<JumpPoint>& jumps() const noexcept { return jumps_; }
  std::size_t jump_count() const noexcept { return jumps_.size(); }
  /// p_k for k in [0, K].
  PValue interval_value(std::size_t k) const noexcept { return {counts_[k], denominator_}; }
  /// theta at which p_0 was counted directly.
  double base_theta() const noexcept { return base_theta_; }

  /// Value at any theta. At a jump point the crossing assignments tie the
  /// observed statistic and count on both sides, so the value there is
  /// p_{k-1} plus the crossings entering the tail (max(p_{k-1}, p_k) for a
  /// single-direction jump).
  PValue at(double theta) const noexcept;

 private:
  Side side_;
  std::uint64_t denominator_;
  std::vector<JumpPoint> jumps_;
  std::vector<std::uint64_t> counts_;
  double base_theta_;
};

struct IntervalDiagnostics {
  std::size_t jump_count = 0;
  std::uint64_t denominator = 0;
  /// p-value on the interval just below the lower / above the upper bound.
  std::optional<PValue> p_below_lower;
  std::optional<PValue> p_above_upper;
};

struct ConfidenceInterval {
  double lower = 0.0;  // may be -inf
  double upper = 0.0;  // may be +inf
  double alpha = 0.05;
  Alternative alternative = Alternative::TwoSided;
  IntervalDiagnostics diagnostics;

  bool contains(double theta) const noexcept { return lower <= theta && theta <= upper; }
};

/// The imputed statistic of every reference assignment as an explicit
/// function of theta, built once per (z, Y, Z, statistic).
class ImputedStatistics {
 public:
  ImputedStatistics(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                    Statistic kind);

  Statistic kind() const noexcept { return kind_; }
  double observed() const noexcept { return observed_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const TDecomposition& coefficients(std::size_t i) const noexcept { return coeffs_[i]; }
  double value(std::size_t i, double theta) const noexcept { return coeffs_[i].at(kind_, theta); }

  /// True crossings of the observed statistic by assignment i (0, 1 or 2, sorted).
  std::vector<double> roots(std::size_t i) const;

  /// Direction of assignment i across [lo, hi]: indicator{T >= T_obs} at hi minus at lo.
  int crossing(std::size_t i, double lo, double hi) const noexcept;

  /// p-value count at theta using the decomposition.
  std::uint64_t count(double theta, Side side) const noexcept;

 private:
  Statistic kind_;
  double observed_;
  std::vector<TDecomposition> coeffs_;
};

/// Roots of a0 + a1 theta = observed (at most one).
std::vector<double> dim_roots(const TDecomposition& c, double observed);
/// True crossings of t(theta) = observed (at most two), spurious roots of
/// the squared equation removed.
std::vector<double> t_roots(const TDecomposition& c, double observed);

std::vector<double> solve_jumps_dim(AssignmentView z, OutcomeView y, AssignmentView z_pi);
std::vector<double> solve_jumps_t(AssignmentView z, OutcomeView y, AssignmentView z_pi);

/// +1 if the imputed statistic of z_pi moves from below to at/above the
/// observed one across theta_root, -1 for the reverse, 0 otherwise.
/// Throws EpsilonTooLarge if eps reaches half the gap to another root of z_pi.
int classify_jump(AssignmentView z, OutcomeView y, AssignmentView z_pi, double theta_root,
                  double eps, Statistic kind);

JumpSet collect_jumps(const ImputedStatistics& stats);
JumpSet collect_jumps(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                      Statistic kind);

PValueStepFunction recover_p_function(const ImputedStatistics& stats, Side side,
                                      const JumpSet& jumps);
PValueStepFunction recover_p_function(AssignmentView z, OutcomeView y,
                                      const ReferenceSet& refset, Statistic kind, Side side,
                                      const JumpSet& jumps);

/// Smallest jump point with p >= alpha on its right, or -inf when p_0 >= alpha.
double squeeze_lower(const PValueStepFunction& pfun, double alpha);
/// Mirror of squeeze_lower on a Less-side function.
double squeeze_upper(const PValueStepFunction& pfun, double alpha);

ConfidenceInterval confidence_interval(const ImputedStatistics& stats, double alpha,
                                       Alternative alternative);
ConfidenceInterval confidence_interval(AssignmentView z, OutcomeView y,
                                       const ReferenceSet& refset, Statistic kind,
                                       double alpha, Alternative alternative);

/// Direct count at a single theta with explicitly imputed outcomes. The
/// two-sided value is min(1, 2 min(p+, p-)).
PValue p_value(AssignmentView z, OutcomeView y, const ReferenceSet& refset, Statistic kind,
               const Hypothesis& hypothesis);

}  // namespace rbci
