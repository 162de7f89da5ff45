#pragma once

#include <span>
#include <string_view>

#include "rbci/assignment_space.hpp"

namespace rbci {

using OutcomeView = std::span<const double>;

enum class Statistic { DifferenceInMeans, StudentizedT };

const char* to_string(Statistic s) noexcept;
Statistic parse_statistic(std::string_view text);

/// Variances at or below this (squared outcome units) are treated as zero.
inline constexpr double kVarianceFloor = 1e-30;

/// Mean of A over treated units minus mean over control units.
double difference_in_means(AssignmentView z, OutcomeView a);

/// Symmetric bilinear form whose diagonal is the Neyman variance estimate
///   s2(z, A, A) = var_1(A)/n1 + var_0(A)/n0
/// with unbiased within-arm variances. Off-diagonal values come from the
/// within-arm sample covariances. Requires at least two units per arm.
double pooled_bilinear_variance(AssignmentView z, OutcomeView a, OutcomeView b);

/// difference_in_means / sqrt(pooled variance); throws DegenerateVariance
/// when the variance is at or below kVarianceFloor.
double studentized_t(AssignmentView z, OutcomeView a);

/// Observed value of the chosen statistic.
double statistic_value(Statistic kind, AssignmentView z, OutcomeView a);

/// Statistic for a reference assignment, where a degenerate variance must
/// not abort the whole count: t is then 0 for a zero numerator and
/// +/-infinity otherwise.
double reference_statistic_value(Statistic kind, AssignmentView z, OutcomeView a);

/// Coefficients of the imputed statistic under Y + delta * theta:
///   DIM(theta) = a0 + a1 theta
///   t(theta)   = (a0 + a1 theta) / sqrt(b0 + 2 b1 theta + b2 theta^2)
struct TDecomposition {
  double a0 = 0.0;
  double a1 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  double numerator(double theta) const noexcept { return a0 + a1 * theta; }
  double radicand(double theta) const noexcept { return b0 + (2.0 * b1 + b2 * theta) * theta; }
  /// t at theta, with the reference_statistic_value convention on degeneracy.
  double t_at(double theta) const noexcept;
  double at(Statistic kind, double theta) const noexcept {
    return kind == Statistic::DifferenceInMeans ? numerator(theta) : t_at(theta);
  }
};

/// Requires delta = z_pi - z elementwise. b-coefficients are only filled
/// when both arms of z_pi have two or more units.
TDecomposition t_decomposition(AssignmentView z_pi, OutcomeView y, OutcomeView delta);

/// Same decomposition with delta formed from (z_pi, z) on the fly.
TDecomposition decompose(AssignmentView z, AssignmentView z_pi, OutcomeView y,
                         Statistic kind = Statistic::StudentizedT);

/// Three-way comparison of a reference statistic against the observed one.
/// Values within a relative 1e-10 are ties, which count toward both the
/// upper-tail and lower-tail p-values.
int compare_to_observed(double value, double observed) noexcept;

}  // namespace rbci
