#include "rbci/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rbci/errors.hpp"

namespace rbci {

const char* to_string(Statistic s) noexcept {
  return s == Statistic::DifferenceInMeans ? "dim" : "t";
}

Statistic parse_statistic(std::string_view text) {
  if (text == "dim" || text == "difference-in-means") return Statistic::DifferenceInMeans;
  if (text == "t" || text == "studentized-t") return Statistic::StudentizedT;
  throw Error(ErrorCode::InvalidInput, "unknown statistic '" + std::string(text) + "'");
}

namespace {

struct ArmSizes {
  std::size_t treated = 0;
  std::size_t control = 0;
};

ArmSizes arm_sizes(AssignmentView z, std::size_t expected_len, std::size_t min_per_arm) {
  if (z.size() != expected_len)
    throw Error(ErrorCode::InvalidDesign, "assignment and outcome lengths differ");
  ArmSizes s;
  for (auto v : z) {
    if (v > 1) throw Error(ErrorCode::InvalidDesign, "assignment entries must be 0 or 1");
    (v ? s.treated : s.control) += 1;
  }
  if (s.treated < min_per_arm || s.control < min_per_arm)
    throw Error(ErrorCode::InvalidDesign, "each arm needs at least " + std::to_string(min_per_arm) +
                                              " unit(s)");
  return s;
}

struct ArmMeans {
  double treated = 0.0;
  double control = 0.0;
};

ArmMeans arm_means(AssignmentView z, OutcomeView a, const ArmSizes& s) {
  ArmMeans m;
  for (std::size_t i = 0; i < z.size(); ++i) (z[i] ? m.treated : m.control) += a[i];
  m.treated /= static_cast<double>(s.treated);
  m.control /= static_cast<double>(s.control);
  return m;
}

double bilinear(AssignmentView z, OutcomeView a, OutcomeView b, const ArmSizes& s,
                const ArmMeans& ma, const ArmMeans& mb) {
  double treated = 0.0;
  double control = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i])
      treated += (a[i] - ma.treated) * (b[i] - mb.treated);
    else
      control += (a[i] - ma.control) * (b[i] - mb.control);
  }
  const double n1 = static_cast<double>(s.treated);
  const double n0 = static_cast<double>(s.control);
  return treated / (n1 * (n1 - 1.0)) + control / (n0 * (n0 - 1.0));
}

double t_from_parts(double numerator, double variance) noexcept {
  if (variance <= kVarianceFloor) {
    if (numerator == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), numerator);
  }
  return numerator / std::sqrt(variance);
}

}  // namespace

double difference_in_means(AssignmentView z, OutcomeView a) {
  const ArmSizes s = arm_sizes(z, a.size(), 1);
  const ArmMeans m = arm_means(z, a, s);
  return m.treated - m.control;
}

double pooled_bilinear_variance(AssignmentView z, OutcomeView a, OutcomeView b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidDesign, "outcome lengths differ");
  const ArmSizes s = arm_sizes(z, a.size(), 2);
  return bilinear(z, a, b, s, arm_means(z, a, s), arm_means(z, b, s));
}

double studentized_t(AssignmentView z, OutcomeView a) {
  const double var = pooled_bilinear_variance(z, a, a);
  if (var <= kVarianceFloor)
    throw Error(ErrorCode::DegenerateVariance,
                "pooled variance is zero; the t statistic is undefined (try the difference in means)");
  return difference_in_means(z, a) / std::sqrt(var);
}

double statistic_value(Statistic kind, AssignmentView z, OutcomeView a) {
  return kind == Statistic::DifferenceInMeans ? difference_in_means(z, a) : studentized_t(z, a);
}

double reference_statistic_value(Statistic kind, AssignmentView z, OutcomeView a) {
  if (kind == Statistic::DifferenceInMeans) return difference_in_means(z, a);
  return t_from_parts(difference_in_means(z, a), pooled_bilinear_variance(z, a, a));
}

double TDecomposition::t_at(double theta) const noexcept {
  return t_from_parts(numerator(theta), radicand(theta));
}

TDecomposition t_decomposition(AssignmentView z_pi, OutcomeView y, OutcomeView delta) {
  if (delta.size() != y.size()) throw Error(ErrorCode::InvalidDesign, "delta length differs");
  const ArmSizes s = arm_sizes(z_pi, y.size(), 1);
  const ArmMeans my = arm_means(z_pi, y, s);
  const ArmMeans md = arm_means(z_pi, delta, s);
  TDecomposition c;
  c.a0 = my.treated - my.control;
  c.a1 = md.treated - md.control;
  if (s.treated >= 2 && s.control >= 2) {
    c.b0 = bilinear(z_pi, y, y, s, my, my);
    c.b1 = bilinear(z_pi, y, delta, s, my, md);
    c.b2 = bilinear(z_pi, delta, delta, s, md, md);
  }
  return c;
}

TDecomposition decompose(AssignmentView z, AssignmentView z_pi, OutcomeView y, Statistic kind) {
  if (z.size() != z_pi.size()) throw Error(ErrorCode::InvalidDesign, "assignment lengths differ");
  if (kind == Statistic::StudentizedT) arm_sizes(z_pi, y.size(), 2);
  std::vector<double> delta(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    delta[i] = static_cast<double>(z_pi[i]) - static_cast<double>(z[i]);
  return t_decomposition(z_pi, y, delta);
}

int compare_to_observed(double value, double observed) noexcept {
  if (value == observed) return 0;
  const double tol = 1e-10 * std::max(std::abs(value), std::abs(observed));
  if (std::isfinite(tol) && std::abs(value - observed) <= tol) return 0;
  return value < observed ? -1 : 1;
}

}  // namespace rbci
