#include "rbci/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rbci/errors.hpp"

namespace rbci {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative size below which a quadratic coefficient is considered pure cancellation.
constexpr double kCoefficientTolerance = 1e-12;
constexpr double kTieRelative = 1e-9;
constexpr double kTieAbsolute = 1e-12;

bool negligible(double value, double scale) noexcept {
  return std::abs(value) <= kCoefficientTolerance * scale;
}

bool same_root(double a, double b) noexcept {
  return std::abs(a - b) <= std::max(kTieRelative * std::max(std::abs(a), std::abs(b)), kTieAbsolute);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

void validate_inputs(AssignmentView z, OutcomeView y, const ReferenceSet& refset) {
  if (z.size() != y.size())
    throw Error(ErrorCode::InvalidDesign, "assignment and outcome lengths differ");
  validate_assignment(z);
  for (double v : y)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "outcomes must be finite");
  if (refset.units() != z.size() || refset.treated() != treated_count(z))
    throw Error(ErrorCode::InvalidDesign, "reference set does not match the observed design");
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidInput, "alpha must lie in (0, 1)");
}

bool in_tail(int cmp, Side side) noexcept {
  return side == Side::Greater ? cmp >= 0 : cmp <= 0;
}

}  // namespace

const char* to_string(Side s) noexcept { return s == Side::Greater ? "greater" : "less"; }

const char* to_string(Alternative a) noexcept {
  switch (a) {
    case Alternative::Greater: return "greater";
    case Alternative::Less: return "less";
    case Alternative::TwoSided: return "two-sided";
  }
  return "two-sided";
}

Side parse_side(std::string_view text) {
  if (text == "greater") return Side::Greater;
  if (text == "less") return Side::Less;
  throw Error(ErrorCode::InvalidInput, "unknown side '" + std::string(text) + "'");
}

Alternative parse_alternative(std::string_view text) {
  if (text == "greater") return Alternative::Greater;
  if (text == "less") return Alternative::Less;
  if (text == "two-sided") return Alternative::TwoSided;
  throw Error(ErrorCode::InvalidInput, "unknown alternative '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Step function

PValueStepFunction::PValueStepFunction(Side side, std::uint64_t denominator,
                                       std::vector<JumpPoint> jumps,
                                       std::vector<std::uint64_t> interval_counts,
                                       double base_theta)
    : side_(side),
      denominator_(denominator),
      jumps_(std::move(jumps)),
      counts_(std::move(interval_counts)),
      base_theta_(base_theta) {
  if (counts_.size() != jumps_.size() + 1)
    throw Error(ErrorCode::InternalInconsistency, "need one interval value per gap between jumps");
}

PValue PValueStepFunction::at(double theta) const noexcept {
  const auto it = std::lower_bound(jumps_.begin(), jumps_.end(), theta,
                                   [](const JumpPoint& j, double t) { return j.theta < t; });
  const auto k = static_cast<std::size_t>(it - jumps_.begin());
  if (it != jumps_.end() && it->theta == theta) {
    const int entering = side_ == Side::Greater ? it->up : it->down;
    return {counts_[k] + static_cast<std::uint64_t>(entering), denominator_};
  }
  return {counts_[k], denominator_};
}

// ---------------------------------------------------------------------------
// Imputed statistics

ImputedStatistics::ImputedStatistics(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                                     Statistic kind)
    : kind_(kind) {
  validate_inputs(z, y, refset);
  observed_ = statistic_value(kind, z, y);
  coeffs_.reserve(refset.cardinality());
  for (std::size_t i = 0; i < refset.cardinality(); ++i)
    coeffs_.push_back(decompose(z, refset[i], y, kind));
}

std::vector<double> ImputedStatistics::roots(std::size_t i) const {
  return kind_ == Statistic::DifferenceInMeans ? dim_roots(coeffs_[i], observed_)
                                               : t_roots(coeffs_[i], observed_);
}

int ImputedStatistics::crossing(std::size_t i, double lo, double hi) const noexcept {
  const bool before = compare_to_observed(value(i, lo), observed_) >= 0;
  const bool after = compare_to_observed(value(i, hi), observed_) >= 0;
  return static_cast<int>(after) - static_cast<int>(before);
}

std::uint64_t ImputedStatistics::count(double theta, Side side) const noexcept {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    c += in_tail(compare_to_observed(value(i, theta), observed_), side);
  return c;
}

// ---------------------------------------------------------------------------
// Jump-point solvers

std::vector<double> dim_roots(const TDecomposition& c, double observed) {
  // a1 >= 0 always; it vanishes only when z_pi == z
  if (negligible(c.a1, 1.0)) return {};
  return {(observed - c.a0) / c.a1};
}

std::vector<double> t_roots(const TDecomposition& c, double observed) {
  std::vector<double> candidates;
  if (observed == 0.0) {
    if (!negligible(c.a1, 1.0)) candidates.push_back(-c.a0 / c.a1);
  } else {
    // (t^2 b2 - a1^2) theta^2 + 2 (t^2 b1 - a0 a1) theta + (t^2 b0 - a0^2) = 0
    const double t2 = observed * observed;
    const double qa = t2 * c.b2 - c.a1 * c.a1;
    const double qb = t2 * c.b1 - c.a0 * c.a1;  // half the linear coefficient
    const double qc = t2 * c.b0 - c.a0 * c.a0;
    const bool flat_a = negligible(qa, t2 * c.b2 + c.a1 * c.a1);
    const bool flat_b = negligible(qb, t2 * std::abs(c.b1) + std::abs(c.a0 * c.a1));
    const bool flat_c = negligible(qc, t2 * c.b0 + c.a0 * c.a0);
    if (flat_a && flat_b && flat_c) return {};
    if (flat_a) {
      if (flat_b) return {};
      candidates.push_back(-qc / (2.0 * qb));
    } else {
      const double disc = qb * qb - qa * qc;
      if (disc < 0.0) return {};
      const double q = -(qb + std::copysign(std::sqrt(disc), qb));
      if (q == 0.0) {
        candidates.push_back(0.0);
      } else {
        candidates.push_back(q / qa);
        candidates.push_back(qc / q);
      }
    }
  }

  std::vector<double> roots;
  for (double r : candidates) {
    if (!std::isfinite(r)) continue;
    if (c.radicand(r) <= kVarianceFloor) continue;
    // squaring admits t(theta) = -observed; keep only true crossings
    if (observed != 0.0 && sign(c.numerator(r)) != sign(observed)) continue;
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<double> solve_jumps_dim(AssignmentView z, OutcomeView y, AssignmentView z_pi) {
  const double observed = difference_in_means(z, y);
  return dim_roots(decompose(z, z_pi, y, Statistic::DifferenceInMeans), observed);
}

std::vector<double> solve_jumps_t(AssignmentView z, OutcomeView y, AssignmentView z_pi) {
  const double observed = studentized_t(z, y);
  return t_roots(decompose(z, z_pi, y, Statistic::StudentizedT), observed);
}

int classify_jump(AssignmentView z, OutcomeView y, AssignmentView z_pi, double theta_root,
                  double eps, Statistic kind) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidInput, "eps must be positive");
  const double observed = statistic_value(kind, z, y);
  const TDecomposition c = decompose(z, z_pi, y, kind);
  const auto roots =
      kind == Statistic::DifferenceInMeans ? dim_roots(c, observed) : t_roots(c, observed);
  for (double r : roots) {
    if (same_root(r, theta_root)) continue;
    if (eps >= 0.5 * std::abs(r - theta_root))
      throw Error(ErrorCode::EpsilonTooLarge,
                  "eps must stay below half the gap to the neighbouring root " + std::to_string(r));
  }
  const bool before = compare_to_observed(c.at(kind, theta_root - eps), observed) >= 0;
  const bool after = compare_to_observed(c.at(kind, theta_root + eps), observed) >= 0;
  return static_cast<int>(after) - static_cast<int>(before);
}

// ---------------------------------------------------------------------------
// Aggregation, recovery, squeezing

JumpSet collect_jumps(const ImputedStatistics& stats) {
  struct Root {
    double theta;
    std::size_t index;
  };
  std::vector<Root> roots;
  roots.reserve(2 * stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i)
    for (double r : stats.roots(i)) roots.push_back({r, i});
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.index < b.index;
  });

  // single-linkage clusters of numerically tied roots: [begin, end) ranges
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j == 0 || !same_root(roots[j - 1].theta, roots[j].theta))
      clusters.emplace_back(j, j + 1);
    else
      clusters.back().second = j + 1;
  }

  JumpSet out;
  if (clusters.empty()) return out;
  if (clusters.size() == 1) {
    out.eps = std::max(1.0, std::abs(roots.front().theta)) * 1e-3;
  } else {
    double gap = kInf;
    for (std::size_t k = 1; k < clusters.size(); ++k)
      gap = std::min(gap, roots[clusters[k].first].theta - roots[clusters[k - 1].second - 1].theta);
    out.eps = 0.5 * gap;
  }

  std::vector<Root> members;
  for (const auto& [begin, end] : clusters) {
    members.assign(roots.begin() + static_cast<std::ptrdiff_t>(begin),
                   roots.begin() + static_cast<std::ptrdiff_t>(end));
    std::stable_sort(members.begin(), members.end(),
                     [](const Root& a, const Root& b) { return a.index < b.index; });
    JumpPoint jp;
    double sum = 0.0;
    for (const Root& m : members) sum += m.theta;
    jp.theta = sum / static_cast<double>(members.size());
    // one probe pair per assignment, spanning all of its roots in this cluster
    for (std::size_t a = 0; a < members.size();) {
      std::size_t b = a;
      while (b < members.size() && members[b].index == members[a].index) ++b;
      const double lo = members[a].theta;
      const double hi = members[b - 1].theta;
      const int j = stats.crossing(members[a].index, lo - out.eps, hi + out.eps);
      jp.up += j > 0;
      jp.down += j < 0;
      a = b;
    }
    jp.direction = jp.up - jp.down;
    if (jp.direction != 0) out.jumps.push_back(jp);
  }
  return out;
}

JumpSet collect_jumps(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                      Statistic kind) {
  return collect_jumps(ImputedStatistics(z, y, refset, kind));
}

PValueStepFunction recover_p_function(const ImputedStatistics& stats, Side side,
                                      const JumpSet& jumps) {
  const auto denominator = static_cast<std::int64_t>(stats.size());
  const double base_theta = jumps.jumps.empty() ? 0.0 : jumps.jumps.front().theta - jumps.eps;
  std::vector<std::uint64_t> counts;
  counts.reserve(jumps.jumps.size() + 1);
  auto current = static_cast<std::int64_t>(stats.count(base_theta, side));
  counts.push_back(static_cast<std::uint64_t>(current));
  const int step_sign = side == Side::Greater ? 1 : -1;
  for (const JumpPoint& jp : jumps.jumps) {
    current += step_sign * jp.direction;
    if (current < 0 || current > denominator)
      throw Error(ErrorCode::InternalInconsistency,
                  "recovered p-value left [0, 1] at theta = " + std::to_string(jp.theta));
    counts.push_back(static_cast<std::uint64_t>(current));
  }
  return PValueStepFunction(side, static_cast<std::uint64_t>(denominator), jumps.jumps,
                            std::move(counts), base_theta);
}

PValueStepFunction recover_p_function(AssignmentView z, OutcomeView y,
                                      const ReferenceSet& refset, Statistic kind, Side side,
                                      const JumpSet& jumps) {
  return recover_p_function(ImputedStatistics(z, y, refset, kind), side, jumps);
}

namespace {

// Index k* of the first interval with p_k >= alpha.
std::size_t lower_index(const PValueStepFunction& pfun, double alpha) {
  if (pfun.side() != Side::Greater)
    throw Error(ErrorCode::InvalidInput, "lower bounds squeeze the greater-side p-value");
  validate_alpha(alpha);
  for (std::size_t k = 0; k <= pfun.jump_count(); ++k)
    if (pfun.interval_value(k).value() >= alpha) return k;
  throw Error(ErrorCode::EmptyInterval,
              "p+ stays below alpha = " + std::to_string(alpha) + " everywhere (" +
                  std::to_string(pfun.jump_count()) + " jumps, |Z| = " +
                  std::to_string(pfun.denominator()) + ")");
}

// Index k° of the last interval with p_k >= alpha.
std::size_t upper_index(const PValueStepFunction& pfun, double alpha) {
  if (pfun.side() != Side::Less)
    throw Error(ErrorCode::InvalidInput, "upper bounds squeeze the less-side p-value");
  validate_alpha(alpha);
  for (std::size_t k = pfun.jump_count() + 1; k-- > 0;)
    if (pfun.interval_value(k).value() >= alpha) return k;
  throw Error(ErrorCode::EmptyInterval,
              "p- stays below alpha = " + std::to_string(alpha) + " everywhere (" +
                  std::to_string(pfun.jump_count()) + " jumps, |Z| = " +
                  std::to_string(pfun.denominator()) + ")");
}

}  // namespace

double squeeze_lower(const PValueStepFunction& pfun, double alpha) {
  const std::size_t k = lower_index(pfun, alpha);
  return k == 0 ? -kInf : pfun.jumps()[k - 1].theta;
}

double squeeze_upper(const PValueStepFunction& pfun, double alpha) {
  const std::size_t k = upper_index(pfun, alpha);
  return k == pfun.jump_count() ? kInf : pfun.jumps()[k].theta;
}

ConfidenceInterval confidence_interval(const ImputedStatistics& stats, double alpha,
                                       Alternative alternative) {
  validate_alpha(alpha);
  const JumpSet jumps = collect_jumps(stats);
  ConfidenceInterval ci;
  ci.alpha = alpha;
  ci.alternative = alternative;
  ci.lower = -kInf;
  ci.upper = kInf;
  ci.diagnostics.jump_count = jumps.jumps.size();
  ci.diagnostics.denominator = stats.size();
  const double level = alternative == Alternative::TwoSided ? alpha / 2.0 : alpha;

  if (alternative != Alternative::Less) {
    const auto pfun = recover_p_function(stats, Side::Greater, jumps);
    const std::size_t k = lower_index(pfun, level);
    if (k > 0) {
      ci.lower = pfun.jumps()[k - 1].theta;
      ci.diagnostics.p_below_lower = pfun.interval_value(k - 1);
    }
  }
  if (alternative != Alternative::Greater) {
    const auto pfun = recover_p_function(stats, Side::Less, jumps);
    const std::size_t k = upper_index(pfun, level);
    if (k < pfun.jump_count()) {
      ci.upper = pfun.jumps()[k].theta;
      ci.diagnostics.p_above_upper = pfun.interval_value(k + 1);
    }
  }
  if (ci.lower > ci.upper)
    throw Error(ErrorCode::CrossedBounds, "lower bound " + std::to_string(ci.lower) +
                                              " exceeds upper bound " + std::to_string(ci.upper));
  return ci;
}

ConfidenceInterval confidence_interval(AssignmentView z, OutcomeView y,
                                       const ReferenceSet& refset, Statistic kind,
                                       double alpha, Alternative alternative) {
  return confidence_interval(ImputedStatistics(z, y, refset, kind), alpha, alternative);
}

PValue p_value(AssignmentView z, OutcomeView y, const ReferenceSet& refset, Statistic kind,
               const Hypothesis& hypothesis) {
  validate_inputs(z, y, refset);
  if (!std::isfinite(hypothesis.theta))
    throw Error(ErrorCode::InvalidInput, "theta must be finite");
  const double observed = statistic_value(kind, z, y);
  std::vector<double> imputed(y.size());
  std::uint64_t greater = 0;
  std::uint64_t less = 0;
  for (std::size_t r = 0; r < refset.cardinality(); ++r) {
    const auto z_pi = refset[r];
    for (std::size_t i = 0; i < y.size(); ++i)
      imputed[i] = y[i] + (static_cast<double>(z_pi[i]) - static_cast<double>(z[i])) * hypothesis.theta;
    const int cmp = compare_to_observed(reference_statistic_value(kind, z_pi, imputed), observed);
    greater += cmp >= 0;
    less += cmp <= 0;
  }
  const std::uint64_t d = refset.cardinality();
  switch (hypothesis.alternative) {
    case Alternative::Greater: return {greater, d};
    case Alternative::Less: return {less, d};
    case Alternative::TwoSided: return {std::min(d, 2 * std::min(greater, less)), d};
  }
  return {d, d};
}

}  // namespace rbci
