#include "rbci/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbci/errors.hpp"

namespace rbci::oracle {

namespace {

struct ArmSummary {
  double mean = 0.0;
  double var = 0.0;  // unbiased; 0 for a single unit
  std::size_t size = 0;
};

ArmSummary summarize(const std::vector<double>& values) {
  ArmSummary s;
  s.size = values.size();
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(s.size);
  if (s.size > 1) {
    for (double v : values) s.var += (v - s.mean) * (v - s.mean);
    s.var /= static_cast<double>(s.size - 1);
  }
  return s;
}

double evaluate(Statistic kind, AssignmentView z, const std::vector<double>& outcome) {
  std::vector<double> treated;
  std::vector<double> control;
  for (std::size_t i = 0; i < z.size(); ++i) (z[i] == 1 ? treated : control).push_back(outcome[i]);
  if (treated.empty() || control.empty())
    throw Error(ErrorCode::InvalidDesign, "oracle: empty arm");
  const ArmSummary t = summarize(treated);
  const ArmSummary c = summarize(control);
  const double diff = t.mean - c.mean;
  if (kind == Statistic::DifferenceInMeans) return diff;
  if (t.size < 2 || c.size < 2) throw Error(ErrorCode::InvalidDesign, "oracle: arm below 2 units");
  const double se2 = t.var / static_cast<double>(t.size) + c.var / static_cast<double>(c.size);
  if (se2 <= 1e-30) {
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / std::sqrt(se2);
}

// -1, 0, +1 with the library-wide tie rule (relative 1e-10), restated here.
int order(double value, double observed) {
  if (value == observed) return 0;
  const double tol = 1e-10 * std::max(std::fabs(value), std::fabs(observed));
  if (std::isfinite(tol) && std::fabs(value - observed) <= tol) return 0;
  return value < observed ? -1 : 1;
}

}  // namespace

ProbeGrid::ProbeGrid(std::vector<double> thetas, ProbeProvenance provenance)
    : thetas_(std::move(thetas)), provenance_(provenance) {
  for (std::size_t i = 0; i < thetas_.size(); ++i) {
    if (!std::isfinite(thetas_[i])) throw Error(ErrorCode::InvalidInput, "probe grid must be finite");
    if (i > 0 && !(thetas_[i - 1] < thetas_[i]))
      throw Error(ErrorCode::InvalidInput, "probe grid must be strictly increasing");
  }
}

ProbeGrid ProbeGrid::midpoints(const PValueStepFunction& pfun) {
  const auto& jumps = pfun.jumps();
  if (jumps.empty()) return ProbeGrid({0.0}, ProbeProvenance::Midpoints);
  const double span = std::max(1.0, jumps.back().theta - jumps.front().theta);
  std::vector<double> t;
  t.reserve(jumps.size() + 1);
  t.push_back(jumps.front().theta - span);
  for (std::size_t k = 1; k < jumps.size(); ++k)
    t.push_back(0.5 * (jumps[k - 1].theta + jumps[k].theta));
  t.push_back(jumps.back().theta + span);
  return ProbeGrid(std::move(t), ProbeProvenance::Midpoints);
}

ProbeGrid ProbeGrid::jump_points(const PValueStepFunction& pfun) {
  std::vector<double> t;
  for (const auto& j : pfun.jumps()) t.push_back(j.theta);
  return ProbeGrid(std::move(t), ProbeProvenance::JumpPoints);
}

ProbeGrid ProbeGrid::uniform(double lo, double hi, std::size_t count) {
  if (count == 0 || !(lo < hi || count == 1))
    throw Error(ErrorCode::InvalidInput, "uniform grid needs lo < hi and a positive count");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return ProbeGrid(std::move(t), ProbeProvenance::Uniform);
}

PValue oracle_p(AssignmentView z, OutcomeView y, const ReferenceSet& refset, Statistic kind,
                double theta, Side side) {
  const std::vector<double> observed_y(y.begin(), y.end());
  const double observed = evaluate(kind, z, observed_y);
  std::vector<double> imputed(y.size());
  std::uint64_t hits = 0;
  for (std::size_t r = 0; r < refset.cardinality(); ++r) {
    const auto z_pi = refset[r];
    for (std::size_t i = 0; i < y.size(); ++i) {
      // outcome unit i would show under z_pi if every effect were theta
      if (z_pi[i] == z[i])
        imputed[i] = y[i];
      else if (z_pi[i] == 1)
        imputed[i] = y[i] + theta;
      else
        imputed[i] = y[i] - theta;
    }
    const int cmp = order(evaluate(kind, z_pi, imputed), observed);
    hits += side == Side::Greater ? cmp >= 0 : cmp <= 0;
  }
  return {hits, refset.cardinality()};
}

std::vector<PValue> oracle_sweep(AssignmentView z, OutcomeView y, const ReferenceSet& refset,
                                 Statistic kind, const ProbeGrid& grid, Side side) {
  if (grid.size() == 0) throw Error(ErrorCode::InvalidInput, "empty probe grid");
  std::vector<PValue> out;
  out.reserve(grid.size());
  for (double theta : grid.thetas()) out.push_back(oracle_p(z, y, refset, kind, theta, side));
  return out;
}

}  // namespace rbci::oracle
