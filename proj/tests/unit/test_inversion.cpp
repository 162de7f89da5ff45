#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rbci/errors.hpp"
#include "rbci/inversion.hpp"
#include "rbci/oracle.hpp"
#include "test_support.hpp"

using namespace rbci;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Assignment kExamplePi{1, 1, 1, 1, 0, 0, 0, 0};

std::vector<double> imputed(const Assignment& z, AssignmentView z_pi, const std::vector<double>& y,
                            double theta) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + (static_cast<double>(z_pi[i]) - static_cast<double>(z[i])) * theta;
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected rbci::Error";
  return ErrorCode::InternalInconsistency;
}

Assignment complement(const Assignment& z) {
  Assignment c(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) c[i] = 1 - z[i];
  return c;
}

// ---------------------------------------------------------------------------
// Jump solvers

TEST(SolveJumpsDim, IdentityAssignmentNeverJumps) {
  const auto ex = fixtures::example1();
  EXPECT_TRUE(solve_jumps_dim(ex.z, ex.y, ex.z).empty());
}

TEST(SolveJumpsDim, ComplementRootIsTheObservedDifference) {
  const auto ex = fixtures::example1();
  const auto roots = solve_jumps_dim(ex.z, ex.y, complement(ex.z));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0], difference_in_means(ex.z, ex.y), 1e-12);
}

TEST(SolveJumpsDim, RootsSolveTheBasicEquation) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + rng() % 12;
    const auto inst = fixtures::random_instance(rng, n, 1 + rng() % (n - 1));
    const Assignment z_pi = draw_assignment(n, treated_count(inst.z), rng);
    const auto roots = solve_jumps_dim(inst.z, inst.y, z_pi);
    ASSERT_LE(roots.size(), 1u);
    EXPECT_EQ(roots.empty(), z_pi == inst.z);
    for (double r : roots)
      EXPECT_LE(std::abs(difference_in_means(z_pi, imputed(inst.z, z_pi, inst.y, r)) -
                         difference_in_means(inst.z, inst.y)),
                1e-10);
  }
}

TEST(SolveJumpsT, ExampleHasTwoRoots) {
  const auto ex = fixtures::example1();
  const auto roots = solve_jumps_t(ex.z, ex.y, kExamplePi);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], 1.33, 0.005);
  EXPECT_NEAR(roots[1], 2.27, 0.005);
}

TEST(SolveJumpsT, IdentityAssignmentNeverJumps) {
  const auto ex = fixtures::example1();
  EXPECT_TRUE(solve_jumps_t(ex.z, ex.y, ex.z).empty());
}

TEST(SolveJumpsT, RootsSolveTheBasicEquationAndSpuriousOnesAreMirrors) {
  std::mt19937_64 rng(2);
  std::size_t spurious_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 5 + rng() % 10;
    const auto inst = fixtures::random_instance(rng, n, 2 + rng() % (n - 3));
    const Assignment z_pi = draw_assignment(n, treated_count(inst.z), rng);
    const double t_obs = studentized_t(inst.z, inst.y);
    const auto roots = solve_jumps_t(inst.z, inst.y, z_pi);
    ASSERT_LE(roots.size(), 2u);
    for (double r : roots)
      EXPECT_LE(std::abs(studentized_t(z_pi, imputed(inst.z, z_pi, inst.y, r)) - t_obs), 1e-8)
          << "root " << r;

    // textbook roots of the squared equation, for comparison
    const auto c = decompose(inst.z, z_pi, inst.y);
    const double t2 = t_obs * t_obs;
    const double qa = t2 * c.b2 - c.a1 * c.a1, qb = 2 * (t2 * c.b1 - c.a0 * c.a1),
                 qc = t2 * c.b0 - c.a0 * c.a0;
    const double disc = qb * qb - 4 * qa * qc;
    if (z_pi == inst.z || disc <= 0 || std::abs(qa) < 1e-9) continue;
    for (double r : {(-qb - std::sqrt(disc)) / (2 * qa), (-qb + std::sqrt(disc)) / (2 * qa)}) {
      const bool kept = std::any_of(roots.begin(), roots.end(),
                                    [&](double k) { return std::abs(k - r) <= 1e-6 * std::max(1.0, std::abs(r)); });
      if (!kept) {
        ++spurious_seen;
        EXPECT_NEAR(studentized_t(z_pi, imputed(inst.z, z_pi, inst.y, r)), -t_obs, 1e-6);
      }
    }
  }
  EXPECT_GT(spurious_seen, 0u);
}

// ---------------------------------------------------------------------------
// Classification

TEST(ClassifyJump, ExampleDirections) {
  const auto ex = fixtures::example1();
  const auto roots = solve_jumps_t(ex.z, ex.y, kExamplePi);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(classify_jump(ex.z, ex.y, kExamplePi, roots[0], 0.01, Statistic::StudentizedT), 1);
  EXPECT_EQ(classify_jump(ex.z, ex.y, kExamplePi, roots[1], 0.01, Statistic::StudentizedT), -1);
}

TEST(ClassifyJump, EpsilonMustStayBelowHalfTheRootGap) {
  const auto ex = fixtures::example1();
  const auto roots = solve_jumps_t(ex.z, ex.y, kExamplePi);
  EXPECT_EQ(code_of([&] {
              classify_jump(ex.z, ex.y, kExamplePi, roots[0], 0.5, Statistic::StudentizedT);
            }),
            ErrorCode::EpsilonTooLarge);
}

TEST(ClassifyJump, MirroredRootIsNotACrossing) {
  std::mt19937_64 rng(31);
  std::size_t seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = fixtures::random_instance(rng, 8, 4);
    const Assignment z_pi = draw_assignment(8, 4, rng);
    const double t_obs = studentized_t(inst.z, inst.y);
    // solutions of t(theta) = -t_obs solve the same squared equation
    for (double r : t_roots(decompose(inst.z, z_pi, inst.y), -t_obs)) {
      const auto own = solve_jumps_t(inst.z, inst.y, z_pi);
      double gap = 1.0;
      for (double k : own) gap = std::min(gap, std::abs(k - r));
      if (gap < 1e-6) continue;
      ++seen;
      EXPECT_EQ(classify_jump(inst.z, inst.y, z_pi, r, gap / 4, Statistic::StudentizedT), 0);
    }
  }
  EXPECT_GT(seen, 10u);
}

TEST(ClassifyJump, DifferenceInMeansAlwaysCrossesUpward) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 10;
    const auto inst = fixtures::random_instance(rng, n, 1 + rng() % (n - 1));
    const Assignment z_pi = draw_assignment(n, treated_count(inst.z), rng);
    const auto roots = solve_jumps_dim(inst.z, inst.y, z_pi);
    if (roots.empty()) continue;
    EXPECT_GT(decompose(inst.z, z_pi, inst.y, Statistic::DifferenceInMeans).a1, 0.0);
    EXPECT_EQ(classify_jump(inst.z, inst.y, z_pi, roots[0], 1e-6, Statistic::DifferenceInMeans), 1);
  }
}

// ---------------------------------------------------------------------------
// Aggregation and recovery on the worked example

TEST(CollectJumps, ExampleHasUpwardJumpAt061) {
  const auto ex = fixtures::example1();
  const JumpSet js = collect_jumps(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT);
  ASSERT_FALSE(js.jumps.empty());
  EXPECT_TRUE(std::is_sorted(js.jumps.begin(), js.jumps.end(),
                             [](const JumpPoint& a, const JumpPoint& b) { return a.theta < b.theta; }));
  const auto it = std::find_if(js.jumps.begin(), js.jumps.end(),
                               [](const JumpPoint& j) { return std::abs(j.theta - 0.61) < 0.005; });
  ASSERT_NE(it, js.jumps.end());
  EXPECT_EQ(it->direction, 1);
  for (const auto& j : js.jumps) {
    EXPECT_NE(j.direction, 0);
    EXPECT_EQ(j.direction, j.up - j.down);
  }
  EXPECT_GT(js.eps, 0.0);
}

TEST(CollectJumps, ObservedOnlyReferenceSetHasNoJumps) {
  const auto ex = fixtures::example1();
  const ReferenceSet only = sample_cre(8, 4, 1, 0, ex.z);
  EXPECT_TRUE(collect_jumps(ex.z, ex.y, only, Statistic::StudentizedT).jumps.empty());
}

TEST(RecoverPFunction, ExampleStepsFrom3To4Over70At061) {
  const auto ex = fixtures::example1();
  const ImputedStatistics stats(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT);
  const auto pfun = recover_p_function(stats, Side::Greater, collect_jumps(stats));
  std::size_t k = 0;
  while (k < pfun.jump_count() && std::abs(pfun.jumps()[k].theta - 0.61) > 0.005) ++k;
  ASSERT_LT(k, pfun.jump_count());
  EXPECT_EQ(pfun.interval_value(k), (PValue{3, 70}));
  EXPECT_EQ(pfun.interval_value(k + 1), (PValue{4, 70}));
  EXPECT_EQ(pfun.at(pfun.jumps()[k].theta), (PValue{4, 70}));
}

TEST(RecoverPFunction, ObservedOnlyReferenceSetIsConstantOne) {
  const auto ex = fixtures::example1();
  const ReferenceSet only = sample_cre(8, 4, 1, 0, ex.z);
  for (Side side : {Side::Greater, Side::Less}) {
    const auto pfun = recover_p_function(ex.z, ex.y, only, Statistic::StudentizedT, side,
                                         collect_jumps(ex.z, ex.y, only, Statistic::StudentizedT));
    EXPECT_EQ(pfun.jump_count(), 0u);
    EXPECT_EQ(pfun.at(-5.0), (PValue{1, 1}));
    EXPECT_EQ(pfun.at(123.0), (PValue{1, 1}));
  }
}

TEST(PValueStepFunction, ValueAtAJumpCountsTheTie) {
  const PValueStepFunction up(Side::Greater, 10, {{1.0, 1, 1, 0}, {2.0, -2, 0, 2}}, {3, 4, 2}, 0.0);
  EXPECT_EQ(up.at(0.5).count, 3u);
  EXPECT_EQ(up.at(1.0).count, 4u);  // max(3, 4)
  EXPECT_EQ(up.at(1.5).count, 4u);
  EXPECT_EQ(up.at(2.0).count, 4u);  // max(4, 2)
  EXPECT_EQ(up.at(2.5).count, 2u);
  // mixed cluster: +2 up, -1 down; the tie at theta counts every crossing assignment
  const PValueStepFunction mixed(Side::Greater, 10, {{1.0, 1, 2, 1}}, {3, 4}, 0.0);
  EXPECT_EQ(mixed.at(1.0).count, 5u);
  const PValueStepFunction less(Side::Less, 10, {{1.0, 1, 2, 1}}, {7, 6}, 0.0);
  EXPECT_EQ(less.at(1.0).count, 8u);
}

// ---------------------------------------------------------------------------
// Squeezing

TEST(SqueezeLower, ExampleBoundIs061) {
  const auto ex = fixtures::example1();
  const ImputedStatistics stats(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT);
  const auto pfun = recover_p_function(stats, Side::Greater, collect_jumps(stats));
  EXPECT_NEAR(squeeze_lower(pfun, 0.05), 0.61, 0.005);
}

TEST(Squeeze, ConstantOneIsUnbounded) {
  const PValueStepFunction greater(Side::Greater, 5, {}, {5}, 0.0);
  const PValueStepFunction less(Side::Less, 5, {}, {5}, 0.0);
  EXPECT_EQ(squeeze_lower(greater, 0.05), -kInf);
  EXPECT_EQ(squeeze_upper(less, 0.05), kInf);
}

TEST(Squeeze, StopsOnAnExactAlphaPlateau) {
  const PValueStepFunction greater(Side::Greater, 100, {{1.0, 4, 4, 0}, {2.0, -2, 0, 2}}, {1, 5, 3}, 0.0);
  EXPECT_EQ(squeeze_lower(greater, 0.05), 1.0);
  const PValueStepFunction less(Side::Less, 100, {{1.0, 2, 2, 0}, {2.0, 4, 4, 0}}, {3, 5, 1}, 0.0);
  EXPECT_EQ(squeeze_upper(less, 0.05), 2.0);
}

TEST(Squeeze, NonMonotoneFunctionKeepsTheFirstRecovery) {
  // dips below alpha again after the first qualifying interval; the bound stays put
  const PValueStepFunction greater(Side::Greater, 100, {{1.0, 9, 9, 0}, {2.0, -8, 0, 8}, {3.0, 50, 50, 0}},
                                   {1, 10, 2, 52}, 0.0);
  EXPECT_EQ(squeeze_lower(greater, 0.05), 1.0);
}

TEST(Squeeze, EverythingRejectedIsAnError) {
  const PValueStepFunction greater(Side::Greater, 100, {{1.0, 1, 1, 0}}, {1, 2}, 0.0);
  EXPECT_EQ(code_of([&] { squeeze_lower(greater, 0.05); }), ErrorCode::EmptyInterval);
  const PValueStepFunction less(Side::Less, 100, {{1.0, 1, 1, 0}}, {2, 1}, 0.0);
  EXPECT_EQ(code_of([&] { squeeze_upper(less, 0.05); }), ErrorCode::EmptyInterval);
  EXPECT_EQ(code_of([&] { squeeze_upper(greater, 0.05); }), ErrorCode::InvalidInput);
}

TEST(SqueezeUpper, NegatedDataDualityForDifferenceInMeans) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + 2 * (rng() % 3);
    const auto inst = fixtures::random_instance(rng, n, n / 2);
    std::vector<double> neg = inst.y;
    for (auto& v : neg) v = -v;
    const ReferenceSet space = enumerate_cre(n, n / 2);
    const auto lower = confidence_interval(inst.z, inst.y, space, Statistic::DifferenceInMeans, 0.1,
                                           Alternative::Greater);
    const auto upper = confidence_interval(inst.z, neg, space, Statistic::DifferenceInMeans, 0.1,
                                           Alternative::Less);
    EXPECT_NEAR(upper.upper, -lower.lower, 1e-10 * std::max(1.0, std::abs(lower.lower)));
  }
}

// ---------------------------------------------------------------------------
// Confidence intervals and direct p-values

TEST(ConfidenceInterval, ExampleOneSided) {
  const auto ex = fixtures::example1();
  const auto ci = confidence_interval(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT, 0.05,
                                      Alternative::Greater);
  EXPECT_NEAR(ci.lower, 0.61, 0.005);
  EXPECT_EQ(ci.upper, kInf);
  EXPECT_EQ(ci.diagnostics.denominator, 70u);
  ASSERT_TRUE(ci.diagnostics.p_below_lower.has_value());
  EXPECT_EQ(*ci.diagnostics.p_below_lower, (PValue{3, 70}));
  EXPECT_FALSE(ci.diagnostics.p_above_upper.has_value());

  const auto less = confidence_interval(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT, 0.05,
                                        Alternative::Less);
  EXPECT_EQ(less.lower, -kInf);
}

TEST(ConfidenceInterval, RejectsBadAlpha) {
  const auto ex = fixtures::example1();
  for (double alpha : {0.0, 1.0, -0.1, std::nan("")})
    EXPECT_EQ(code_of([&] {
                confidence_interval(ex.z, ex.y, enumerate_cre(8, 4), Statistic::StudentizedT, alpha,
                                    Alternative::TwoSided);
              }),
              ErrorCode::InvalidInput);
}

// When some theta has min(p+, p-) >= alpha/2, the interval must contain the maximiser.
TEST(ConfidenceInterval, LargeAlphaKeepsTheMostPlausibleEffect) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = trial == 0 ? fixtures::example1() : fixtures::random_instance(rng, 8, 4);
    const ReferenceSet space = enumerate_cre(8, 4);
    for (Statistic kind : {Statistic::DifferenceInMeans, Statistic::StudentizedT}) {
      const double alpha = 0.999;
      const ImputedStatistics stats(inst.z, inst.y, space, kind);
      const auto jumps = collect_jumps(stats);
      const auto plus = recover_p_function(stats, Side::Greater, jumps);
      const auto grid = oracle::ProbeGrid::midpoints(plus);
      double best_theta = 0.0;
      double best = -1.0;
      for (double theta : grid.thetas()) {
        const double m = std::min(oracle::oracle_p(inst.z, inst.y, space, kind, theta, Side::Greater).value(),
                                  oracle::oracle_p(inst.z, inst.y, space, kind, theta, Side::Less).value());
        if (m > best) best = m, best_theta = theta;
      }
      try {
        const auto ci = confidence_interval(stats, alpha, Alternative::TwoSided);
        EXPECT_LE(ci.lower, ci.upper);
        if (best >= alpha / 2) EXPECT_TRUE(ci.contains(best_theta));
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInterval);
        EXPECT_LT(best, alpha / 2);
      }
    }
  }
}

TEST(PValue, ObservedAssignmentAlwaysCounts) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = fixtures::random_instance(rng, 10, 5);
    const ReferenceSet refset = sample_cre(10, 5, 30, trial, inst.z);
    for (Alternative alt : {Alternative::Greater, Alternative::Less, Alternative::TwoSided}) {
      const PValue p = p_value(inst.z, inst.y, refset, Statistic::StudentizedT,
                               {std::uniform_real_distribution<double>(-5, 5)(rng), alt});
      EXPECT_GE(p.count, 1u);
      EXPECT_EQ(p.denominator, 30u);
    }
  }
}

TEST(PValue, ExampleTestAtTheTruthRejectsTwoOf70) {
  const auto table = dgp_example1();
  const ReferenceSet space = enumerate_cre(8, 4);
  std::size_t rejections = 0;
  for (std::size_t k = 0; k < space.cardinality(); ++k) {
    const Assignment z(space[k].begin(), space[k].end());
    const PValue p = p_value(z, table.observe(z), space, Statistic::StudentizedT, {1.0, Alternative::TwoSided});
    rejections += p.value() <= 0.05;
  }
  EXPECT_EQ(rejections, 2u);
}

TEST(PValue, RecoveredFunctionMatchesDirectCounts) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = trial % 2 ? 8 : 7;
    const auto inst = fixtures::random_instance(rng, n, n / 2);
    const ReferenceSet space = enumerate_cre(n, n / 2);
    for (Statistic kind : {Statistic::DifferenceInMeans, Statistic::StudentizedT}) {
      const ImputedStatistics stats(inst.z, inst.y, space, kind);
      const auto jumps = collect_jumps(stats);
      const auto plus = recover_p_function(stats, Side::Greater, jumps);
      const auto minus = recover_p_function(stats, Side::Less, jumps);
      std::vector<double> probes = oracle::ProbeGrid::midpoints(plus).thetas();
      for (const auto& j : jumps.jumps) probes.push_back(j.theta);
      for (double theta : probes) {
        ASSERT_EQ(plus.at(theta), p_value(inst.z, inst.y, space, kind, {theta, Alternative::Greater}))
            << "theta " << theta;
        ASSERT_EQ(minus.at(theta), p_value(inst.z, inst.y, space, kind, {theta, Alternative::Less}))
            << "theta " << theta;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Structural properties

TEST(Inversion, JumpHeightsAndMonotoneDifferenceInMeans) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = fixtures::random_instance(rng, 9, 4);
    const ReferenceSet space = enumerate_cre(9, 4);
    const ImputedStatistics dim(inst.z, inst.y, space, Statistic::DifferenceInMeans);
    const auto jumps = collect_jumps(dim);
    for (const auto& j : jumps.jumps) {
      EXPECT_EQ(j.direction, 1);  // every DIM crossing is upward
      EXPECT_LE(std::abs(j.direction), j.up + j.down);
    }
    const auto plus = recover_p_function(dim, Side::Greater, jumps);
    for (std::size_t k = 1; k <= plus.jump_count(); ++k)
      EXPECT_GE(plus.interval_value(k).count, plus.interval_value(k - 1).count);
    // monotone case: the squeezed bound is the unique alpha crossing
    const double alpha = 0.1;
    const double bound = squeeze_lower(plus, alpha);
    for (std::size_t k = 0; k <= plus.jump_count(); ++k) {
      const double left = k == 0 ? -kInf : plus.jumps()[k - 1].theta;
      EXPECT_EQ(plus.interval_value(k).value() >= alpha, left >= bound);
    }
  }
}

TEST(Inversion, RootCountsAreBounded) {
  std::mt19937_64 rng(12);
  const auto inst = fixtures::random_instance(rng, 10, 5);
  const ReferenceSet space = enumerate_cre(10, 5);
  const ImputedStatistics t(inst.z, inst.y, space, Statistic::StudentizedT);
  const ImputedStatistics dim(inst.z, inst.y, space, Statistic::DifferenceInMeans);
  for (std::size_t i = 0; i < space.cardinality(); ++i) {
    EXPECT_LE(t.roots(i).size(), 2u);
    EXPECT_LE(dim.roots(i).size(), 1u);
  }
}

TEST(Inversion, EndpointsAreEquivariant) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> shift(-20, 20), scale(0.1, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = fixtures::random_instance(rng, 10, 5);
    const ReferenceSet space = enumerate_cre(10, 5);
    const double c = shift(rng), s = scale(rng);
    std::vector<double> shifted = inst.y, scaled = inst.y;
    for (auto& v : shifted) v += c;
    for (auto& v : scaled) v *= s;
    for (Statistic kind : {Statistic::DifferenceInMeans, Statistic::StudentizedT}) {
      const auto base = confidence_interval(inst.z, inst.y, space, kind, 0.1, Alternative::TwoSided);
      const auto sh = confidence_interval(inst.z, shifted, space, kind, 0.1, Alternative::TwoSided);
      const auto sc = confidence_interval(inst.z, scaled, space, kind, 0.1, Alternative::TwoSided);
      auto close = [](double a, double b) {
        if (std::isinf(a) || std::isinf(b)) return a == b;
        return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b));
      };
      EXPECT_TRUE(close(sh.lower, base.lower)) << sh.lower << " vs " << base.lower;
      EXPECT_TRUE(close(sh.upper, base.upper)) << sh.upper << " vs " << base.upper;
      EXPECT_TRUE(close(sc.lower, s * base.lower)) << sc.lower << " vs " << s * base.lower;
      EXPECT_TRUE(close(sc.upper, s * base.upper)) << sc.upper << " vs " << s * base.upper;
    }
  }
}

TEST(Inversion, ValidatesInputs) {
  const auto ex = fixtures::example1();
  const ReferenceSet other = enumerate_cre(8, 3);
  EXPECT_EQ(code_of([&] { ImputedStatistics(ex.z, ex.y, other, Statistic::StudentizedT); }),
            ErrorCode::InvalidDesign);
  std::vector<double> bad = ex.y;
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { ImputedStatistics(ex.z, bad, enumerate_cre(8, 4), Statistic::StudentizedT); }),
            ErrorCode::InvalidInput);
  const std::vector<double> flat(8, 1.0);
  EXPECT_EQ(code_of([&] { p_value(ex.z, flat, enumerate_cre(8, 4), Statistic::StudentizedT, {0.0}); }),
            ErrorCode::DegenerateVariance);
}

TEST(Alternative, Parsing) {
  EXPECT_EQ(parse_alternative("two-sided"), Alternative::TwoSided);
  EXPECT_EQ(parse_side("less"), Side::Less);
  EXPECT_THROW(parse_alternative("both"), Error);
}

}  // namespace
