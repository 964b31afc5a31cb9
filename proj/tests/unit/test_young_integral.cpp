#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"
#include "ycalc/drivers.hpp"
#include "ycalc/errors.hpp"
#include "ycalc/field.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/integral.hpp"

using namespace ycalc;
using ycalc::test::max_gap;
using ycalc::test::v1;

namespace {

FieldPtr time_field() { return smooth_field(fn::constant(v1(1.0), 1), fn::linear_time()); }
FieldPtr time_times_space() { return smooth_field(fn::identity(1), fn::linear_time()); }

Path linear_path(const Grid& g) {
  return sample_smooth(g, [](double t) { return t; });
}

// Five-point Gauss-Legendre rule per cell of the piecewise-linear x, so that
// the oracle integrates exactly the interpolant the sewing sees.
double classical_quadrature(const std::function<double(double)>& f, const Path& x,
                            const std::function<double(double)>& ydot) {
  static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                  0.9061798459386640};
  static const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};
  const Grid& g = x.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double a = g.node(i), b = g.node(i + 1);
    for (int k = 0; k < 5; ++k) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * nodes[k];
      sum += 0.5 * (b - a) * weights[k] * f(x.at(s, 0)) * ydot(s);
    }
  }
  return sum;
}

}  // namespace

TEST(NonlinearIntegral, AdditiveGermIsExact) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const IntegralResult r = nonlinear_young_integral(*time_field(), sample_fbm(0.7, g, 1, 1), g);
  for (std::size_t i = 0; i <= 32; ++i) EXPECT_NEAR(r.path.node(i, 0), g.node(i), 1e-14);
}

TEST(NonlinearIntegral, UnitProductGivesDriverIncrement) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const Path y = sample_fbm(0.7, g, 1, 2);
  const FieldPtr a = product_field(fn::constant(v1(1.0), 1), y);
  const IntegralResult r = nonlinear_young_integral(*a, sample_fbm(0.6, g, 1, 3), g);
  for (std::size_t i = 0; i <= 64; ++i) EXPECT_NEAR(r.path.node(i, 0), y.node(i, 0) - y.node(0, 0), 1e-13);
}

TEST(NonlinearIntegral, LinearProductAlongLinearPath) {
  // The left-point sums carry an error of half the finest mesh.
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr a = product_field(fn::identity(1), linear_path(g));
  const IntegralResult r = nonlinear_young_integral(*a, linear_path(g), g);
  EXPECT_NEAR(r.path.back()(0), 0.5, 1e-6);
}

TEST(NonlinearIntegral, ChenAdditivityAtNodes) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 10, 1.0, g));
  const Path x = sample_weierstrass(0.8, 10, 0.5, g, 1.0);
  const IntegralResult whole = nonlinear_young_integral(*a, x, g);
  // Integrate over [t_32, t_128] on the sub-grid; the result must equal the
  // difference of the whole-interval path at nodes.
  const Grid sub = make_uniform_grid(g.node(32), 1.0, 96);
  Mat vals(1, 97);
  for (std::size_t i = 0; i <= 96; ++i) vals(0, i) = x.node(32 + i, 0);
  const IntegralResult tail = nonlinear_young_integral(*a, Path(sub, vals), sub);
  for (std::size_t i = 0; i <= 96; ++i) {
    EXPECT_NEAR(whole.path.node(32 + i, 0) - whole.path.node(32, 0), tail.path.node(i, 0), 1e-12);
  }
}

TEST(NonlinearIntegral, LinearInField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const Path y = sample_fbm(0.75, g, 1, 4);
  const Path x = sample_weierstrass(0.8, 8, 1.0, g);
  const FieldPtr a1 = product_field(fn::sin(1), y);
  const FieldPtr a2 = product_field(fn::tanh(1), sample_weierstrass(0.7, 8, 1.0, g, 2.0));
  const FieldPtr sum = sum_field({{1.0, a1}, {2.5, a2}});
  const SewOptions opt{10, 0.0, false, false};
  const Path s = nonlinear_young_integral(*sum, x, g, opt).path;
  const Path p1 = nonlinear_young_integral(*a1, x, g, opt).path;
  const Path p2 = nonlinear_young_integral(*a2, x, g, opt).path;
  EXPECT_LT((s.values() - p1.values() - 2.5 * p2.values()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(NonlinearIntegral, MatchesClassicalIntegralForSmoothDriver) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const Path x = sample_weierstrass(0.75, 10, 1.0, g, 0.3);
  const FieldPtr a = smooth_field(fn::sin(1), fn::sine_time(3.0));
  const IntegralResult r = nonlinear_young_integral(*a, x, g, 12);
  const double oracle = classical_quadrature([](double z) { return std::sin(z); }, x,
                                             [](double s) { return 3.0 * std::cos(3.0 * s); });
  EXPECT_LT(std::abs(r.path.back()(0) - oracle), 1e-6 * std::abs(oracle));
}

TEST(NonlinearIntegral, StabilityUnderPathPerturbation) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 10, 1.0, g));
  const Path x = sample_weierstrass(0.8, 10, 1.0, g, 1.0);
  const Path bump = sample_weierstrass(0.8, 10, 1.0, g, 4.0);
  const double base = nonlinear_young_integral(*a, x, g, 10).path.back()(0);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const Path xe(g, x.values() + eps * bump.values() / bump.sup_norm());
    const double change = std::abs(nonlinear_young_integral(*a, xe, g, 10).path.back()(0) - base);
    EXPECT_LT(change, prev);
    prev = change;
  }
}

TEST(NonlinearIntegral, NonYoungPairSignalsRegularityViolation) {
  // alpha + beta * gamma = 0.1 + 0.1 < 1: the Riemann sums do not settle.
  const Grid g = make_uniform_grid(0.0, 1.0, 16);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const FieldPtr a = product_field(fn::identity(1), sample_fbm(0.1, g.refined(12), 1, seed));
    const Path x = sample_fbm(0.1, g.refined(12), 1, seed + 10);
    EXPECT_THROW(nonlinear_young_integral(*a, x, g, SewOptions{12, 1e-12, true, true}), RegularityError);
  }
}

TEST(IntegralDx, SpaceIndependentFieldGivesZero) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const IntegralResult r = young_integral_dx(*time_field(), sample_fbm(0.7, g, 1, 1), g);
  EXPECT_EQ(r.path.values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(IntegralDx, TimeTimesSpaceAlongLinearPath) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const IntegralResult r = young_integral_dx(*time_times_space(), linear_path(g), g);
  EXPECT_NEAR(r.path.back()(0), 0.5, 1e-6);
}

TEST(IntegralDx, ConstantPathGivesZero) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.7, g, 1, 2));
  const IntegralResult r = young_integral_dx(*a, Path::constant(g, v1(0.4)), g);
  EXPECT_EQ(r.path.values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(IntegralBilinear, UnitWeightMatchesNonlinearIntegral) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.75, g, 1, 3));
  const Path x = sample_weierstrass(0.8, 8, 1.0, g);
  const Path one = Path::constant(g, v1(1.0));
  EXPECT_LT(max_gap(young_integral_bilinear(one, *a, x, g, 10).path, nonlinear_young_integral(*a, x, g, 10).path),
            1e-15);
}

TEST(IntegralBilinear, ZeroWeightGivesZero) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.75, g, 1, 3));
  const Path zero = Path::constant(g, v1(0.0));
  EXPECT_EQ(young_integral_bilinear(zero, *a, linear_path(g), g).path.values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(IntegralBilinear, LinearWeightAgainstTime) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const IntegralResult r = young_integral_bilinear(linear_path(g), *time_field(), linear_path(g), g);
  EXPECT_NEAR(r.path.back()(0), 0.5, 1e-6);
}

TEST(IntegralBilinear, RejectsShapeMismatch) {
  const Grid g = make_uniform_grid(0.0, 1.0, 16);
  const Path y3 = sample_fbm(0.7, g, 3, 1);
  const FieldPtr a = product_field(fn::swirl(), sample_fbm(0.7, g, 1, 2));
  EXPECT_THROW(young_integral_bilinear(y3, *a, sample_fbm(0.7, g, 2, 3), g), DomainError);
}

TEST(Remainder, AdditiveFieldHasInfiniteSlope) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const RemainderReport r = remainder_check(*time_field(), sample_fbm(0.7, g, 1, 1), 0.8, 1.0, 0.8, g);
  EXPECT_TRUE(std::isinf(r.fitted_slope));
  EXPECT_TRUE(r.passed);
}

TEST(Remainder, ProductOfWeierstrassPaths) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 10, 1.0, g));
  const Path x = sample_weierstrass(0.8, 10, 1.0, g, 1.3);
  const RemainderReport r = remainder_check(*a, x, 0.8, 1.0, 0.8, g);
  EXPECT_GE(r.fitted_slope, 1.45);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.table().str().substr(0, 21), "s,t,value,bound_or_fi");
}

TEST(Remainder, ConstantPathHasVanishingRemainder) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 10, 1.0, g));
  const RemainderReport r = remainder_check(*a, Path::constant(g, v1(0.7)), 0.8, 1.0, 0.8, g);
  for (const auto& row : r.rows) EXPECT_LT(row.value, 1e-14);
}

TEST(Ito, TimeFieldHasZeroResidual) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const ItoReport r = ito_residual(*time_field(), sample_fbm(0.7, g, 1, 1), g);
  EXPECT_LT(r.sup_residual, 1e-14);
}

TEST(Ito, TimeTimesSpaceAlongLinearPath) {
  // Both integrals carry a left-point error of half the finest mesh.
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const ItoReport r = ito_residual(*time_times_space(), linear_path(g), g, 12);
  EXPECT_LE(r.sup_residual, 1e-6);
}

TEST(Ito, RoughCaseResidualHalvesPerLevel) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr f = product_field(fn::sin(1), sample_fbm(0.8, g, 1, 7));
  const Path x = sample_weierstrass(0.8, 10, 1.0, g, 0.1);
  const ItoReport r = ito_residual(*f, x, g, 4);
  EXPECT_LE(r.sup_residual, 1e-3);
  ASSERT_EQ(r.level_ratios.size(), 4u);
  for (double ratio : r.level_ratios) EXPECT_GE(ratio, 2.0 * (1.0 - 1e-9));
}
