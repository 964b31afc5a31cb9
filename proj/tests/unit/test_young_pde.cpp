#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "ycalc/drivers.hpp"
#include "ycalc/errors.hpp"
#include "ycalc/field.hpp"
#include "ycalc/flow.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/parabolic.hpp"
#include "ycalc/transport.hpp"
#include "ycalc/yde.hpp"

using namespace ycalc;
using ycalc::test::max_gap;
using ycalc::test::v1;
using ycalc::test::v2;

namespace {

FlowSolver picard(double tol = 1e-10) {
  FlowSolver s;
  s.options.tol = tol;
  return s;
}

FieldPtr scalar_rate(const Path& y) { return product_field(fn::constant(v1(1.0), 2), y); }
FieldPtr zero_rate() { return zero_field(2, 1); }

double bump(const Vec& x) { return std::exp(-0.5 * (x(0) - 0.5) * (x(0) - 0.5) - 0.5 * x(1) * x(1)); }

std::vector<Vec> query_points() { return {v2(0.0, 0.0), v2(0.7, -0.4), v2(-1.2, 0.9), v2(1.5, 1.5)}; }

ParticleMeasure particles(std::size_t count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n01;
  ParticleMeasure mu;
  for (std::size_t i = 0; i < count; ++i) {
    mu.positions.push_back(v2(n01(gen), n01(gen)));
    mu.weights.push_back(1.0 / static_cast<double>(count));
  }
  return mu;
}

Path power_path(const Grid& g, double amplitude, double exponent) {
  return sample_smooth(g, [=](double t) { return amplitude * std::pow(t, exponent); });
}

LatticeBox box(std::size_t points) { return LatticeBox{v2(-4.5, -4.5), v2(4.5, 4.5), points}; }

TimeProfile power_profile(double exponent, double amplitude) {
  return {"power", [=](double t) { return amplitude * std::pow(t, exponent); },
          [=](double t) { return amplitude * exponent * std::pow(t, exponent - 1.0); }};
}

}  // namespace

TEST(Transport, TrivialFieldsKeepInitialDatum) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const TransportSolution u{zero_field(2, 2), zero_rate(), bump, g, picard()};
  const TransportValues v = transport_solve(u, 32, query_points());
  for (std::size_t k = 0; k < query_points().size(); ++k) {
    EXPECT_TRUE(v.valid[k]);
    EXPECT_EQ(v.values[k], bump(query_points()[k]));
  }
}

TEST(Transport, ConstantVelocityTranslatesDatum) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const Vec vel = v2(0.8, -0.3);
  const FieldPtr a = smooth_field(fn::constant(vel, 2), fn::linear_time());
  const TransportSolution u{a, zero_rate(), bump, g, picard()};
  for (std::size_t ti : {8u, 32u}) {
    const TransportValues v = transport_solve(u, ti, query_points());
    for (std::size_t k = 0; k < query_points().size(); ++k) {
      EXPECT_NEAR(v.values[k], bump(query_points()[k] - g.node(ti) * vel), 1e-10);
    }
  }
}

TEST(Transport, UnitRateDampsExponentially) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const FieldPtr c = smooth_field(fn::constant(v1(1.0), 2), fn::linear_time());
  const TransportSolution u{zero_field(2, 2), c, bump, g, picard()};
  const TransportValues v = transport_solve(u, 32, query_points());
  for (std::size_t k = 0; k < query_points().size(); ++k) {
    EXPECT_NEAR(v.values[k], bump(query_points()[k]) * std::exp(-1.0), 1e-6);
  }
  EXPECT_EQ(v.table(1.0, query_points()).header, (std::vector<std::string>{"t", "x1", "x2", "u"}));
}

TEST(Continuity, TrivialFieldsKeepMeasure) {
  const Grid g = make_uniform_grid(0.0, 1.0, 16);
  const ParticleMeasure mu = particles(20, 1);
  const ParticleMeasure nu = continuity_solve(zero_field(2, 2), zero_rate(), mu, g, 16, picard());
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(nu.positions[i], mu.positions[i]);
    EXPECT_EQ(nu.weights[i], mu.weights[i]);
  }
}

TEST(Continuity, DivergenceFreeFieldRotatesParticles) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const FieldPtr a = product_field(fn::rotation(1.0), sample_weierstrass(0.8, 7, 1.0, g));
  const ParticleMeasure mu = particles(20, 2);
  const ParticleMeasure nu = continuity_solve(a, zero_rate(), mu, g, 128, picard());
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(nu.weights[i], mu.weights[i], 1e-14);
    EXPECT_NEAR(nu.positions[i].norm(), mu.positions[i].norm(), 1e-8);
  }
}

TEST(Continuity, ExpandingFieldGrowsWeights) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FieldPtr a = smooth_field(fn::identity(1), fn::linear_time());
  ParticleMeasure mu;
  mu.positions = {v1(-1.0), v1(0.5), v1(2.0)};
  mu.weights = {1.0, 0.5, 2.0};
  const ParticleMeasure nu = continuity_solve(a, zero_field(1, 1), mu, g, 1024, picard());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(nu.weights[i] / mu.weights[i], std::exp(1.0), 1e-4);
    EXPECT_NEAR(nu.positions[i](0), mu.positions[i](0) * std::exp(1.0), 1e-4);
  }
}

TEST(Continuity, PreservesWeightSigns) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = product_field(fn::swirl(), sample_fbm(0.75, g, 1, 3));
  ParticleMeasure mu = particles(10, 4);
  for (std::size_t i = 0; i < 10; i += 2) mu.weights[i] = -mu.weights[i];
  const ParticleMeasure nu = continuity_solve(a, scalar_rate(sample_fbm(0.75, g, 1, 5)), mu, g, 64, picard());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(std::signbit(nu.weights[i]), std::signbit(mu.weights[i]));
}

TEST(WeakResidual, TrivialFieldsVanish) {
  const Grid g = make_uniform_grid(0.0, 1.0, 16);
  const TransportSolution u{zero_field(2, 2), zero_rate(), bump, g, picard()};
  EXPECT_LT(weak_residual(u, fn::gaussian(v2(0.0, 0.0), 0.7), 0, 16, box(24)), 1e-14);
}

TEST(WeakResidual, ConstantVelocityIsSecondOrder) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const FieldPtr a = smooth_field(fn::constant(v2(0.6, -0.4), 2), fn::linear_time());
  const TransportSolution u{a, zero_rate(), bump, g, picard()};
  const WeakResidualFit fit = weak_residual_fit(u, fn::gaussian(v2(0.0, 0.0), 0.7), box(24), 2.0, 16);
  EXPECT_GE(fit.fitted_slope, 1.85);
}

TEST(WeakResidual, RoughRotationExponent) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const FieldPtr a = product_field(fn::rotation(1.0), power_path(g, 0.5, 0.8));
  const TransportSolution u{a, scalar_rate(power_path(g, 0.25, 0.8)), bump, g, picard()};
  const WeakResidualFit fit = weak_residual_fit(u, fn::gaussian(v2(0.0, 0.0), 0.7), box(24), 1.6, 16);
  EXPECT_GE(fit.fitted_slope, 1.45);
  EXPECT_TRUE(fit.passed);
}

TEST(WeakResidual, SmallBoxIsRejected) {
  const Grid g = make_uniform_grid(0.0, 1.0, 8);
  const TransportSolution u{zero_field(2, 2), zero_rate(), bump, g, picard()};
  const LatticeBox tiny{v2(-0.5, -0.5), v2(0.5, 0.5), 16};
  EXPECT_THROW(weak_residual(u, fn::gaussian(v2(0.0, 0.0), 0.7), 0, 8, tiny), DomainError);
}

TEST(Duality, TrivialFieldsConservePairingExactly) {
  const Grid g = make_uniform_grid(0.0, 1.0, 16);
  const DualityReport r = duality_check(zero_field(2, 2), zero_rate(), bump, particles(50, 6), g, {4, 8, 16}, picard());
  EXPECT_EQ(r.max_drift, 0.0);
}

TEST(Duality, ConstantVelocity) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = smooth_field(fn::constant(v2(1.0, 0.5), 2), fn::linear_time());
  const DualityReport r = duality_check(a, zero_rate(), bump, particles(50, 7), g, {16, 32, 48, 64}, picard());
  EXPECT_LE(r.max_drift, 1e-6);
}

TEST(Duality, RotationWithYoungWeight) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const FieldPtr a = product_field(fn::rotation(1.0), sample_weierstrass(0.8, 7, 1.0, g, 0.4));
  const FieldPtr c = scalar_rate(sample_weierstrass(0.8, 7, 1.0, g, 2.3));
  std::vector<std::size_t> times;
  for (std::size_t k = 1; k <= 8; ++k) times.push_back(16 * k);
  const DualityReport r = duality_check(a, c, bump, particles(200, 8), g, times, picard());
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_drift, 1e-3);
  EXPECT_EQ(r.rows.size(), 8u);
}

TEST(Spectral, DirichletEigenvaluesAndLimits) {
  const SpectralSystem s = SpectralSystem::dirichlet(4);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.eigenvalues()[k], std::pow(M_PI * double(k + 1), 2), 1e-12);
  EXPECT_THROW(SpectralSystem::dirichlet(kMaxSpectralModes + 1), DomainError);
  EXPECT_THROW(SpectralSystem(std::vector<double>{1.0, -1.0}), DomainError);
}

TEST(Spectral, FractionalNormsAndSemigroupBound) {
  const SpectralSystem s(std::vector<double>{0.0, 1.0, 4.0});
  const Vec x = (Vec(3) << 2.0, 1.0, 0.5).finished();
  EXPECT_NEAR(s.norm(x, 0.0), x.norm(), 1e-15);
  // A zero eigenvalue contributes only at alpha = 0.
  EXPECT_NEAR(s.norm(x, 0.5), std::sqrt(1.0 + 4.0 * 0.25), 1e-15);
  const Vec sx = s.semigroup(0.5, x);
  EXPECT_NEAR(sx(2), 0.5 * std::exp(-2.0), 1e-15);
  const SpectralSystem d = SpectralSystem::dirichlet(256);
  for (double a : {0.25, 0.5, 1.0}) {
    for (double t : {1e-4, 1e-2, 0.5}) EXPECT_LE(d.smoothing_ratio(a, t), 1.0 + 1e-12);
  }
}

TEST(MildConvolution, ZeroEigenvaluesGiveIncrements) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const Path y = sample_fbm(0.7, g, 3, 2);
  const MildConvolution m = mild_convolution(SpectralSystem(std::vector<double>(3, 0.0)), y, 0.0);
  for (std::size_t i = 0; i <= 64; ++i) EXPECT_EQ(m.xi.node(i), Vec(y.node(i) - y.node(0)));
}

TEST(MildConvolution, UnitEigenvalueLinearDriver) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const MildConvolution m = mild_convolution(SpectralSystem({1.0}), power_path(g, 1.0, 1.0), 0.0);
  for (std::size_t i = 0; i <= 256; ++i) EXPECT_NEAR(m.xi.node(i, 0), 1.0 - std::exp(-g.node(i)), 1e-10);
}

TEST(MildConvolution, ConstantDriverGivesZero) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const MildConvolution m = mild_convolution(SpectralSystem::dirichlet(8), Path::constant(g, Vec::Ones(8)), 0.3);
  EXPECT_EQ(m.sup_norm, 0.0);
}

TEST(MildConvolution, SmoothingConstantStableAcrossDrivers) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const SpectralSystem s = SpectralSystem::dirichlet(64);
  std::vector<double> c;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Path y = sample_fbm(0.75, g, 64, 500 + seed);
    c.push_back(mild_convolution(s, y, 0.3).sup_norm / holder_seminorm(y, 0.6).seminorm);
  }
  double mean = 0.0;
  for (double v : c) mean += v / 10.0;
  for (double v : c) {
    EXPECT_GE(v / mean, 0.5);
    EXPECT_LE(v / mean, 1.5);
  }
}

TEST(Parabolic, ZeroFieldFollowsSemigroup) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const SpectralSystem s = SpectralSystem::dirichlet(5);
  const Vec x0 = Vec::LinSpaced(5, 1.0, 0.2);
  const ParabolicReport r = parabolic_solve(s, *zero_field(5, 5), x0, g);
  for (std::size_t i = 0; i <= 128; i += 16) {
    EXPECT_LT((r.report.solution.node(i) - s.semigroup(g.node(i), x0)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Parabolic, ZeroEigenvalueIsPlainYde) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr b = product_field(fn::sin(1), sample_fbm(0.8, g, 1, 3));
  ParabolicOptions o;
  o.solver.tol = 1e-12;
  const ParabolicReport r = parabolic_solve(SpectralSystem({0.0}), *b, v1(0.5), g, o);
  const SolveReport p = picard_solve(*b, v1(0.5), g, o.solver);
  EXPECT_LT(max_gap(r.report.solution, p.solution), 1e-9);
}

TEST(Parabolic, ScalarLinearClosedForm) {
  const Grid g = make_uniform_grid(0.0, 1.0, 2048);
  // dx = -2 x dt + x d(t^2 / 2), i.e. x' = -2 x + x t.
  const FieldPtr b = smooth_field(fn::identity(1), power_profile(2.0, 0.5));
  const ParabolicReport r = parabolic_solve(SpectralSystem({2.0}), *b, v1(1.0), g);
  double worst = 0.0;
  for (std::size_t i = 0; i <= 2048; ++i) {
    const double t = g.node(i);
    worst = std::max(worst, std::abs(r.report.solution.node(i, 0) - std::exp(-2.0 * t + 0.5 * t * t)));
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(Parabolic, LinearTimeFieldClosedForm) {
  const Grid g = make_uniform_grid(0.0, 1.0, 2048);
  // B(t, x) = x t: dx = -2 x dt + x dt.
  const FieldPtr b = smooth_field(fn::identity(1), fn::linear_time());
  const ParabolicReport r = parabolic_solve(SpectralSystem({2.0}), *b, v1(1.0), g);
  for (std::size_t i = 0; i <= 2048; i += 128) EXPECT_NEAR(r.report.solution.node(i, 0), std::exp(-g.node(i)), 1e-4);
}

TEST(Parabolic, LipschitzInInitialDatum) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const SpectralSystem s = SpectralSystem::dirichlet(4);
  const FieldPtr b = product_field(fn::sin(4), sample_fbm(0.75, g, 1, 9));
  const Vec x0 = Vec::LinSpaced(4, 0.5, -0.5);
  const Vec dir = Vec::Ones(4);
  const Path base = parabolic_solve(s, *b, x0, g).report.solution;
  std::vector<double> gaps;
  for (double eps : {4e-3, 2e-3, 1e-3}) {
    const Path p = parabolic_solve(s, *b, x0 + eps * dir, g).report.solution;
    gaps.push_back(holder_seminorm(Path(g, p.values() - base.values()), 0.5).seminorm);
  }
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    EXPECT_LE(gaps[k - 1] / gaps[k], 2.0 * 1.5);
    EXPECT_GE(gaps[k - 1] / gaps[k], 2.0 / 1.5);
  }
}

TEST(Parabolic, ReportsNormsAndRejectsDimensionMismatch) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const SpectralSystem s = SpectralSystem::dirichlet(3);
  const ParabolicReport r = parabolic_solve(s, *zero_field(3, 3), Vec::Ones(3), g);
  EXPECT_GT(r.sup_norm_delta_kappa, 0.0);
  EXPECT_GT(r.holder_kappa_delta, 0.0);
  EXPECT_EQ(r.norm_trace.size(), 65u);
  EXPECT_THROW(parabolic_solve(s, *zero_field(2, 2), Vec::Ones(2), g), DomainError);
}
