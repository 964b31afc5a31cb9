#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "ycalc/drivers.hpp"
#include "ycalc/errors.hpp"
#include "ycalc/field.hpp"
#include "ycalc/flow.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/yde.hpp"

using namespace ycalc;
using ycalc::test::v1;
using ycalc::test::v2;

namespace {

FieldPtr velocity_field(const Vec& v) { return smooth_field(fn::constant(v, v.size()), fn::linear_time()); }
FieldPtr exponential_field() { return smooth_field(fn::identity(1), fn::linear_time()); }

FlowSolver picard(double tol = 1e-9) {
  FlowSolver s;
  s.kind = FlowSolver::Kind::picard;
  s.options.tol = tol;
  return s;
}

std::vector<Vec> scalar_points() { return {v1(-1.0), v1(-0.5), v1(0.0), v1(0.5), v1(1.0)}; }

FieldPtr sin_fbm_field(const Grid& g) { return product_field(fn::sin(1), sample_fbm(0.8, g, 1, 7)); }

}  // namespace

TEST(Flow, ZeroFieldIsIdentity) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FlowTable t = compute_flow(zero_field(2, 2), {v2(1.0, 2.0), v2(-1.0, 0.0)}, g, {0, 32}, {0, 32, 64}, picard());
  for (const auto& e : t.entries) EXPECT_EQ(e.x_out, t.initial_points[e.point_index]);
}

TEST(Flow, ConstantVelocityTranslates) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const Vec v = v2(0.5, -1.5);
  const FlowTable t = compute_flow(velocity_field(v), {v2(1.0, 2.0)}, g, {0, 16}, {16, 48, 64}, picard());
  ASSERT_FALSE(t.entries.empty());
  for (const auto& e : t.entries) {
    const double dt = g.node(e.t_index) - g.node(e.s_index);
    EXPECT_LT((e.x_out - (t.initial_points[0] + dt * v)).norm(), 1e-12);
  }
}

TEST(Flow, DiagonalEntriesAreExact) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FlowTable t = compute_flow(sin_fbm_field(g), scalar_points(), g, {0, 32}, {0, 32, 64}, picard());
  for (const auto& e : t.entries) {
    if (e.s_index == e.t_index) EXPECT_EQ(e.x_out, t.initial_points[e.point_index]);
  }
}

TEST(Flow, ExponentialFlow) {
  const Grid g = make_uniform_grid(0.0, 1.0, 2048);
  const FlowTable t = compute_flow(exponential_field(), {v1(0.5), v1(2.0)}, g, {0}, {512, 1024, 2048}, picard());
  for (const auto& e : t.entries) {
    const double x = t.initial_points[e.point_index](0);
    EXPECT_NEAR(e.x_out(0), x * std::exp(g.node(e.t_index)), 1e-3);
  }
  EXPECT_EQ(t.table().header.front(), "s");
}

TEST(Flow, BlowUpMarksEntryInvalid) {
  LambdaFieldSpec spec;
  spec.eval = [](double t, const Vec& z) { return v1(t * z(0) * z(0)); };
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  FlowSolver euler;
  euler.kind = FlowSolver::Kind::euler;
  const FlowTable t = compute_flow(lambda_field(spec), {v1(0.1), v1(5.0)}, g, {0}, {256}, euler);
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_TRUE(t.find(0, 256, 0)->valid);
  EXPECT_FALSE(t.find(0, 256, 1)->valid);
}

TEST(GroupProperty, ZeroField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FlowTable t = compute_flow(zero_field(1, 1), scalar_points(), g, {0, 16}, {16, 32, 64}, picard());
  const GroupReport r = group_property_check(t, 1e-12);
  EXPECT_EQ(r.max_defect, 0.0);
  EXPECT_GT(r.triples, 0u);
}

TEST(GroupProperty, ConstantVelocity) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FlowTable t = compute_flow(velocity_field(v2(1.0, 0.25)), {v2(0.0, 0.0), v2(1.0, -1.0)}, g, {0, 16},
                                   {16, 32, 64}, picard());
  EXPECT_TRUE(group_property_check(t, 1e-12).passed);
}

TEST(GroupProperty, SinFbmField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FlowTable t = compute_flow(sin_fbm_field(g), scalar_points(), g, {0, 256}, {0, 256, 512, 768, 1024}, picard());
  const GroupReport r = group_property_check(t, 1e-3);
  EXPECT_TRUE(r.passed) << r.max_defect;
  EXPECT_GT(r.triples, 0u);
}

TEST(InverseFlow, ZeroField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 32);
  const InverseReport r = inverse_flow_check(zero_field(1, 1), v1(0.3), g, 0, 32, picard(), 1e-14);
  EXPECT_EQ(r.error, 0.0);
}

TEST(InverseFlow, ConstantVelocity) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const InverseReport r = inverse_flow_check(velocity_field(v2(1.0, -2.0)), v2(0.3, 0.1), g, 8, 64, picard(), 1e-12);
  EXPECT_TRUE(r.passed) << r.error;
}

TEST(InverseFlow, SinFbmField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  for (const Vec& x : scalar_points()) {
    const InverseReport r = inverse_flow_check(sin_fbm_field(g), x, g, 0, 1024, picard(), 1e-3);
    EXPECT_TRUE(r.passed) << r.error;
  }
}

TEST(Variational, SpaceConstantFieldHasIdentityJacobian) {
  const Grid g = make_uniform_grid(0.0, 1.0, 64);
  const FieldPtr a = product_field(fn::constant(v2(1.0, 2.0), 2), sample_fbm(0.7, g, 1, 1));
  const Path base = picard_solve(*a, v2(0.0, 0.0), g).solution;
  const Path j = variational_solve(*a, base);
  for (std::size_t i = 0; i <= 64; ++i) EXPECT_LT((j.node(i) - flatten(Mat::Identity(2, 2))).norm(), 1e-14);
}

TEST(Variational, ScalarLinearField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FieldPtr a = exponential_field();
  const Path base = picard_solve(*a, v1(0.7), g).solution;
  const Path j = variational_solve(*a, base);
  for (std::size_t i = 0; i <= 1024; i += 64) EXPECT_NEAR(j.node(i, 0), std::exp(g.node(i)), 1e-4);
}

TEST(Variational, MatchesCentralDifferences) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::swirl(), sample_weierstrass(0.8, 9, 1.0, g));
  SolverOptions opt;
  opt.tol = 1e-12;
  const Vec x = v2(0.3, -0.2);
  const Path base = picard_solve(*a, x, g, opt).solution;
  const Mat jac = unflatten(variational_solve(*a, base, opt).back(), 2);
  const double h = 1e-5;
  for (int k = 0; k < 2; ++k) {
    Vec e = Vec::Zero(2);
    e(k) = h;
    const Vec fd = (picard_solve(*a, x + e, g, opt).solution.back() - picard_solve(*a, x - e, g, opt).solution.back()) /
                   (2.0 * h);
    EXPECT_LT((fd - jac.col(k)).norm(), 1e-3);
  }
}

TEST(Variational, AdjointInvertsJacobian) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::swirl(), sample_fbm(0.75, g, 1, 9));
  const Path base = picard_solve(*a, v2(0.5, 0.5), g).solution;
  const Path j = variational_solve(*a, base);
  const Path n = adjoint_solve(*a, base);
  double worst = 0.0;
  for (std::size_t i = 0; i <= 512; ++i) {
    worst = std::max(worst, (unflatten(n.node(i), 2) * unflatten(j.node(i), 2) - Mat::Identity(2, 2)).norm());
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(JacobianDet, DivergenceFreeRotation) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::rotation(1.0), sample_weierstrass(0.8, 9, 1.0, g));
  const JacobianDetReport r = jacobian_det_check(*a, v2(1.0, 0.0), g);
  EXPECT_LE(r.max_relative_gap, 1e-6);
  EXPECT_NEAR(r.min_det, 1.0, 1e-6);
  EXPECT_NEAR(r.max_det, 1.0, 1e-6);
}

TEST(JacobianDet, ScalarExponential) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const JacobianDetReport r = jacobian_det_check(*exponential_field(), v1(1.0), g);
  EXPECT_LE(r.max_relative_gap, 1e-4);
  EXPECT_NEAR(r.det.back()(0), std::exp(1.0), 1e-4);
  EXPECT_NEAR(r.exp_div.back()(0), std::exp(1.0), 1e-4);
}

TEST(JacobianDet, SwirlWeierstrass) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FieldPtr a = product_field(fn::swirl(), sample_weierstrass(0.8, 10, 1.0, g));
  const JacobianDetReport r = jacobian_det_check(*a, v2(0.4, -0.3), g);
  EXPECT_LE(r.max_relative_gap, 1e-3);
  EXPECT_GT(r.min_det, 0.0);
}

TEST(JacobianDet, OrientationPreservedOnCatalogFields) {
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const Path y = sample_fbm(0.75, g, 1, 2);
  for (const FieldPtr& a : {product_field(fn::swirl(), y), product_field(fn::tanh(2), y),
                            product_field(fn::sin(2), y)}) {
    for (const Vec& x : {v2(0.0, 0.0), v2(1.0, -2.0), v2(-0.5, 0.7)}) {
      EXPECT_GT(jacobian_det_check(*a, x, g).min_det, 0.0) << a->describe();
    }
  }
}

TEST(ItoMap, AdditiveDirectionWithTrivialJacobian) {
  const Grid g = make_uniform_grid(0.0, 1.0, 128);
  const FieldPtr a = product_field(fn::constant(v1(1.0), 1), sample_fbm(0.7, g, 1, 3));
  const Path psi = sample_weierstrass(0.8, 8, 1.0, g);
  const FieldPtr b = product_field(fn::constant(v1(1.0), 1), psi);
  const ItoDerivative d = ito_map_derivative(*a, *b, v1(0.2), g);
  for (std::size_t i = 0; i <= 128; ++i) EXPECT_NEAR(d.derivative.node(i, 0), psi.node(i, 0) - psi.node(0, 0), 1e-12);
}

TEST(ItoMap, ScalarExponential) {
  const Grid g = make_uniform_grid(0.0, 1.0, 1024);
  const FieldPtr b = smooth_field(fn::constant(v1(1.0), 1), fn::linear_time());
  const ItoDerivative d = ito_map_derivative(*exponential_field(), *b, v1(1.0), g);
  for (std::size_t i = 0; i <= 1024; i += 64) EXPECT_NEAR(d.derivative.node(i, 0), std::exp(g.node(i)) - 1.0, 1e-4);
  EXPECT_LE(d.inverse_defect, 1e-4);
}

TEST(ItoMap, MatchesFiniteDifferenceInField) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::sin(1), sample_weierstrass(0.8, 9, 1.0, g, 0.2));
  const FieldPtr b = product_field(fn::cos(1), sample_weierstrass(0.8, 9, 1.0, g, 1.7));
  SolverOptions opt;
  opt.tol = 1e-13;
  const double eps = 1e-4;
  const ItoDerivative d = ito_map_derivative(*a, *b, v1(0.5), g, opt);
  const Path x = picard_solve(*a, v1(0.5), g, opt).solution;
  const Path xe = picard_solve(*sum_field({{1.0, a}, {eps, b}}), v1(0.5), g, opt).solution;
  const Mat fd = (xe.values() - x.values()) / eps;
  EXPECT_LT((fd - d.derivative.values()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(ItoMap, RejectsSingularJacobian) {
  // A(t, z) = -20 z t gives J_1 = exp(-20), below the 1e-8 threshold.
  const Grid g = make_uniform_grid(0.0, 1.0, 256);
  const FieldPtr a = smooth_field(fn::scaled(fn::identity(1), -20.0), fn::linear_time());
  const FieldPtr b = smooth_field(fn::constant(v1(1.0), 1), fn::linear_time());
  EXPECT_THROW(ito_map_derivative(*a, *b, v1(1.0), g), DomainError);
}

TEST(LipschitzFlow, RatioStableUnderHalving) {
  const Grid g = make_uniform_grid(0.0, 1.0, 512);
  const FieldPtr a = product_field(fn::sin(1), sample_fbm(0.8, g, 1, 7));
  for (int p = 0; p < 10; ++p) {
    const Vec x = v1(-1.0 + 0.2 * p);
    const Path base = picard_solve(*a, x, g).solution;
    double prev = 0.0;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
      const Path other = picard_solve(*a, x + v1(h), g).solution;
      const double ratio = base.sup_distance(other) / h;
      EXPECT_TRUE(std::isfinite(ratio));
      if (prev > 0.0) {
        EXPECT_LT(ratio / prev, 2.0);
        EXPECT_GT(ratio / prev, 0.5);
      }
      prev = ratio;
    }
  }
}
