#include "ycalc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ycalc/errors.hpp"
#include "ycalc/integral.hpp"
#include "ycalc/parallel.hpp"
#include "ycalc/regression.hpp"

namespace ycalc {
namespace {

SewOptions weight_options(const FlowSolver& solver) {
  SewOptions o;
  o.refine_levels = solver.options.refine_levels;
  o.early_stop = false;
  o.check_cauchy = false;
  return o;
}

void check_rate(const Field& a, const Field& c) {
  require(a.in_dim() == a.out_dim(), "transport: A must map R^d to R^d");
  require(c.in_dim() == a.in_dim() && c.out_dim() == 1, "transport: c must map R^d to R");
}

}  // namespace

double ParticleMeasure::pair(const std::function<double(const Vec&)>& phi) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) acc += weights[i] * phi(positions[i]);
  return acc;
}

Path TransportSolution::characteristic(std::size_t t_index, const Vec& x) const {
  require(t_index >= 1 && t_index <= grid.cells(), "transport: time index out of range");
  const double t = grid.node(t_index);
  const FieldPtr rev = reversed_field(a, t);
  return solve_from(*rev, x, Grid(0.0, t - grid.t0(), t_index), 0, solver);
}

double TransportSolution::value(std::size_t t_index, const Vec& x) const {
  check_rate(*a, *c);
  if (t_index == 0) return u0(x);
  const Path back = characteristic(t_index, x);
  // Forward-time ordering s -> Phi_{s<-t}(x).
  Mat fwd(back.values().rows(), back.values().cols());
  for (Eigen::Index i = 0; i < fwd.cols(); ++i) fwd.col(i) = back.values().col(fwd.cols() - 1 - i);
  const Grid g(grid.t0(), grid.node(t_index), t_index);
  const IntegralResult w = nonlinear_young_integral(*c, Path(g, std::move(fwd)), g, weight_options(solver));
  return u0(back.back()) * std::exp(-w.path.back()(0));
}

CsvTable TransportValues::table(double t, const std::vector<Vec>& points) const {
  CsvTable tab;
  tab.header = {"t"};
  const std::size_t d = points.empty() ? 0 : static_cast<std::size_t>(points[0].size());
  for (std::size_t k = 1; k <= d; ++k) tab.header.push_back("x" + std::to_string(k));
  tab.header.push_back("u");
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double> row{t};
    for (std::size_t k = 0; k < d; ++k) row.push_back(points[i](static_cast<Eigen::Index>(k)));
    row.push_back(values[i]);
    tab.rows.push_back(std::move(row));
  }
  return tab;
}

TransportValues transport_solve(const TransportSolution& u, std::size_t t_index, const std::vector<Vec>& points) {
  check_rate(*u.a, *u.c);
  TransportValues out;
  out.values.assign(points.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<char> ok(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      out.values[i] = u.value(t_index, points[i]);
      ok[i] = 1;
    } catch (const BlowUpError&) {
    } catch (const ConvergenceError&) {
    }
  });
  out.valid.assign(ok.begin(), ok.end());
  return out;
}

ParticleMeasure continuity_solve(FieldPtr a, FieldPtr c, const ParticleMeasure& mu0, const Grid& grid,
                                 std::size_t t_index, const FlowSolver& solver) {
  check_rate(*a, *c);
  require(mu0.positions.size() == mu0.weights.size(), "continuity_solve: positions and weights differ in length");
  require(t_index <= grid.cells(), "continuity_solve: time index out of range");
  ParticleMeasure out = mu0;
  if (t_index == 0) return out;
  const FieldPtr rate = difference_field(divergence_field(a), c);
  parallel_for(mu0.positions.size(), [&](std::size_t i) {
    const Path path = solve_from(*a, mu0.positions[i], grid, 0, solver);
    const IntegralResult w = nonlinear_young_integral(*rate, path, grid, weight_options(solver));
    out.positions[i] = path.node(t_index);
    out.weights[i] = mu0.weights[i] * std::exp(w.path.node(t_index, 0));
  });
  return out;
}

namespace {

struct Lattice {
  std::vector<Vec> points;
  std::size_t m = 0;
  std::size_t d = 0;
  double volume = 0.0;
};

Lattice make_lattice(const TransportSolution& u, const LatticeBox& box) {
  Lattice lat;
  lat.d = static_cast<std::size_t>(box.lo.size());
  require(lat.d >= 1 && lat.d <= 2 && static_cast<std::size_t>(box.hi.size()) == lat.d && u.a->in_dim() == lat.d,
          "weak_residual: the lattice must match the space dimension (d <= 2)");
  require(box.points_per_dim >= 2, "weak_residual: need at least two lattice points per dimension");
  lat.m = box.points_per_dim;
  const std::size_t count = lat.d == 1 ? lat.m : lat.m * lat.m;
  const Vec h = (box.hi - box.lo) / static_cast<double>(lat.m);
  lat.volume = h.prod();
  lat.points.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vec x(static_cast<Eigen::Index>(lat.d));
    x(0) = box.lo(0) + (static_cast<double>(k % lat.m) + 0.5) * h(0);
    if (lat.d == 2) x(1) = box.lo(1) + (static_cast<double>(k / lat.m) + 0.5) * h(1);
    lat.points[k] = x;
  }
  return lat;
}

std::vector<double> lattice_values(const TransportSolution& u, std::size_t t_index, const Lattice& lat) {
  std::vector<double> out(lat.points.size());
  parallel_for(lat.points.size(), [&](std::size_t k) { out[k] = u.value(t_index, lat.points[k]); });
  return out;
}

double residual_on(const TransportSolution& u, const ScalarFunction& phi, std::size_t s_index, std::size_t t_index,
                   const Lattice& lat, const std::vector<double>& us, const std::vector<double>& ut) {
  const double s = u.grid.node(s_index), t = u.grid.node(t_index);
  const FieldPtr div = divergence_field(u.a);
  const std::size_t count = lat.points.size();
  std::vector<double> integrand(count), magnitude(count);
  parallel_for(count, [&](std::size_t k) {
    const Vec& x = lat.points[k];
    const double p = phi.value(x);
    const Vec gp = phi.gradient(x);
    const double drift = u.a->increment(s, t, x).dot(gp);
    const double rate = div->increment(s, t, x)(0) - u.c->increment(s, t, x)(0);
    integrand[k] = (ut[k] - us[k]) * p - us[k] * (drift + rate * p);
    magnitude[k] = (std::abs(us[k]) + std::abs(ut[k])) * (std::abs(p) + gp.norm());
  });
  const std::size_t m = lat.m;
  double interior = 0.0, boundary = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = k % m, j = k / m;
    const bool edge = i == 0 || i == m - 1 || (lat.d == 2 && (j == 0 || j == m - 1));
    interior = std::max(interior, magnitude[k]);
    if (edge) boundary = std::max(boundary, magnitude[k]);
  }
  if (boundary > 1e-6 * interior) {
    throw DomainError("weak_residual: quadrature box too small, the integrand reaches the boundary");
  }
  double acc = 0.0;
  for (double v : integrand) acc += v;
  return std::abs(acc * lat.volume);
}

}  // namespace

double weak_residual(const TransportSolution& u, const ScalarFunction& phi, std::size_t s_index,
                     std::size_t t_index, const LatticeBox& box) {
  require(s_index < t_index && t_index <= u.grid.cells(), "weak_residual: need s < t on the grid");
  const Lattice lat = make_lattice(u, box);
  return residual_on(u, phi, s_index, t_index, lat, lattice_values(u, s_index, lat), lattice_values(u, t_index, lat));
}

WeakResidualFit weak_residual_fit(const TransportSolution& u, const ScalarFunction& phi, const LatticeBox& box,
                                  double min_exponent, std::size_t max_gap) {
  const std::size_t n = u.grid.cells();
  WeakResidualFit fit;
  fit.threshold = min_exponent - 0.15;
  if (max_gap == 0 || max_gap > n) max_gap = n;
  const Lattice lat = make_lattice(u, box);
  std::vector<std::vector<double>> values(n + 1);
  for (std::size_t j = 0; j <= n; ++j) values[j] = lattice_values(u, j, lat);
  for (std::size_t g = 1; g <= max_gap; g *= 2) {
    double worst = 0.0;
    for (std::size_t s = 0; s + g <= n; ++s) {
      worst = std::max(worst, residual_on(u, phi, s, s + g, lat, values[s], values[s + g]));
    }
    fit.gaps.push_back(u.grid.node(g) - u.grid.t0());
    fit.residuals.push_back(worst);
  }
  fit.fitted_slope = loglog_slope(fit.gaps, fit.residuals, 1e-14);
  fit.passed = fit.fitted_slope >= fit.threshold;
  return fit;
}

CsvTable DualityReport::table() const {
  CsvTable t;
  t.header = {"t", "pairing", "drift"};
  for (const auto& r : rows) {
    t.rows.push_back({r.t, r.pairing, std::abs(r.pairing - initial_pairing) / (1.0 + std::abs(initial_pairing))});
  }
  return t;
}

DualityReport duality_check(FieldPtr a, FieldPtr c, const std::function<double(const Vec&)>& u0,
                            const ParticleMeasure& mu0, const Grid& grid, const std::vector<std::size_t>& times,
                            const FlowSolver& solver) {
  check_rate(*a, *c);
  const TransportSolution u{a, c, u0, grid, solver};
  // The dual equation is the transport equation with rate div A - c, whose
  // particle weights exp(int (div A - (div A - c))) reduce to exp(int c).
  const std::size_t np = mu0.positions.size();
  std::vector<Path> paths(np);
  std::vector<Path> weights(np);
  parallel_for(np, [&](std::size_t i) {
    paths[i] = solve_from(*a, mu0.positions[i], grid, 0, solver);
    weights[i] = nonlinear_young_integral(*c, paths[i], grid, weight_options(solver)).path;
  });
  DualityReport rep;
  rep.initial_pairing = mu0.pair(u0);
  for (std::size_t ti : times) {
    require(ti <= grid.cells(), "duality_check: time index out of range");
    std::vector<double> terms(np);
    parallel_for(np, [&](std::size_t i) {
      const double w = mu0.weights[i] * std::exp(weights[i].node(ti, 0));
      terms[i] = w * u.value(ti, paths[i].node(ti));
    });
    double pairing = 0.0;
    for (double v : terms) pairing += v;
    rep.rows.push_back({grid.node(ti), pairing});
    rep.max_drift = std::max(rep.max_drift, std::abs(pairing - rep.initial_pairing) / (1.0 + std::abs(rep.initial_pairing)));
  }
  rep.passed = rep.max_drift <= 1e-3;
  return rep;
}

}  // namespace ycalc
