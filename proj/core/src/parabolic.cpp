#include "ycalc/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ycalc/errors.hpp"
#include "ycalc/fixed_point.hpp"

namespace ycalc {
namespace {

double phi1(double z) { return z == 0.0 ? 1.0 : -std::expm1(-z) / z; }

}  // namespace

SpectralSystem::SpectralSystem(std::vector<double> eigenvalues) : lambda_(std::move(eigenvalues)) {
  require(!lambda_.empty() && lambda_.size() <= kMaxSpectralModes, "spectral system: need 1 to 256 modes");
  for (double l : lambda_) require(std::isfinite(l) && l >= 0.0, "spectral system: eigenvalues must be >= 0");
}

SpectralSystem SpectralSystem::dirichlet(std::size_t modes) {
  std::vector<double> l(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    const double pk = std::numbers::pi * static_cast<double>(k + 1);
    l[k] = pk * pk;
  }
  return SpectralSystem(std::move(l));
}

Vec SpectralSystem::weighted(const Vec& x, double alpha) const {
  require(static_cast<std::size_t>(x.size()) == modes(), "spectral system: vector has the wrong number of modes");
  Vec out(x.size());
  for (std::size_t k = 0; k < modes(); ++k) {
    const double w = alpha == 0.0 ? 1.0 : (lambda_[k] == 0.0 ? 0.0 : std::pow(lambda_[k], alpha));
    out(static_cast<Eigen::Index>(k)) = w * x(static_cast<Eigen::Index>(k));
  }
  return out;
}

Path SpectralSystem::weighted(const Path& x, double alpha) const {
  Mat v(x.values().rows(), x.values().cols());
  for (std::size_t i = 0; i < x.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = weighted(x.node(i), alpha);
  return Path(x.grid(), std::move(v));
}

double SpectralSystem::norm(const Vec& x, double alpha) const { return weighted(x, alpha).norm(); }

Vec SpectralSystem::semigroup(double t, const Vec& x) const {
  require(static_cast<std::size_t>(x.size()) == modes(), "spectral system: vector has the wrong number of modes");
  Vec out(x.size());
  for (std::size_t k = 0; k < modes(); ++k) {
    out(static_cast<Eigen::Index>(k)) = std::exp(-lambda_[k] * t) * x(static_cast<Eigen::Index>(k));
  }
  return out;
}

double SpectralSystem::smoothing_ratio(double alpha, double t) const {
  require(alpha > 0.0 && t > 0.0, "smoothing_ratio: need alpha > 0 and t > 0");
  const double bound = std::pow(alpha / std::numbers::e, alpha);
  double worst = 0.0;
  for (double l : lambda_) worst = std::max(worst, std::pow(l * t, alpha) * std::exp(-l * t) / bound);
  return worst;
}

CsvTable MildConvolution::norm_table() const {
  CsvTable t;
  t.header = {"t", "norm"};
  for (std::size_t i = 0; i < norm_trace.size(); ++i) t.rows.push_back({xi.grid().node(i), norm_trace[i]});
  return t;
}

MildConvolution mild_convolution(const SpectralSystem& system, const Path& y, double delta_out) {
  require(y.dim() == system.modes(), "mild_convolution: driver dimension must equal the number of modes");
  const Grid& g = y.grid();
  const double h = g.mesh();
  const std::size_t n = g.cells();
  Mat z = Mat::Zero(y.values().rows(), static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k < system.modes(); ++k) {
    const double l = system.eigenvalues()[k];
    const double decay = std::exp(-l * h), weight = phi1(l * h);
    const auto r = static_cast<Eigen::Index>(k);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = static_cast<Eigen::Index>(j);
      z(r, c + 1) = decay * z(r, c) + weight * (y.values()(r, c + 1) - y.values()(r, c));
    }
  }
  MildConvolution out{Path(g, std::move(z)), {}, 0.0};
  for (std::size_t i = 0; i <= n; ++i) {
    out.norm_trace.push_back(system.norm(out.xi.node(i), delta_out));
    out.sup_norm = std::max(out.sup_norm, out.norm_trace.back());
  }
  return out;
}

CsvTable ParabolicReport::table() const {
  CsvTable t;
  t.header = {"t"};
  const Path& x = report.solution;
  for (std::size_t k = 1; k <= x.dim(); ++k) t.header.push_back("x" + std::to_string(k));
  t.header.push_back("norm");
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> row{x.grid().node(i)};
    for (std::size_t k = 0; k < x.dim(); ++k) row.push_back(x.node(i, k));
    row.push_back(norm_trace[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ParabolicReport parabolic_solve(const SpectralSystem& system, const Field& b, const Vec& x0, const Grid& grid,
                                const ParabolicOptions& options) {
  const std::size_t k = system.modes();
  require(b.in_dim() == k && b.out_dim() == k && static_cast<std::size_t>(x0.size()) == k,
          "parabolic_solve: B must map R^K to R^K and x0 must lie in R^K");
  require(options.kappa > 0.0 && options.kappa <= 1.0, "parabolic_solve: kappa must lie in (0, 1]");
  const double h = grid.mesh();
  Vec decay(static_cast<Eigen::Index>(k)), weight(static_cast<Eigen::Index>(k));
  for (std::size_t m = 0; m < k; ++m) {
    decay(static_cast<Eigen::Index>(m)) = std::exp(-system.eigenvalues()[m] * h);
    weight(static_cast<Eigen::Index>(m)) = phi1(system.eigenvalues()[m] * h);
  }
  const StateGerm germ = [&b](double s, double t, const Vec& xs) { return b.increment(s, t, xs); };
  const StepRule step = [&](std::size_t, const Vec& left, const Vec& inc, const Mat&) -> Vec {
    return decay.cwiseProduct(left) + weight.cwiseProduct(inc);
  };
  FixedPointOptions fp;
  fp.tol = options.solver.tol;
  fp.max_iter = options.solver.max_iter;
  fp.refine_levels = options.solver.refine_levels;
  fp.extrapolate = options.solver.extrapolate;
  FixedPointResult res = windowed_fixed_point(germ, x0, grid, fp, step);

  ParabolicReport out;
  out.report.solution = Path(grid, std::move(res.states));
  out.report.iterations = res.iterations;
  out.report.final_residual = res.final_residual;
  out.report.windows = res.windows;
  out.report.alpha_estimate = holder_seminorm(out.report.solution, options.solver.holder_exponent);
  if (res.final_window < grid.cells()) out.report.flags.push_back("windowed:" + std::to_string(res.final_window));
  const Path& x = out.report.solution;
  out.holder_kappa_delta = holder_seminorm(system.weighted(x, options.delta), options.kappa).seminorm;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.norm_trace.push_back(system.norm(x.node(i), options.delta + options.kappa));
    out.sup_norm_delta_kappa = std::max(out.sup_norm_delta_kappa, out.norm_trace.back());
  }
  return out;
}

}  // namespace ycalc
