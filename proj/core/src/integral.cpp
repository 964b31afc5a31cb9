#include "ycalc/integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ycalc/errors.hpp"
#include "ycalc/regression.hpp"

namespace ycalc {
namespace {

SewOptions with_levels(unsigned levels) {
  SewOptions opt;
  opt.refine_levels = levels;
  return opt;
}

void check_dims(const Field& a, const Path& x, const char* what) {
  require(x.dim() == a.in_dim(), std::string(what) + ": path dimension " + std::to_string(x.dim()) +
                                     " does not match field input dimension " + std::to_string(a.in_dim()));
}

Germ nonlinear_germ(const Field& a, const Path& x) {
  return {a.out_dim(), [&a, &x](double s, double t) { return a.increment(s, t, x.at(s)); }};
}

Germ dx_germ(const Field& a, const Path& x) {
  return {a.out_dim(), [&a, &x](double s, double t) { return Vec(a.eval(s, x.at(t)) - a.eval(s, x.at(s))); }};
}

constexpr double kTiny = 1e-300;

// Dyadic gaps 1, 2, 4, ... on the base grid.
std::vector<std::size_t> dyadic_gaps(std::size_t n) {
  std::vector<std::size_t> gaps;
  for (std::size_t g = 1; g <= n; g *= 2) gaps.push_back(g);
  return gaps;
}

}  // namespace

IntegralResult nonlinear_young_integral(const Field& a, const Path& x, const Grid& grid, unsigned refine_levels) {
  return nonlinear_young_integral(a, x, grid, with_levels(refine_levels));
}

IntegralResult nonlinear_young_integral(const Field& a, const Path& x, const Grid& grid,
                                        const SewOptions& options) {
  check_dims(a, x, "nonlinear_young_integral");
  return sew(nonlinear_germ(a, x), grid, options);
}

IntegralResult young_integral_dx(const Field& a, const Path& x, const Grid& grid, unsigned refine_levels) {
  return young_integral_dx(a, x, grid, with_levels(refine_levels));
}

IntegralResult young_integral_dx(const Field& a, const Path& x, const Grid& grid, const SewOptions& options) {
  check_dims(a, x, "young_integral_dx");
  return sew(dx_germ(a, x), grid, options);
}

IntegralResult young_integral_bilinear(const Path& y, const Field& a, const Path& x, const Grid& grid,
                                       unsigned refine_levels) {
  return young_integral_bilinear(y, a, x, grid, with_levels(refine_levels));
}

IntegralResult young_integral_bilinear(const Path& y, const Field& a, const Path& x, const Grid& grid,
                                       const SewOptions& options) {
  check_dims(a, x, "young_integral_bilinear");
  const std::size_t m = a.out_dim();
  if (y.dim() == 1) {
    Germ g{m, [&](double s, double t) { return Vec(y.at(s, 0) * a.increment(s, t, x.at(s))); }};
    return sew(g, grid, options);
  }
  require(y.dim() % m == 0, "young_integral_bilinear: dim(y) must be 1 or a multiple of the field's output dimension");
  const std::size_t rows = y.dim() / m;
  Germ g{rows, [&, rows, m](double s, double t) {
           const Vec ys = y.at(s);
           const Mat ym = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
               ys.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m));
           return Vec(ym * a.increment(s, t, x.at(s)));
         }};
  return sew(g, grid, options);
}

CsvTable RemainderReport::table() const {
  CsvTable t;
  t.header = {"s", "t", "value", "bound_or_fit"};
  for (const auto& r : rows) t.rows.push_back({r.s, r.t, r.value, r.bound_or_fit});
  return t;
}

RemainderReport remainder_check(const Field& a, const Path& x, double alpha, double beta, double gamma,
                                const Grid& grid, unsigned refine_levels) {
  require(alpha + beta * gamma > 1.0, "remainder_check: need alpha + beta * gamma > 1");
  check_dims(a, x, "remainder_check");
  RemainderReport rep;
  rep.expected_exponent = alpha + beta * gamma;
  rep.threshold = rep.expected_exponent - 0.15;

  SewOptions opt = with_levels(refine_levels);
  opt.early_stop = false;
  const IntegralResult integral = nonlinear_young_integral(a, x, grid, opt);
  const Mat& p = integral.path.values();
  const std::size_t n = grid.cells();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double scale = 1.0 + p.cwiseAbs().maxCoeff();

  const std::size_t max_fit_gap = std::max<std::size_t>(n / 16, std::min<std::size_t>(n, 8));
  std::vector<double> lens, vals;
  for (std::size_t g : dyadic_gaps(n)) {
    FitRow best{grid.node(0), grid.node(g), 0.0, 0.0};
    for (std::size_t i = 0; i + g <= n; ++i) {
      const double s = grid.node(i), t = grid.node(i + g);
      const Vec j = p.col(static_cast<Eigen::Index>(i + g)) - p.col(static_cast<Eigen::Index>(i));
      const double r = (j - a.increment(s, t, x.at(s))).norm();
      if (r > best.value) best = {s, t, r, 0.0};
    }
    rep.rows.push_back(best);
    // The power law is local: for windows comparable to the horizon the
    // remainder saturates, so the fit stops at n / 16 cells.
    if (g <= max_fit_gap) {
      lens.push_back(best.t - best.s);
      vals.push_back(best.value);
    }
  }
  const double floor = 64.0 * static_cast<double>(n) * eps * scale;
  rep.fitted_slope = loglog_slope(lens, vals, floor);

  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < lens.size(); ++k) {
    if (vals[k] > floor) {
      lx.push_back(std::log(lens[k]));
      ly.push_back(std::log(vals[k]));
    }
  }
  if (lx.size() >= 2) {
    const LineFit fit = fit_line(lx, ly);
    for (auto& r : rep.rows) r.bound_or_fit = std::exp(fit.intercept + fit.slope * std::log(r.t - r.s));
  }
  rep.passed = rep.fitted_slope >= rep.threshold;
  if (!rep.passed) {
    for (std::size_t k = 1; k < rep.rows.size(); ++k) {
      const auto& lo = rep.rows[k - 1];
      const auto& hi = rep.rows[k];
      if (lo.value <= floor || hi.value <= floor) continue;
      const double local = std::log(hi.value / lo.value) / std::log((hi.t - hi.s) / (lo.t - lo.s));
      if (local < rep.threshold) rep.offending.push_back(hi);
    }
  }
  return rep;
}

CsvTable ItoReport::table() const {
  CsvTable t;
  t.header = {"s", "t", "value", "bound_or_fit"};
  for (const auto& r : rows) t.rows.push_back({r.s, r.t, r.value, r.bound_or_fit});
  return t;
}

ItoReport ito_residual(const Field& f, const Path& x, const Grid& grid, unsigned refine_levels) {
  check_dims(f, x, "ito_residual");
  ItoReport rep;
  const std::size_t n = grid.cells();
  Mat boundary(static_cast<Eigen::Index>(f.out_dim()), static_cast<Eigen::Index>(n + 1));
  const Vec f0 = f.eval(grid.t0(), x.at(grid.t0()));
  for (std::size_t i = 0; i <= n; ++i) {
    boundary.col(static_cast<Eigen::Index>(i)) = f.eval(grid.node(i), x.at(grid.node(i))) - f0;
  }
  const Germ g1 = nonlinear_germ(f, x);
  const Germ g2 = dx_germ(f, x);
  for (unsigned level = 0; level <= refine_levels; ++level) {
    SewOptions opt = with_levels(level);
    opt.early_stop = false;
    opt.check_cauchy = false;
    const SewResult i1 = sew(g1, grid, opt);
    const SewResult i2 = sew(g2, grid, opt);
    Mat r = boundary - i1.path.values() - i2.path.values();
    rep.level_sups.push_back(r.cwiseAbs().maxCoeff());
    if (level == refine_levels) rep.residual = std::move(r);
  }
  rep.sup_residual = rep.level_sups.back();
  for (std::size_t l = 1; l < rep.level_sups.size(); ++l) {
    const double hi = rep.level_sups[l];
    rep.level_ratios.push_back(hi > kTiny ? rep.level_sups[l - 1] / hi : std::numeric_limits<double>::infinity());
  }
  std::vector<double> lens, vals;
  for (std::size_t g : dyadic_gaps(n)) {
    FitRow best{grid.node(0), grid.node(g), 0.0, 0.0};
    for (std::size_t i = 0; i + g <= n; i += g) {
      const double v = (rep.residual.col(static_cast<Eigen::Index>(i + g)) -
                        rep.residual.col(static_cast<Eigen::Index>(i)))
                           .norm();
      if (v > best.value) best = {grid.node(i), grid.node(i + g), v, 0.0};
    }
    rep.rows.push_back(best);
    lens.push_back(best.t - best.s);
    vals.push_back(best.value);
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = 64.0 * static_cast<double>(n) * eps * (1.0 + boundary.cwiseAbs().maxCoeff());
  rep.fitted_slope = loglog_slope(lens, vals, floor);
  for (auto& r : rep.rows) r.bound_or_fit = rep.fitted_slope;
  return rep;
}

}  // namespace ycalc
