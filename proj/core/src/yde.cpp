#include "ycalc/yde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ycalc/errors.hpp"
#include "ycalc/field_norms.hpp"
#include "ycalc/integral.hpp"
#include "ycalc/parallel.hpp"
#include "ycalc/regression.hpp"
#include "ycalc/rng.hpp"

namespace ycalc {
namespace {

void check_start(const Field& a, const Vec& x0, const char* what) {
  require(static_cast<std::size_t>(x0.size()) == a.in_dim() && a.in_dim() == a.out_dim(),
          std::string(what) + ": need a field R^d -> R^d and x0 in R^d");
}

StateGerm field_germ(const Field& a) {
  return [&a](double s, double t, const Vec& xs) { return a.increment(s, t, xs); };
}

FixedPointOptions fp_options(const SolverOptions& o) {
  FixedPointOptions f;
  f.tol = o.tol;
  f.max_iter = o.max_iter;
  f.refine_levels = o.refine_levels;
  f.extrapolate = o.extrapolate;
  return f;
}

SolveReport from_fixed_point(const Grid& grid, FixedPointResult fp, const SolverOptions& o) {
  SolveReport rep{Path(grid, std::move(fp.states)), fp.iterations, fp.final_residual, {}, fp.windows, {}};
  rep.alpha_estimate = holder_seminorm(rep.solution, o.holder_exponent);
  if (fp.final_window < grid.cells()) {
    rep.flags.push_back("windowed:" + std::to_string(fp.final_window));
  }
  return rep;
}

}  // namespace

SolveReport euler_solve(const Field& a, const Vec& x0, const Grid& grid, const SolverOptions& options) {
  check_start(a, x0, "euler_solve");
  const std::size_t n = grid.cells();
  Mat x(x0.size(), static_cast<Eigen::Index>(n + 1));
  x.col(0) = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = grid.node(k), t = grid.node(k + 1);
    const Vec next = x.col(static_cast<Eigen::Index>(k)) + a.increment(s, t, x.col(static_cast<Eigen::Index>(k)));
    if (is_blown_up(next)) {
      throw BlowUpError("euler_solve: state left |x| <= 1e12 at step " + std::to_string(k + 1), k + 1, t);
    }
    x.col(static_cast<Eigen::Index>(k + 1)) = next;
  }
  SolveReport rep{Path(grid, std::move(x)), n, 0.0, {}, 1, {}};
  SewOptions sew_opt;
  sew_opt.refine_levels = options.residual_levels;
  sew_opt.early_stop = false;
  sew_opt.check_cauchy = false;
  const IntegralResult integral = nonlinear_young_integral(a, rep.solution, grid, sew_opt);
  for (std::size_t i = 0; i <= n; ++i) {
    const double r = (rep.solution.node(i) - x0 - integral.path.node(i)).norm();
    rep.final_residual = std::max(rep.final_residual, r);
  }
  rep.alpha_estimate = holder_seminorm(rep.solution, options.holder_exponent);
  return rep;
}

SolveReport euler_solve(const Field& a, const Vec& x0, std::size_t n, double horizon, const SolverOptions& options) {
  return euler_solve(a, x0, Grid(0.0, horizon, n), options);
}

SolveReport picard_solve(const Field& a, const Vec& x0, const Grid& grid, const SolverOptions& options) {
  check_start(a, x0, "picard_solve");
  return from_fixed_point(grid, windowed_fixed_point(field_germ(a), x0, grid, fp_options(options)), options);
}

SolveReport solve_mixed(const Field& a, const Drift& f, const Vec& x0, const Grid& grid,
                        const SolverOptions& options) {
  check_start(a, x0, "solve_mixed");
  require(static_cast<bool>(f), "solve_mixed: drift is required");
  const StepRule step = [&](std::size_t j, const Vec& left, const Vec& inc, const Mat& prev) -> Vec {
    const double s = grid.node(j), t = grid.node(j + 1);
    const Vec drift = 0.5 * (t - s) *
                      (f(s, prev.col(static_cast<Eigen::Index>(j))) + f(t, prev.col(static_cast<Eigen::Index>(j + 1))));
    return (left + inc) + drift;
  };
  return from_fixed_point(grid, windowed_fixed_point(field_germ(a), x0, grid, fp_options(options), step), options);
}

namespace {

// w[k] = [(k+1)^delta - k^delta] h^{delta-1} / delta: the weight of cell i at
// node j = i + 1 + k on a uniform grid.
std::vector<double> fractional_weights(std::size_t n, double h, double delta) {
  std::vector<double> w(n);
  const double scale = std::pow(h, delta - 1.0) / delta;
  for (std::size_t k = 0; k < n; ++k) {
    if (delta == 1.0) {
      w[k] = 1.0;
    } else {
      w[k] = (std::pow(static_cast<double>(k + 1), delta) - std::pow(static_cast<double>(k), delta)) * scale;
    }
  }
  return w;
}

Mat apply_weights(const Mat& cells, const std::vector<double>& w) {
  const Eigen::Index n = cells.cols();
  Mat out = Mat::Zero(cells.rows(), n + 1);
  for (Eigen::Index j = 1; j <= n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) out.col(j) += w[static_cast<std::size_t>(j - 1 - i)] * cells.col(i);
  }
  return out;
}

}  // namespace

Path xi_fractional(const Path& f, double delta) {
  require(delta > 0.0 && delta <= 1.0, "xi_fractional: delta must lie in (0, 1]");
  const Grid& g = f.grid();
  const Mat& v = f.values();
  const Mat cells = v.rightCols(v.cols() - 1) - v.leftCols(v.cols() - 1);
  return Path(g, apply_weights(cells, fractional_weights(g.cells(), g.mesh(), delta)));
}

SolveReport solve_fractional(const Field& a, const Vec& x0, double delta, const Grid& grid,
                             const SolverOptions& options, std::optional<FractionalCoefficients> coefficients) {
  check_start(a, x0, "solve_fractional");
  require(delta > 0.0 && delta <= 1.0, "solve_fractional: delta must lie in (0, 1]");
  require(options.tol > 0.0, "solve_fractional: tol must be positive");
  if (coefficients) {
    const double al = coefficients->alpha, be = coefficients->beta;
    require(al + delta - 1.0 > (1.0 - al) / be,
            "solve_fractional: exponents violate alpha + delta - 1 > (1 - alpha) / beta");
  }
  const std::size_t n = grid.cells();
  const std::vector<double> t = grid.nodes();
  const std::vector<double> w = fractional_weights(n, grid.mesh(), delta);
  const StateGerm germ = field_germ(a);
  Mat x = x0.replicate(1, static_cast<Eigen::Index>(n + 1));
  Mat cells(x0.size(), static_cast<Eigen::Index>(n));
  double update = std::numeric_limits<double>::infinity();
  unsigned it = 0;
  while (it < options.max_iter) {
    ++it;
    for (std::size_t i = 0; i < n; ++i) {
      cells.col(static_cast<Eigen::Index>(i)) =
          cell_increment(germ, t[i], t[i + 1], x.col(static_cast<Eigen::Index>(i)),
                         x.col(static_cast<Eigen::Index>(i + 1)), options.refine_levels,
                         options.extrapolate);
    }
    Mat next = apply_weights(cells, w);
    next.colwise() += x0;
    for (Eigen::Index j = 0; j < next.cols(); ++j) {
      if (is_blown_up(next.col(j))) {
        throw BlowUpError("solve_fractional: iterate left |x| <= 1e12 at node " + std::to_string(j),
                          static_cast<std::size_t>(j), t[static_cast<std::size_t>(j)]);
      }
    }
    update = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (update < options.tol) break;
  }
  if (!(update < options.tol)) {
    throw ConvergenceError("solve_fractional: no convergence within " + std::to_string(options.max_iter) +
                           " iterations, last update " + std::to_string(update));
  }
  SolveReport rep{Path(grid, std::move(x)), it, update, {}, 1, {}};
  rep.alpha_estimate = holder_seminorm(rep.solution, options.holder_exponent);
  return rep;
}

CsvTable RateTable::table() const {
  CsvTable t;
  t.header = {"n", "error", "log2n", "log2err"};
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    const double n = static_cast<double>(n_values[k]);
    t.rows.push_back({n, errors[k], std::log2(n), std::log2(errors[k])});
  }
  return t;
}

RateTable euler_rate_experiment(const Field& a, const Vec& x0, double t0, double t1,
                                const std::vector<std::size_t>& n_list, RateReference reference,
                                const SolverOptions& options) {
  require(n_list.size() >= 4, "euler_rate_experiment: need at least four step counts");
  for (std::size_t n : n_list) {
    require(n > 0 && (n & (n - 1)) == 0, "euler_rate_experiment: step counts must be powers of two");
  }
  const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
  RateTable table;
  table.reference = reference;
  table.n_values = n_list;
  Path ref = Path::constant(Grid(t0, t1, 1), x0);
  try {
    if (reference == RateReference::picard) {
      ref = picard_solve(a, x0, Grid(t0, t1, n_max), options).solution;
    } else {
      ref = euler_solve(a, x0, Grid(t0, t1, 4 * n_max), options).solution;
    }
  } catch (const Error& e) {
    throw ConvergenceError(std::string("euler_rate_experiment: reference failed to converge: ") + e.what());
  }
  table.errors.assign(n_list.size(), 0.0);
  parallel_for(n_list.size(), [&](std::size_t k) {
    const std::size_t n = n_list[k];
    SolverOptions o = options;
    o.residual_levels = 0;
    const Path x = euler_solve(a, x0, Grid(t0, t1, n), o).solution;
    const std::size_t stride = ref.grid().cells() / n;
    double err = 0.0;
    for (std::size_t i = 0; i <= n; ++i) err = std::max(err, (x.node(i) - ref.node(i * stride)).norm());
    table.errors[k] = err;
  });
  std::vector<double> ns;
  for (std::size_t n : n_list) ns.push_back(static_cast<double>(n));
  const double slope = loglog_slope(ns, table.errors, 0.0);
  table.fitted_slope = std::isinf(slope) ? slope : -slope;
  return table;
}

AprioriReport apriori_check(const Path& solution, const Field& a, double alpha, double beta,
                            std::size_t space_samples, std::uint64_t seed) {
  AprioriReport rep;
  rep.holder_seminorm = holder_seminorm(solution, alpha).seminorm;
  Grid g = solution.grid();
  while (g.cells() > 256 && g.cells() % 2 == 0) g = g.coarsened(2);
  const double radius = std::max(solution.sup_norm(), 1e-3);
  rep.field_norm = estimate_field_norms(a, g, alpha, beta, radius, space_samples, seed).norm_ab;
  rep.ratio = rep.holder_seminorm / (1.0 + rep.field_norm * rep.field_norm);
  return rep;
}

ComparisonReport comparison_experiment(const Field& a1, const Field& a2, const Vec& x01, const Vec& x02,
                                       const Grid& grid, const ComparisonOptions& options) {
  ComparisonReport rep;
  const SolveReport base = picard_solve(a1, x01, grid, options.solver);
  const double radius = std::max({1.0, base.solution.sup_norm(), x02.norm()}) + 1.0;
  Grid g = grid;
  while (g.cells() > 256 && g.cells() % 2 == 0) g = g.coarsened(2);
  const FieldPtr diff = difference_field(std::shared_ptr<const Field>(&a1, [](const Field*) {}),
                                         std::shared_ptr<const Field>(&a2, [](const Field*) {}));
  rep.field_gap =
      estimate_field_norms(*diff, g, options.alpha, options.beta, radius, options.space_samples, options.seed).norm_ab;
  for (double scale : {1.0, 0.5, 0.25, 0.125}) {
    const Vec start = x01 + scale * (x02 - x01);
    const SolveReport other = picard_solve(a2, start, grid, options.solver);
    ComparisonRow row;
    row.scale = scale;
    row.initial_gap = (start - x01).norm();
    row.distance = base.solution.sup_distance(other.solution);
    const double denom = row.initial_gap + rep.field_gap;
    row.ratio = denom > 0.0 ? row.distance / denom : 0.0;
    rep.rows.push_back(row);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rep.rows) {
    if (r.ratio > 0.0) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
  }
  rep.stable = hi == 0.0 || hi <= 2.0 * lo;
  return rep;
}

FirstIntegralReport check_first_integral(const ScalarFunction& f, const Path& solution, const Field& a,
                                         std::size_t space_samples, std::uint64_t seed) {
  require(static_cast<bool>(f.value) && static_cast<bool>(f.gradient),
          "check_first_integral: F needs a value and a gradient");
  FirstIntegralReport rep;
  const double f0 = f.value(solution.front());
  for (std::size_t i = 0; i < solution.size(); ++i) {
    rep.drift = std::max(rep.drift, std::abs(f.value(solution.node(i)) - f0));
  }
  const Grid& grid = solution.grid();
  const std::size_t n = grid.cells();
  std::vector<Vec> points;
  const std::size_t stride = std::max<std::size_t>(1, solution.size() / 64);
  for (std::size_t i = 0; i < solution.size(); i += stride) points.push_back(solution.node(i));
  NormalStream rng(substream_seed(seed, "first-integral-points"));
  const double radius = 1.0 + solution.sup_norm();
  for (std::size_t k = 0; k < space_samples; ++k) {
    Vec z(static_cast<Eigen::Index>(solution.dim()));
    for (Eigen::Index c = 0; c < z.size(); ++c) z(c) = radius * (2.0 * rng.uniform() - 1.0);
    points.push_back(z);
  }
  for (std::size_t g = 1; g <= n; g *= 2) {
    const std::size_t step = std::max<std::size_t>(g, n / 16);
    for (std::size_t i = 0; i + g <= n; i += step) {
      const double s = grid.node(i), t = grid.node(i + g);
      for (const Vec& z : points) {
        rep.hypothesis_residual = std::max(rep.hypothesis_residual, std::abs(f.gradient(z).dot(a.increment(s, t, z))));
      }
    }
  }
  return rep;
}

}  // namespace ycalc
