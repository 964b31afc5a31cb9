#include "ycalc/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ycalc/errors.hpp"
#include "ycalc/parallel.hpp"
#include "ycalc/rng.hpp"

namespace ycalc {

namespace detail {

Mat cell_sums(std::size_t dim, std::span<const double> nodes, const CellGerm& germ,
              unsigned level) {
  const std::size_t n = nodes.size() - 1;
  const std::size_t pieces = std::size_t{1} << level;
  Mat out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
  auto one_cell = [&](std::size_t i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    const double h = b - a;
    Vec acc = Vec::Zero(static_cast<Eigen::Index>(dim));
    double s = a;
    for (std::size_t m = 1; m <= pieces; ++m) {
      const double t = (m == pieces) ? b : a + h * (static_cast<double>(m) / static_cast<double>(pieces));
      acc += germ(i, s, t);
      s = t;
    }
    out.col(static_cast<Eigen::Index>(i)) = acc;
  };
  if (n * pieces >= 4096) {
    parallel_for(n, one_cell);
  } else {
    for (std::size_t i = 0; i < n; ++i) one_cell(i);
  }
  return out;
}

namespace {

// Least-squares slope of log delta over the last `window` levels is >= 0.
bool trend_nonnegative(const std::vector<double>& deltas, std::size_t window) {
  if (deltas.size() < window) return false;
  double mean = 0.0;
  for (std::size_t i = deltas.size() - window; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) return false;
    mean += std::log(deltas[i]);
  }
  mean /= static_cast<double>(window);
  double num = 0.0;
  for (std::size_t j = 0; j < window; ++j) {
    const double x = static_cast<double>(j) - 0.5 * static_cast<double>(window - 1);
    num += x * (std::log(deltas[deltas.size() - window + j]) - mean);
  }
  return num >= 0.0;
}

}  // namespace

Mat cumulate(const Mat& cells) {
  Mat out(cells.rows(), cells.cols() + 1);
  out.col(0).setZero();
  for (Eigen::Index i = 0; i < cells.cols(); ++i) out.col(i + 1) = out.col(i) + cells.col(i);
  return out;
}

CellSewing sew_cells(std::size_t dim, std::span<const double> nodes, const CellGerm& germ,
                     const SewOptions& options) {
  require(nodes.size() >= 2, "sew: need at least one cell");
  CellSewing res;
  res.cells = cell_sums(dim, nodes, germ, 0);
  Mat prev_path = cumulate(res.cells);
  for (unsigned level = 1; level <= options.refine_levels; ++level) {
    Mat cells = cell_sums(dim, nodes, germ, level);
    Mat path = cumulate(cells);
    const double delta = (path - prev_path).cwiseAbs().maxCoeff();
    const double mag = path.cwiseAbs().maxCoeff();
    if (!std::isfinite(delta)) {
      throw RegularityError("sew: refinement produced non-finite values", delta);
    }
    res.deltas.push_back(delta);
    res.cells = std::move(cells);
    res.levels_used = level;
    prev_path = std::move(path);
    const bool within = delta <= options.tolerance * (1.0 + mag);
    res.converged = within;
    if (within && options.early_stop) return res;
    if (options.check_cauchy && !within && res.deltas.size() >= 3) {
      const std::size_t k = res.deltas.size();
      const double r1 = res.deltas[k - 1] / res.deltas[k - 2];
      const double r2 = res.deltas[k - 2] / res.deltas[k - 3];
      if ((r1 >= 0.97 && r2 >= 0.97) || trend_nonnegative(res.deltas, 6)) {
        throw RegularityError(
            "sew: refinements are not Cauchy (defect exponent <= 1 on observed scales), last delta " +
                std::to_string(delta),
            delta);
      }
    }
  }
  if (options.refine_levels == 0) res.converged = false;
  return res;
}

}  // namespace detail

SewResult sew(const Germ& gamma, const Grid& grid, unsigned refine_levels) {
  SewOptions opt;
  opt.refine_levels = refine_levels;
  return sew(gamma, grid, opt);
}

SewResult sew(const Germ& gamma, const Grid& grid, const SewOptions& options) {
  require(static_cast<bool>(gamma.eval), "sew: germ has no evaluator");
  const std::vector<double> nodes = grid.nodes();
  detail::CellGerm cg = [&](std::size_t, double s, double t) { return gamma.eval(s, t); };
  detail::CellSewing cs = detail::sew_cells(gamma.dim, nodes, cg, options);
  SewResult out{Path(grid, detail::cumulate(cs.cells)), std::move(cs.cells),
                cs.deltas.empty() ? 0.0 : cs.deltas.back(), cs.levels_used, cs.converged,
                std::move(cs.deltas)};
  return out;
}

double defect_norm(const Germ& gamma, const Grid& grid, double beta) {
  const std::size_t n = grid.cells();
  const std::vector<double> t = grid.nodes();
  double best = 0.0;
  if (n <= kExactDefectCells) {
    // Table of Gamma over all node pairs, row-major in (i, j), j > i.
    std::vector<Vec> table((n + 1) * (n + 1));
    auto idx = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) table[idx(i, j)] = gamma.eval(t[i], t[j]);
    }
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = i + 2; k <= n; ++k) {
        const double scale = 1.0 / std::pow(t[k] - t[i], beta);
        const Vec& gik = table[idx(i, k)];
        for (std::size_t j = i + 1; j < k; ++j) {
          const double d = (gik - table[idx(i, j)] - table[idx(j, k)]).norm() * scale;
          if (d > best) best = d;
        }
      }
    }
    return best;
  }
  NormalStream rng(substream_seed(0x5eed, "defect-triples"));
  std::vector<std::size_t> gaps;
  for (std::size_t g = 2; g <= 32; ++g) gaps.push_back(g);
  for (double g = 32.0 * 1.15; g <= static_cast<double>(n); g *= 1.15) {
    gaps.push_back(static_cast<std::size_t>(g));
  }
  gaps.push_back(n);
  for (std::size_t gap : gaps) {
    for (std::size_t i = 0; i + gap <= n; ++i) {
      const std::size_t k = i + gap;
      const Vec gik = gamma.eval(t[i], t[k]);
      const double scale = 1.0 / std::pow(t[k] - t[i], beta);
      std::size_t js[4] = {i + gap / 2, 0, 0, 0};
      for (int r = 1; r < 4; ++r) {
        js[r] = i + 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(gap - 1));
        js[r] = std::min(js[r], k - 1);
      }
      for (std::size_t j : js) {
        const double d = (gik - gamma.eval(t[i], t[j]) - gamma.eval(t[j], t[k])).norm() * scale;
        if (d > best) best = d;
      }
    }
  }
  return best;
}

double sewing_constant(double beta) {
  require(beta > 1.0, "sewing constant: beta must exceed 1");
  return 1.0 / (1.0 - std::exp2(1.0 - beta));
}

CsvTable SewingBoundReport::table() const {
  CsvTable t;
  t.header = {"s", "t", "lhs", "rhs", "ratio"};
  for (const auto& r : rows) t.rows.push_back({r.s, r.t, r.lhs, r.rhs, r.ratio});
  return t;
}

SewingBoundReport check_sewing_bound(const Germ& gamma, const Grid& grid, double beta,
                                     unsigned refine_levels) {
  SewingBoundReport rep;
  rep.beta = beta;
  rep.constant = sewing_constant(beta);
  rep.defect = defect_norm(gamma, grid, beta);
  SewOptions opt;
  opt.refine_levels = refine_levels;
  const SewResult j = sew(gamma, grid, opt);
  const std::vector<double> t = grid.nodes();
  const Mat& p = j.path.values();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // A ratio equal to one up to rounding (the bound is attained) is accepted.
  const double slack = 1.0 + 64.0 * eps;
  const double roundoff = 4.0 * static_cast<double>(grid.cells() + 16) * eps;
  double gamma_scale = 0.0;
  for (std::size_t b = 1; b < t.size(); ++b) gamma_scale = std::max(gamma_scale, gamma.eval(t[0], t[b]).norm());
  // Defects at rounding level mean the germ is additive.
  if (rep.defect * std::pow(grid.length(), beta) <= roundoff * (1.0 + gamma_scale)) rep.defect = 0.0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      const Vec inc = p.col(static_cast<Eigen::Index>(b)) - p.col(static_cast<Eigen::Index>(a));
      const Vec g = gamma.eval(t[a], t[b]);
      double lhs = (inc - g).norm();
      if (lhs <= roundoff * (1.0 + g.norm() + inc.norm())) lhs = 0.0;
      const double rhs = rep.constant * rep.defect * std::pow(t[b] - t[a], beta);
      double ratio = 0.0;
      if (rhs > 0.0) {
        ratio = lhs / rhs;
      } else if (lhs > 0.0) {
        ratio = std::numeric_limits<double>::infinity();
      }
      SewingBoundRow row{t[a], t[b], lhs, rhs, ratio};
      rep.rows.push_back(row);
      if (ratio > rep.max_ratio) rep.max_ratio = ratio;
      if (ratio > slack && !rep.violation) {
        rep.passed = false;
        rep.violation = row;
      }
    }
  }
  return rep;
}

}  // namespace ycalc
