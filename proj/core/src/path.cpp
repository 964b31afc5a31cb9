#include "ycalc/path.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ycalc/errors.hpp"

namespace ycalc {

Path::Path(Grid grid, Mat values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.cols()) != grid_.size()) {
    throw DomainError("path: value count must equal grid node count");
  }
  if (values_.rows() == 0) throw DomainError("path: dimension must be positive");
}

Path Path::constant(const Grid& grid, const Vec& value) {
  Mat v(value.size(), static_cast<Eigen::Index>(grid.size()));
  v.colwise() = value;
  return Path(grid, std::move(v));
}

Path Path::from_function(const Grid& grid, std::size_t dim,
                         const std::function<Vec(double)>& f) {
  Mat v(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec y = f(grid.node(i));
    if (static_cast<std::size_t>(y.size()) != dim) {
      throw DomainError("path: sampled function has wrong dimension");
    }
    v.col(static_cast<Eigen::Index>(i)) = y;
  }
  return Path(grid, std::move(v));
}

Vec Path::at(double t) const {
  const std::size_t i = grid_.locate(t);
  const double a = grid_.node(i);
  const double b = grid_.node(i + 1);
  double w = (t - a) / (b - a);
  w = std::clamp(w, 0.0, 1.0);
  const auto c = static_cast<Eigen::Index>(i);
  if (w == 0.0) return values_.col(c);
  if (w == 1.0) return values_.col(c + 1);
  return values_.col(c) + w * (values_.col(c + 1) - values_.col(c));
}

double Path::at(double t, std::size_t component) const {
  const std::size_t i = grid_.locate(t);
  const double a = grid_.node(i);
  const double b = grid_.node(i + 1);
  double w = (t - a) / (b - a);
  w = std::clamp(w, 0.0, 1.0);
  const auto r = static_cast<Eigen::Index>(component);
  const auto c = static_cast<Eigen::Index>(i);
  if (w == 0.0) return values_(r, c);
  if (w == 1.0) return values_(r, c + 1);
  return values_(r, c) + w * (values_(r, c + 1) - values_(r, c));
}

Path Path::coarsened(std::size_t stride) const {
  Grid g = grid_.coarsened(stride);
  Mat v(values_.rows(), static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    v.col(static_cast<Eigen::Index>(i)) = values_.col(static_cast<Eigen::Index>(i * stride));
  }
  return Path(g, std::move(v));
}

Path Path::resampled(const Grid& grid) const {
  Mat v(values_.rows(), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = at(grid.node(i));
  return Path(grid, std::move(v));
}

double Path::sup_norm() const {
  return values_.colwise().norm().maxCoeff();
}

double Path::sup_distance(const Path& other) const {
  if (!(other.grid_ == grid_) || other.dim() != dim()) {
    throw DomainError("path: sup_distance requires matching grids and dimensions");
  }
  return (values_ - other.values_).colwise().norm().maxCoeff();
}

namespace {

// Gap set used above kExactHolderNodes: every small gap plus a geometric
// ladder, all start nodes for each gap.
std::vector<std::size_t> subsampled_gaps(std::size_t n) {
  std::vector<std::size_t> gaps;
  for (std::size_t g = 1; g <= 64 && g <= n; ++g) gaps.push_back(g);
  double g = 64.0;
  while (true) {
    g *= 1.05;
    auto gi = static_cast<std::size_t>(g);
    if (gi > n) break;
    if (gi != gaps.back()) gaps.push_back(gi);
  }
  if (gaps.back() != n) gaps.push_back(n);
  return gaps;
}

}  // namespace

HolderEstimate holder_seminorm(const Path& x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("holder_seminorm: exponent must lie in (0, 1]");
  }
  const std::size_t m = x.size();
  if (m < 2) throw DomainError("holder_seminorm: path needs at least two nodes");
  HolderEstimate est;
  est.exponent = alpha;
  est.sup_norm = x.sup_norm();

  const Mat& v = x.values();
  const Grid& g = x.grid();
  const std::size_t n = m - 1;

  // |t_j - t_i|^alpha depends only on the gap on a uniform grid.
  std::vector<double> inv_pow(m, 0.0);
  for (std::size_t k = 1; k < m; ++k) {
    inv_pow[k] = 1.0 / std::pow(g.node(k) - g.node(0), alpha);
  }

  double best = 0.0;
  auto visit = [&](std::size_t i, std::size_t j) {
    const double r = (v.col(static_cast<Eigen::Index>(j)) - v.col(static_cast<Eigen::Index>(i))).norm() *
                     inv_pow[j - i];
    if (r > best) best = r;
  };

  if (m <= kExactHolderNodes) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) visit(i, j);
    }
  } else {
    est.subsampled = true;
    for (std::size_t gap : subsampled_gaps(n)) {
      for (std::size_t i = 0; i + gap < m; ++i) visit(i, i + gap);
    }
  }
  est.seminorm = best;
  return est;
}

}  // namespace ycalc
