#pragma once

#include <cstddef>
#include <functional>

#include "ycalc/grid.hpp"
#include "ycalc/types.hpp"

namespace ycalc {

/// A d-dimensional path sampled on a Grid and linearly interpolated between
/// nodes. Values are stored column-wise: column i is the value at node i.
class Path {
 public:
  /// Scalar zero path on [0, 1] with one cell.
  Path() : Path(Grid(0.0, 1.0, 1), Mat::Zero(1, 2)) {}
  Path(Grid grid, Mat values);
  /// Constant path equal to `value` at every node.
  static Path constant(const Grid& grid, const Vec& value);
  /// Sample f(t) at every node.
  static Path from_function(const Grid& grid, std::size_t dim,
                            const std::function<Vec(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const Mat& values() const noexcept { return values_; }

  Vec node(std::size_t i) const { return values_.col(static_cast<Eigen::Index>(i)); }
  double node(std::size_t i, std::size_t component) const {
    return values_(static_cast<Eigen::Index>(component), static_cast<Eigen::Index>(i));
  }
  Vec front() const { return node(0); }
  Vec back() const { return node(size() - 1); }

  /// Linear interpolant at time t (clamped to the grid interval).
  Vec at(double t) const;
  /// Scalar fast path for one component.
  double at(double t, std::size_t component) const;
  /// x_t - x_s.
  Vec increment(double s, double t) const { return at(t) - at(s); }

  /// Restriction to every `stride`-th node.
  Path coarsened(std::size_t stride) const;
  /// Resample onto another grid by linear interpolation.
  Path resampled(const Grid& grid) const;

  double sup_norm() const;
  /// max_i |x_i - y_i| at common nodes; grids must match.
  double sup_distance(const Path& other) const;

 private:
  Grid grid_;
  Mat values_;
};

/// Restricted Hölder estimate over node pairs.
struct HolderEstimate {
  double exponent = 1.0;
  double seminorm = 0.0;
  double sup_norm = 0.0;
  /// True when the pair set was subsampled (n > 4096); the seminorm is then a
  /// lower bound of the all-pairs value.
  bool subsampled = false;
};

/// Maximum of |x_t - x_s| / |t - s|^alpha over node pairs s < t.
HolderEstimate holder_seminorm(const Path& x, double alpha);

/// Node-pair count above which holder_seminorm subsamples pairs.
inline constexpr std::size_t kExactHolderNodes = 4096;

}  // namespace ycalc
