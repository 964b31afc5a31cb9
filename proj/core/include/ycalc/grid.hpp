#pragma once

#include <cstddef>
#include <vector>

namespace ycalc {

/// Uniform partition of [t0, t1] into n cells.
///
/// Node i is computed as t0 + ((t1 - t0) * i) / n so that dyadic refinements
/// reproduce the coarse nodes bit for bit.
class Grid {
 public:
  Grid(double t0, double t1, std::size_t n);

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  std::size_t cells() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1; }
  double length() const noexcept { return t1_ - t0_; }
  double mesh() const noexcept { return (t1_ - t0_) / static_cast<double>(n_); }

  double node(std::size_t i) const noexcept {
    if (i >= n_) return t1_;
    return t0_ + ((t1_ - t0_) * static_cast<double>(i)) / static_cast<double>(n_);
  }
  std::vector<double> nodes() const;

  /// Index of the cell containing t, clamped to [0, n-1].
  std::size_t locate(double t) const noexcept;

  /// Each cell split into 2^levels equal cells.
  Grid refined(unsigned levels) const;

  /// Every `stride`-th node; requires stride to divide n.
  Grid coarsened(std::size_t stride) const;

  bool operator==(const Grid& other) const noexcept = default;

 private:
  double t0_;
  double t1_;
  std::size_t n_;
};

Grid make_uniform_grid(double t0, double t1, std::size_t n);

}  // namespace ycalc
