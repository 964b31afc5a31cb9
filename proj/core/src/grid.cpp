#include "ycalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ycalc/errors.hpp"

namespace ycalc {

Grid::Grid(double t0, double t1, std::size_t n) : t0_(t0), t1_(t1), n_(n) {
  if (!(std::isfinite(t0) && std::isfinite(t1)) || !(t1 > t0)) {
    throw DomainError("grid: interval must satisfy t1 > t0");
  }
  if (n == 0) throw DomainError("grid: number of cells must be positive");
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
  return out;
}

std::size_t Grid::locate(double t) const noexcept {
  const double u = (t - t0_) / mesh();
  if (!(u > 0.0)) return 0;
  auto i = static_cast<std::size_t>(u);
  if (i >= n_) return n_ - 1;
  // Guard against rounding placing t just past the right node of cell i-1.
  if (i > 0 && t < node(i)) --i;
  return i;
}

Grid Grid::refined(unsigned levels) const {
  if (levels >= 40) throw DomainError("grid: refinement level too large");
  return Grid(t0_, t1_, n_ << levels);
}

Grid Grid::coarsened(std::size_t stride) const {
  if (stride == 0 || n_ % stride != 0) {
    throw DomainError("grid: coarsening stride must divide the cell count");
  }
  return Grid(t0_, t1_, n_ / stride);
}

Grid make_uniform_grid(double t0, double t1, std::size_t n) { return Grid(t0, t1, n); }

}  // namespace ycalc
