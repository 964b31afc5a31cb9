#include "ycalc/drivers.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "ycalc/errors.hpp"
#include "ycalc/rng.hpp"

namespace ycalc {

Path sample_weierstrass(double alpha, unsigned levels, std::span<const double> phases,
                        double amplitude, const Grid& grid) {
  require(alpha > 0.0 && alpha < 1.0, "weierstrass: alpha must lie in (0, 1)");
  require(phases.size() == levels + 1, "weierstrass: need levels + 1 phases");
  require(std::isfinite(amplitude), "weierstrass: amplitude must be finite");
  require(levels < 60, "weierstrass: too many levels");
  std::vector<double> weight(levels + 1);
  std::vector<double> freq(levels + 1);
  for (unsigned k = 0; k <= levels; ++k) {
    weight[k] = amplitude * std::exp2(-alpha * k);
    freq[k] = std::exp2(static_cast<double>(k));
  }
  Mat v(1, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.node(i);
    double s = 0.0;
    for (unsigned k = 0; k <= levels; ++k) s += weight[k] * std::sin(freq[k] * t + phases[k]);
    v(0, static_cast<Eigen::Index>(i)) = s;
  }
  return Path(grid, std::move(v));
}

Path sample_weierstrass(double alpha, unsigned levels, double amplitude, const Grid& grid,
                        double phase_offset) {
  std::vector<double> phases(levels + 1);
  for (unsigned k = 0; k <= levels; ++k) phases[k] = phase_offset + k;
  return sample_weierstrass(alpha, levels, phases, amplitude, grid);
}

namespace {

// Autocovariance of unit-mesh fractional Gaussian noise at lag k.
double fgn_autocov(double hurst, std::size_t k) {
  const double h2 = 2.0 * hurst;
  const double kk = static_cast<double>(k);
  if (k == 0) return 1.0;
  return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

// Circulant eigenvalues for n increments; empty when the embedding is not
// nonnegative definite.
std::vector<double> circulant_eigenvalues(double hurst, std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> row(m);
  for (std::size_t k = 0; k <= n; ++k) row[k] = fgn_autocov(hurst, k);
  for (std::size_t k = n + 1; k < m; ++k) row[k] = fgn_autocov(hurst, m - k);
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, row);
  std::vector<double> lam(m);
  for (std::size_t k = 0; k < m; ++k) {
    double l = spec[k].real();
    if (l < 0.0) {
      if (l < -1e-10 * static_cast<double>(m)) return {};
      l = 0.0;
    }
    lam[k] = l;
  }
  return lam;
}

}  // namespace

Path sample_fbm(double hurst, const Grid& grid, std::size_t dim, std::uint64_t seed) {
  require(hurst > 0.0 && hurst < 1.0, "fbm: Hurst index must lie in (0, 1)");
  require(dim >= 1, "fbm: dimension must be positive");
  const std::size_t n = grid.cells();
  require(n <= kMaxFbmCells, "fbm: grid too large for exact synthesis");

  const std::vector<double> lam = circulant_eigenvalues(hurst, n);
  if (lam.empty()) {
    require(n <= kMaxCholeskyCells, "fbm: grid too large for exact synthesis");
    return sample_fbm_cholesky(hurst, grid, dim, seed);
  }

  const std::size_t m = 2 * n;
  const double scale = std::pow(grid.mesh(), hurst);
  Eigen::FFT<double> fft;
  NormalStream normals(seed);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(grid.size()));
  std::vector<std::complex<double>> z(m);
  std::vector<std::complex<double>> w;
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t k = 0; k < m; ++k) {
      const double s = std::sqrt(lam[k] / static_cast<double>(m));
      const double re = normals.normal();
      const double im = normals.normal();
      z[k] = std::complex<double>(s * re, s * im);
    }
    fft.fwd(w, z);
    // Re(w_j) for j < n are jointly Gaussian with the fGn covariance.
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += scale * w[j].real();
      v(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j + 1)) = acc;
    }
  }
  return Path(grid, std::move(v));
}

Path sample_fbm_cholesky(double hurst, const Grid& grid, std::size_t dim, std::uint64_t seed) {
  require(hurst > 0.0 && hurst < 1.0, "fbm: Hurst index must lie in (0, 1)");
  require(dim >= 1, "fbm: dimension must be positive");
  const std::size_t n = grid.cells();
  require(n <= kMaxCholeskyCells, "fbm: grid too large for dense Cholesky synthesis");
  const double h2 = 2.0 * hurst;
  Mat cov(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = grid.node(i + 1) - grid.t0();
    for (std::size_t j = 0; j < n; ++j) {
      const double tj = grid.node(j + 1) - grid.t0();
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          0.5 * (std::pow(ti, h2) + std::pow(tj, h2) - std::pow(std::abs(ti - tj), h2));
    }
  }
  Eigen::LLT<Mat> llt(cov);
  if (llt.info() != Eigen::Success) throw Error("fbm: covariance factorisation failed");
  const Mat l = llt.matrixL();
  NormalStream normals(seed);
  Mat v = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(grid.size()));
  Vec z(static_cast<Eigen::Index>(n));
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < n; ++i) z(static_cast<Eigen::Index>(i)) = normals.normal();
    const Vec b = l * z;
    v.row(static_cast<Eigen::Index>(d)).tail(static_cast<Eigen::Index>(n)) = b.transpose();
  }
  return Path(grid, std::move(v));
}

Path sample_smooth(const Grid& grid, const std::function<double(double)>& f) {
  const double f0 = f(grid.t0());
  Mat v(1, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v(0, static_cast<Eigen::Index>(i)) = f(grid.node(i)) - f0;
  return Path(grid, std::move(v));
}

Path stack_paths(std::span<const Path> components) {
  require(!components.empty(), "stack_paths: need at least one component");
  const Grid& g = components.front().grid();
  Eigen::Index rows = 0;
  for (const Path& p : components) {
    require(p.grid() == g, "stack_paths: components must share a grid");
    rows += static_cast<Eigen::Index>(p.dim());
  }
  Mat v(rows, static_cast<Eigen::Index>(g.size()));
  Eigen::Index r = 0;
  for (const Path& p : components) {
    v.middleRows(r, static_cast<Eigen::Index>(p.dim())) = p.values();
    r += static_cast<Eigen::Index>(p.dim());
  }
  return Path(g, std::move(v));
}

}  // namespace ycalc
