#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"

namespace ycalc {

/// Deterministic alpha-Hölder driver
///   W(t) = amplitude * sum_{k=0..K} 2^{-alpha k} sin(2^k t + phase_k)
/// sampled on the grid. `phases` must hold K+1 entries.
Path sample_weierstrass(double alpha, unsigned levels, std::span<const double> phases,
                        double amplitude, const Grid& grid);

/// Convenience overload with phase_k = phase_offset + k.
Path sample_weierstrass(double alpha, unsigned levels, double amplitude, const Grid& grid,
                        double phase_offset = 0.0);

/// Largest cell count accepted by sample_fbm.
inline constexpr std::size_t kMaxFbmCells = std::size_t{1} << 22;
/// Cell count up to which dense Cholesky is used if circulant embedding fails.
inline constexpr std::size_t kMaxCholeskyCells = 2048;

/// Fractional Brownian motion with Hurst index H, B_{t0} = 0, independent
/// coordinates. Exact synthesis by circulant embedding of the increments.
Path sample_fbm(double hurst, const Grid& grid, std::size_t dim, std::uint64_t seed);

/// Same law, synthesised by dense Cholesky of the fBm covariance; used as a
/// fallback and as an independent route in tests. Requires n <= 2048.
Path sample_fbm_cholesky(double hurst, const Grid& grid, std::size_t dim, std::uint64_t seed);

/// Scalar path t -> f(t) - f(t0).
Path sample_smooth(const Grid& grid, const std::function<double(double)>& f);

/// Stack scalar paths on a common grid into one multi-dimensional path.
Path stack_paths(std::span<const Path> components);

}  // namespace ycalc
