#pragma once

#include <cstddef>
#include <functional>

#include "ycalc/grid.hpp"
#include "ycalc/types.hpp"

namespace ycalc {

/// Local increment Gamma_{s,t} evaluated at the state x_s.
using StateGerm = std::function<Vec(double s, double t, const Vec& xs)>;

/// New right node value of a cell from the new left value, the sewn Young
/// increment over the cell, and the previous iterate (global node indexing).
/// The default rule is x_{j+1} = x_j + I_j.
using StepRule = std::function<Vec(std::size_t cell, const Vec& left, const Vec& increment, const Mat& previous)>;

struct FixedPointOptions {
  double tol = 1e-10;
  unsigned max_iter = 200;
  unsigned refine_levels = 4;
  /// Start with one window over the whole grid and halve on failure; when
  /// false the whole grid is iterated at once.
  bool windowing = true;
  /// Use 2 S_L - S_{L-1} for the per-cell Riemann sums S_l.
  bool extrapolate = true;
};

struct FixedPointResult {
  /// dim x (n + 1) node values.
  Mat states;
  unsigned iterations = 0;
  /// Largest final sup-norm update over the accepted windows.
  double final_residual = 0.0;
  std::size_t windows = 0;
  /// Window length in cells when the solve finished.
  std::size_t final_window = 0;
};

/// Increment of the germ over [a, b] from its dyadic Riemann sum S_levels with
/// the state linearly interpolated between xa (at a) and xb (at b). With
/// extrapolate, returns 2 S_levels - S_{levels-1}: inside a cell the data are
/// linear, where S_l = S + c 2^-l + O(4^-l).
Vec cell_increment(const StateGerm& germ, double a, double b, const Vec& xa, const Vec& xb, unsigned levels,
                   bool extrapolate = true);

/// Picard iteration X -> step(X) over windows of cells, starting each window
/// from an Euler predictor. A window that fails to converge within
/// max_iter / 4 iterations, or whose updates grow, is halved; a single-cell
/// window gets the full max_iter budget. Throws ConvergenceError when a
/// window would shrink below one cell and BlowUpError when a single-cell
/// window leaves |x| <= 1e12.
FixedPointResult windowed_fixed_point(const StateGerm& germ, const Vec& x0, const Grid& grid,
                                      const FixedPointOptions& options, const StepRule& step = {});

/// |x| > kBlowUpThreshold or non-finite counts as blow-up.
inline constexpr double kBlowUpThreshold = 1e12;
bool is_blown_up(const Vec& x);

}  // namespace ycalc
