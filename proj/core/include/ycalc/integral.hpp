#pragma once

#include <cstddef>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/field.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"
#include "ycalc/sewing.hpp"

namespace ycalc {

/// The integral as a path of its upper limit on the base grid, with the
/// sewing diagnostics.
using IntegralResult = SewResult;

inline constexpr unsigned kDefaultIntegralLevels = 12;

/// int A(ds, x_s), germ A_{s,t}(x_s).
IntegralResult nonlinear_young_integral(const Field& a, const Path& x, const Grid& grid,
                                        unsigned refine_levels = kDefaultIntegralLevels);
IntegralResult nonlinear_young_integral(const Field& a, const Path& x, const Grid& grid,
                                        const SewOptions& options);

/// int A(s, dx_s), germ A(s, x_t) - A(s, x_s).
IntegralResult young_integral_dx(const Field& a, const Path& x, const Grid& grid,
                                 unsigned refine_levels = kDefaultIntegralLevels);
IntegralResult young_integral_dx(const Field& a, const Path& x, const Grid& grid, const SewOptions& options);

/// int y_s A(ds, x_s), germ y_s A_{s,t}(x_s). y is scalar, or holds a
/// rows x m matrix in row-major order (dim(y) = rows * m).
IntegralResult young_integral_bilinear(const Path& y, const Field& a, const Path& x, const Grid& grid,
                                       unsigned refine_levels = kDefaultIntegralLevels);
IntegralResult young_integral_bilinear(const Path& y, const Field& a, const Path& x, const Grid& grid,
                                       const SewOptions& options);

/// One point of a log-log fit: the largest value over pairs at one gap.
struct FitRow {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
  double bound_or_fit = 0.0;
};

struct RemainderReport {
  double expected_exponent = 0.0;
  /// Least-squares slope of log remainder against log |t-s|; +inf when all
  /// remainders vanish.
  double fitted_slope = 0.0;
  double threshold = 0.0;
  bool passed = true;
  std::vector<FitRow> rows;
  /// Consecutive gap pairs whose local slope is below the threshold.
  std::vector<FitRow> offending;

  /// Columns s,t,value,bound_or_fit.
  CsvTable table() const;
};

/// Fits the decay of sup |int_s^t A(dr, x_r) - A_{s,t}(x_s)| over all
/// windows of g cells, for dyadic g up to n / 16, and compares the slope
/// with alpha + beta * gamma - 0.15. Larger windows are tabulated but not
/// fitted: there the remainder saturates.
RemainderReport remainder_check(const Field& a, const Path& x, double alpha, double beta, double gamma,
                                const Grid& grid, unsigned refine_levels = 10);

struct ItoReport {
  /// sup_t |residual_t| at the finest level.
  double sup_residual = 0.0;
  /// Residual path on the base grid at the finest level.
  Mat residual;
  /// level_sups[l] = sup residual with l refinement levels.
  std::vector<double> level_sups;
  /// level_sups[l-1] / level_sups[l].
  std::vector<double> level_ratios;
  /// Slope of residual increments over dyadic gaps; +inf when they vanish.
  double fitted_slope = 0.0;
  std::vector<FitRow> rows;

  CsvTable table() const;
};

/// residual_t = F(t, x_t) - F(0, x_0) - int F(ds, x_s) - int F(s, dx_s).
ItoReport ito_residual(const Field& f, const Path& x, const Grid& grid,
                       unsigned refine_levels = kDefaultIntegralLevels);

}  // namespace ycalc
