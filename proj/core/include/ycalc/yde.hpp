#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/field.hpp"
#include "ycalc/fixed_point.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"

namespace ycalc {

struct SolveReport {
  Path solution;
  /// Picard iterations summed over windows, or Euler steps.
  std::size_t iterations = 0;
  /// Picard: largest final fixed-point update. Euler: sup over nodes of
  /// |x_t - x_0 - int_0^t A(ds, x_s)| with residual_levels extra levels.
  double final_residual = 0.0;
  HolderEstimate alpha_estimate;
  std::size_t windows = 0;
  std::vector<std::string> flags;
};

struct SolverOptions {
  double tol = 1e-10;
  unsigned max_iter = 200;
  /// Fixed dyadic levels of the Young increment per cell inside solvers.
  unsigned refine_levels = 4;
  /// Richardson-corrected cell increments inside solvers.
  bool extrapolate = true;
  /// Extra levels of the residual integral reported by euler_solve.
  unsigned residual_levels = 4;
  /// Exponent of the reported Hölder estimate of the solution.
  double holder_exponent = 0.5;
};

/// x_{k+1} = x_k + A_{t_k,t_{k+1}}(x_k). Throws BlowUpError at the first
/// step with |x| > 1e12.
SolveReport euler_solve(const Field& a, const Vec& x0, const Grid& grid, const SolverOptions& options = {});
SolveReport euler_solve(const Field& a, const Vec& x0, std::size_t n, double horizon = 1.0,
                        const SolverOptions& options = {});

/// Windowed Picard iteration of x -> x0 + int A(ds, x_s).
SolveReport picard_solve(const Field& a, const Vec& x0, const Grid& grid, const SolverOptions& options = {});

using Drift = std::function<Vec(double t, const Vec& x)>;

/// x_t = x0 + int_0^t F(s, x_s) ds + int_0^t A(ds, x_s), trapezoid rule in the
/// drift and the same windowing as picard_solve.
SolveReport solve_mixed(const Field& a, const Drift& f, const Vec& x0, const Grid& grid,
                        const SolverOptions& options = {});

/// Xi[f]_t = sum_i f_{t_i,t_{i+1}} [(t - t_i)^delta - (t - t_{i+1})^delta] / (delta h)
/// at every node; Xi[f]_0 = 0.
Path xi_fractional(const Path& f, double delta);

/// Regularity metadata for the fractional condition
/// alpha + delta - 1 > (1 - alpha) / beta.
struct FractionalCoefficients {
  double alpha = 0.5;
  double beta = 1.0;
};

/// Global Picard iteration of x -> x0 + Xi[int A(ds, x_s)]. When
/// coefficients are given the exponent condition is checked first.
SolveReport solve_fractional(const Field& a, const Vec& x0, double delta, const Grid& grid,
                             const SolverOptions& options = {},
                             std::optional<FractionalCoefficients> coefficients = std::nullopt);

enum class RateReference { picard, euler_at_4max };

struct RateTable {
  std::vector<std::size_t> n_values;
  std::vector<double> errors;
  /// Convergence rate: minus the least-squares slope of log error on log n.
  double fitted_slope = 0.0;
  RateReference reference = RateReference::picard;

  /// Columns n,error,log2n,log2err.
  CsvTable table() const;
};

/// Euler at each n on [t0, t1] against a reference solve, sup-norm error at
/// the coarse nodes. n_list must hold at least four powers of two.
RateTable euler_rate_experiment(const Field& a, const Vec& x0, double t0, double t1,
                                const std::vector<std::size_t>& n_list, RateReference reference,
                                const SolverOptions& options = {});

struct AprioriReport {
  double holder_seminorm = 0.0;
  double field_norm = 0.0;
  /// holder_seminorm / (1 + field_norm^2).
  double ratio = 0.0;
};

/// Field norms are estimated on the solution's grid coarsened to at most 256
/// cells, over the ball of radius sup |x|.
AprioriReport apriori_check(const Path& solution, const Field& a, double alpha, double beta,
                            std::size_t space_samples = 8, std::uint64_t seed = 0);

struct ComparisonOptions {
  double alpha = 0.5;
  double beta = 1.0;
  std::size_t space_samples = 8;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

struct ComparisonRow {
  double scale = 1.0;
  double distance = 0.0;
  double initial_gap = 0.0;
  double ratio = 0.0;
};

struct ComparisonReport {
  double field_gap = 0.0;
  /// Initial gap scaled by 1, 1/2, 1/4, 1/8.
  std::vector<ComparisonRow> rows;
  /// Positive ratios within a factor 2 of each other.
  bool stable = true;
};

/// |x^1 - x^2|_inf / (|x0^1 - x0^2| + ||A^1 - A^2||) with Picard solves.
ComparisonReport comparison_experiment(const Field& a1, const Field& a2, const Vec& x01, const Vec& x02,
                                       const Grid& grid, const ComparisonOptions& options = {});

struct FirstIntegralReport {
  /// sup_t |F(x_t) - F(x_0)|.
  double drift = 0.0;
  /// max |DF(z) A_{s,t}(z)| over sampled (s, t, z).
  double hypothesis_residual = 0.0;
};

/// z ranges over the solution's node values and seeded points in the ball of
/// radius 1 + sup |x|; (s, t) over dyadic node pairs.
FirstIntegralReport check_first_integral(const ScalarFunction& f, const Path& solution, const Field& a,
                                         std::size_t space_samples = 32, std::uint64_t seed = 0);

}  // namespace ycalc
