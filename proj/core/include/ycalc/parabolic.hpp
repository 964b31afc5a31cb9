#pragma once

#include <cstddef>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/field.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"
#include "ycalc/yde.hpp"

namespace ycalc {

/// Diagonal generator with eigenvalues lambda_k >= 0 and semigroup
/// S(t) = diag(exp(-lambda_k t)).
class SpectralSystem {
 public:
  explicit SpectralSystem(std::vector<double> eigenvalues);
  /// lambda_k = (pi k)^2, k = 1..modes (Dirichlet Laplacian on [0, 1]).
  static SpectralSystem dirichlet(std::size_t modes);

  std::size_t modes() const noexcept { return lambda_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return lambda_; }

  /// (sum_k lambda_k^{2 alpha} |x_k|^2)^{1/2}; a zero eigenvalue contributes
  /// only when alpha = 0.
  double norm(const Vec& x, double alpha) const;
  /// Coordinates scaled by lambda_k^alpha, so Euclidean norms are V_alpha norms.
  Vec weighted(const Vec& x, double alpha) const;
  Path weighted(const Path& x, double alpha) const;
  /// S(t) x.
  Vec semigroup(double t, const Vec& x) const;

  /// max_k lambda^alpha exp(-lambda t) t^alpha / (alpha/e)^alpha, which is
  /// at most one.
  double smoothing_ratio(double alpha, double t) const;

 private:
  std::vector<double> lambda_;
};

inline constexpr std::size_t kMaxSpectralModes = 256;

struct MildConvolution {
  /// Xi(y) on y's grid.
  Path xi;
  /// ||Xi(y)_{t_i}||_{V_delta_out} per node.
  std::vector<double> norm_trace;
  double sup_norm = 0.0;

  /// Columns t,norm.
  CsvTable norm_table() const;
};

/// Xi(y)_t = int_0^t S(t - s) dy_s with exact per-cell integration of the
/// semigroup against piecewise-linear y, one O(nK) recursion per mode.
MildConvolution mild_convolution(const SpectralSystem& system, const Path& y, double delta_out);

struct ParabolicOptions {
  /// Exponents of the reported norms.
  double kappa = 0.5;
  double delta = 0.0;
  SolverOptions solver;
};

struct ParabolicReport {
  SolveReport report;
  /// sup_{s<t} ||x_t - x_s||_{V_delta} / |t-s|^kappa over node pairs.
  double holder_kappa_delta = 0.0;
  /// sup_t ||x_t||_{V_{delta+kappa}}.
  double sup_norm_delta_kappa = 0.0;
  std::vector<double> norm_trace;

  /// Columns t,x1..xK,norm.
  CsvTable table() const;
};

/// Mild fixed point x_t = S(t) x0 + Xi(int B(ds, x_s))_t by windowed Picard,
/// with the cell recursion x_{j+1} = e^{-lambda h} x_j + phi(lambda h) I_j,
/// phi(z) = (1 - e^{-z}) / z and phi(0) = 1.
ParabolicReport parabolic_solve(const SpectralSystem& system, const Field& b, const Vec& x0, const Grid& grid,
                                const ParabolicOptions& options = {});

}  // namespace ycalc
