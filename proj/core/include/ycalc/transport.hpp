#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/field.hpp"
#include "ycalc/flow.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/grid.hpp"

namespace ycalc {

/// Signed point masses sum_i w_i delta_{x_i}.
struct ParticleMeasure {
  std::vector<Vec> positions;
  std::vector<double> weights;

  /// sum_i w_i phi(x_i).
  double pair(const std::function<double(const Vec&)>& phi) const;
};

/// u(t, x) = u0(Phi_{0<-t}(x)) exp(-int_0^t c(ds, Phi_{s<-t}(x))) for the
/// transport equation u_dt + A_dt . grad u + c_dt u = 0 on the grid's time
/// nodes. Backward characteristics are solved from each query point with
/// the reversed field, never interpolated from a flow table.
struct TransportSolution {
  FieldPtr a;
  /// Scalar rate field c : R^d -> R.
  FieldPtr c;
  std::function<double(const Vec&)> u0;
  Grid grid{0.0, 1.0, 1};
  FlowSolver solver;

  /// u at time node t_index and point x. Throws BlowUpError or
  /// ConvergenceError when the characteristic fails.
  double value(std::size_t t_index, const Vec& x) const;
  /// Backward characteristic r -> Phi_{t-r <- t}(x) on [0, t].
  Path characteristic(std::size_t t_index, const Vec& x) const;
};

struct TransportValues {
  std::vector<double> values;
  /// False where the characteristic failed; the value is then NaN.
  std::vector<bool> valid;

  /// Columns t,x1..xd,u.
  CsvTable table(double t, const std::vector<Vec>& points) const;
};

TransportValues transport_solve(const TransportSolution& u, std::size_t t_index, const std::vector<Vec>& points);

/// Positions pushed forward to time node t_index, weights multiplied by
/// exp(int_0^t (div A - c)(ds, Phi_{0->s}(x))).
ParticleMeasure continuity_solve(FieldPtr a, FieldPtr c, const ParticleMeasure& mu0, const Grid& grid,
                                 std::size_t t_index, const FlowSolver& solver);

/// Tensor lattice of points_per_dim^d cell midpoints on [lo, hi] (d <= 2).
struct LatticeBox {
  Vec lo;
  Vec hi;
  std::size_t points_per_dim = 128;
};

/// |<u_{s,t}, phi> - <A_{s,t} . grad phi + (div A_{s,t} - c_{s,t}) phi, u_s>|
/// by midpoint quadrature on the box. Throws DomainError when the
/// integrand on the box boundary exceeds 1e-6 of its interior maximum.
double weak_residual(const TransportSolution& u, const ScalarFunction& phi, std::size_t s_index,
                     std::size_t t_index, const LatticeBox& box);

struct WeakResidualFit {
  std::vector<double> gaps;
  std::vector<double> residuals;
  /// Slope of log residual on log gap; +inf when the residuals vanish.
  double fitted_slope = 0.0;
  double threshold = 0.0;
  bool passed = true;
};

/// For dyadic gaps g (in cells, up to max_gap; 0 means the whole grid) the
/// sup of weak_residual over all windows of g cells, then the slope of
/// log sup on log gap against min_exponent - 0.15.
WeakResidualFit weak_residual_fit(const TransportSolution& u, const ScalarFunction& phi, const LatticeBox& box,
                                  double min_exponent, std::size_t max_gap = 0);

struct DualityRow {
  double t = 0.0;
  double pairing = 0.0;
};

struct DualityReport {
  double initial_pairing = 0.0;
  std::vector<DualityRow> rows;
  /// max_t |pairing_t - pairing_0| / (1 + |pairing_0|).
  double max_drift = 0.0;
  bool passed = true;

  /// Columns t,pairing,drift.
  CsvTable table() const;
};

/// u solves the transport equation with rate c; v solves the continuity
/// equation v_dt + div(A_dt v) - c_dt v = 0, i.e. particle weights
/// exp(int c). Passes when the drift is at most 1e-3 (1 + |pairing_0|).
DualityReport duality_check(FieldPtr a, FieldPtr c, const std::function<double(const Vec&)>& u0,
                            const ParticleMeasure& mu0, const Grid& grid, const std::vector<std::size_t>& times,
                            const FlowSolver& solver);

}  // namespace ycalc
