#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ycalc/csv.hpp"
#include "ycalc/field.hpp"
#include "ycalc/grid.hpp"
#include "ycalc/path.hpp"
#include "ycalc/yde.hpp"

namespace ycalc {

struct FlowSolver {
  enum class Kind { euler, picard };
  Kind kind = Kind::picard;
  SolverOptions options;
};

/// Solve x = x0 + int_s A(dr, x_r) on the cells of grid from node s_index
/// to the end, with the given solver.
Path solve_from(const Field& a, const Vec& x0, const Grid& grid, std::size_t s_index, const FlowSolver& solver);

struct FlowEntry {
  std::size_t s_index = 0;
  std::size_t t_index = 0;
  std::size_t point_index = 0;
  Vec x_out;
  /// det of the variational Jacobian; NaN when Jacobians were not requested.
  double det_jacobian = 0.0;
  Mat jacobian;
  bool valid = true;
  std::string error;
};

struct FlowTable {
  FieldPtr field;
  FlowSolver solver;
  Grid grid{0.0, 1.0, 1};
  std::vector<std::size_t> start_indices;
  std::vector<std::size_t> end_indices;
  std::vector<Vec> initial_points;
  /// One entry per (start, point, end >= start), in that nesting order.
  std::vector<FlowEntry> entries;
  bool has_jacobians = false;

  const FlowEntry* find(std::size_t s_index, std::size_t t_index, std::size_t point_index) const;
  /// Columns s,t,x_in...,x_out...,det_jacobian.
  CsvTable table() const;
};

/// Phi_{s->t}(x) for every requested start node, end node and point. Each
/// (s, x) is one solve read off at the end nodes; Phi_{t->t}(x) = x exactly.
/// Blow-ups mark the affected entries invalid.
FlowTable compute_flow(FieldPtr a, const std::vector<Vec>& points, const Grid& grid,
                       const std::vector<std::size_t>& start_indices, const std::vector<std::size_t>& end_indices,
                       const FlowSolver& solver, bool with_jacobians = false);

struct GroupReport {
  double max_defect = 0.0;
  std::size_t triples = 0;
  bool passed = true;
};

/// max |Phi_{u->t}(Phi_{s->u}(x)) - Phi_{s->t}(x)| over s < u < t drawn from
/// the table's node lists; the outer map is re-solved from each
/// intermediate point.
GroupReport group_property_check(const FlowTable& table, double tol);

struct InverseReport {
  Vec forward;
  Vec round_trip;
  double error = 0.0;
  bool passed = true;
};

/// Solve forward from node s to node t, then solve the time-reversed field
/// A~(r, z) = A(t - r, z) - A(t, z) over [0, t - s] from the endpoint.
InverseReport inverse_flow_check(FieldPtr a, const Vec& x, const Grid& grid, std::size_t s_index,
                                 std::size_t t_index, const FlowSolver& solver, double tol);

/// Row-major flattening of d x d matrices to paths in R^{d*d}.
Vec flatten(const Mat& m);
Mat unflatten(const Vec& v, std::size_t rows);

/// J_t = I + int DA(dr, Phi_r) J_r along the base path, by windowed Picard
/// with the bilinear germ DA_{s,t}(Phi_s) J_s. Returns a path in R^{d*d}
/// on the base path's grid.
Path variational_solve(const Field& a, const Path& base, const SolverOptions& options = {});

/// N_t = I - int N_r DA(dr, Phi_r), the inverse of the variational J.
Path adjoint_solve(const Field& a, const Path& base, const SolverOptions& options = {});

struct JacobianDetReport {
  /// sup_t |det J_t - exp(int div A)| / exp(int div A).
  double max_relative_gap = 0.0;
  double min_det = 0.0;
  double max_det = 0.0;
  Path det;
  Path exp_div;
};

/// det of the variational Jacobian along the flow from x against the
/// exponential of the Young integral of div A along the same flow.
JacobianDetReport jacobian_det_check(const Field& a, const Vec& x, const Grid& grid,
                                     const SolverOptions& options = {});

struct ItoDerivative {
  /// t -> J_t int_0^t J_s^{-1} B(ds, X_s).
  Path derivative;
  Path solution;
  /// sup_t |N_t J_t - I|.
  double inverse_defect = 0.0;
  double min_abs_det = 0.0;
};

/// Directional derivative of the solution map in the direction of B.
/// Throws DomainError when |det J| drops below 1e-8.
ItoDerivative ito_map_derivative(const Field& a, const Field& b, const Vec& x0, const Grid& grid,
                                 const SolverOptions& options = {});

}  // namespace ycalc
