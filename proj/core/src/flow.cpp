#include "ycalc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ycalc/errors.hpp"
#include "ycalc/fixed_point.hpp"
#include "ycalc/integral.hpp"
#include "ycalc/parallel.hpp"

namespace ycalc {

Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return v;
}

Mat unflatten(const Vec& v, std::size_t rows) {
  const auto r = static_cast<Eigen::Index>(rows);
  const Eigen::Index cols = v.size() / r;
  Mat m(r, cols);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = v(i * cols + c);
  }
  return m;
}

Path solve_from(const Field& a, const Vec& x0, const Grid& grid, std::size_t s_index, const FlowSolver& solver) {
  require(s_index < grid.cells(), "solve_from: start node must precede the last node");
  const Grid sub(grid.node(s_index), grid.t1(), grid.cells() - s_index);
  if (solver.kind == FlowSolver::Kind::euler) return euler_solve(a, x0, sub, solver.options).solution;
  return picard_solve(a, x0, sub, solver.options).solution;
}

const FlowEntry* FlowTable::find(std::size_t s_index, std::size_t t_index, std::size_t point_index) const {
  for (const auto& e : entries) {
    if (e.s_index == s_index && e.t_index == t_index && e.point_index == point_index) return &e;
  }
  return nullptr;
}

CsvTable FlowTable::table() const {
  CsvTable t;
  t.header = {"s", "t"};
  const std::size_t d = initial_points.empty() ? 0 : static_cast<std::size_t>(initial_points[0].size());
  for (std::size_t k = 1; k <= d; ++k) t.header.push_back("x_in" + std::to_string(k));
  for (std::size_t k = 1; k <= d; ++k) t.header.push_back("x_out" + std::to_string(k));
  t.header.push_back("det_jacobian");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : entries) {
    std::vector<double> row{grid.node(e.s_index), grid.node(e.t_index)};
    for (std::size_t k = 0; k < d; ++k) row.push_back(initial_points[e.point_index](static_cast<Eigen::Index>(k)));
    for (std::size_t k = 0; k < d; ++k) row.push_back(e.valid ? e.x_out(static_cast<Eigen::Index>(k)) : nan);
    row.push_back(e.valid ? e.det_jacobian : nan);
    t.rows.push_back(std::move(row));
  }
  return t;
}

FlowTable compute_flow(FieldPtr a, const std::vector<Vec>& points, const Grid& grid,
                       const std::vector<std::size_t>& start_indices, const std::vector<std::size_t>& end_indices,
                       const FlowSolver& solver, bool with_jacobians) {
  require(a != nullptr, "compute_flow: field is required");
  for (std::size_t s : start_indices) require(s <= grid.cells(), "compute_flow: start index out of range");
  for (std::size_t t : end_indices) require(t <= grid.cells(), "compute_flow: end index out of range");
  FlowTable table;
  table.field = a;
  table.solver = solver;
  table.grid = grid;
  table.start_indices = start_indices;
  table.end_indices = end_indices;
  table.initial_points = points;
  table.has_jacobians = with_jacobians;

  struct Job {
    std::size_t s, p;
  };
  std::vector<Job> jobs;
  for (std::size_t s : start_indices) {
    for (std::size_t p = 0; p < points.size(); ++p) jobs.push_back({s, p});
  }
  std::vector<std::vector<FlowEntry>> results(jobs.size());
  const std::size_t d = a->in_dim();
  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [s, p] = jobs[j];
    std::vector<FlowEntry>& out = results[j];
    for (std::size_t t : end_indices) {
      if (t < s) continue;
      FlowEntry e;
      e.s_index = s;
      e.t_index = t;
      e.point_index = p;
      e.x_out = points[p];
      e.det_jacobian = with_jacobians ? 1.0 : std::numeric_limits<double>::quiet_NaN();
      if (with_jacobians) e.jacobian = Mat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      out.push_back(std::move(e));
    }
    if (s >= grid.cells()) return;
    try {
      const Path path = solve_from(*a, points[p], grid, s, solver);
      Path jac = with_jacobians ? variational_solve(*a, path, solver.options) : path;
      for (FlowEntry& e : out) {
        if (e.t_index == s) continue;
        e.x_out = path.node(e.t_index - s);
        if (with_jacobians) {
          e.jacobian = unflatten(jac.node(e.t_index - s), d);
          e.det_jacobian = e.jacobian.determinant();
        }
      }
    } catch (const Error& err) {
      for (FlowEntry& e : out) {
        if (e.t_index == s) continue;
        e.valid = false;
        e.error = err.what();
      }
    }
  });
  for (auto& r : results) {
    for (auto& e : r) table.entries.push_back(std::move(e));
  }
  return table;
}

GroupReport group_property_check(const FlowTable& table, double tol) {
  require(table.field != nullptr, "group_property_check: table has no field");
  GroupReport rep;
  std::vector<std::size_t> ends = table.end_indices;
  std::sort(ends.begin(), ends.end());
  struct Job {
    std::size_t s, u, p;
  };
  std::vector<Job> jobs;
  for (std::size_t s : table.start_indices) {
    for (std::size_t u : ends) {
      if (u <= s || u >= table.grid.cells()) continue;
      for (std::size_t p = 0; p < table.initial_points.size(); ++p) jobs.push_back({s, u, p});
    }
  }
  std::vector<double> defects(jobs.size(), 0.0);
  std::vector<std::size_t> counts(jobs.size(), 0);
  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [s, u, p] = jobs[j];
    const FlowEntry* mid = table.find(s, u, p);
    if (mid == nullptr) throw DomainError("group_property_check: missing entry Phi(s,u,x)");
    if (!mid->valid) return;
    const Path outer = solve_from(*table.field, mid->x_out, table.grid, u, table.solver);
    for (std::size_t t : ends) {
      if (t <= u) continue;
      const FlowEntry* direct = table.find(s, t, p);
      if (direct == nullptr) throw DomainError("group_property_check: missing entry Phi(s,t,x)");
      if (!direct->valid) continue;
      defects[j] = std::max(defects[j], (outer.node(t - u) - direct->x_out).norm());
      ++counts[j];
    }
  });
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    rep.max_defect = std::max(rep.max_defect, defects[j]);
    rep.triples += counts[j];
  }
  rep.passed = rep.max_defect <= tol;
  return rep;
}

InverseReport inverse_flow_check(FieldPtr a, const Vec& x, const Grid& grid, std::size_t s_index,
                                 std::size_t t_index, const FlowSolver& solver, double tol) {
  require(s_index < t_index && t_index <= grid.cells(), "inverse_flow_check: need s < t on the grid");
  InverseReport rep;
  const Path fwd = solve_from(*a, x, grid, s_index, solver);
  rep.forward = fwd.node(t_index - s_index);
  const double t = grid.node(t_index);
  const FieldPtr rev = reversed_field(a, t);
  const Grid back(0.0, t - grid.node(s_index), t_index - s_index);
  const Path bwd = solve_from(*rev, rep.forward, back, 0, solver);
  rep.round_trip = bwd.back();
  rep.error = (rep.round_trip - x).norm();
  rep.passed = rep.error <= tol;
  return rep;
}

namespace {

Path matrix_affine_solve(const Field& a, const Path& base, const SolverOptions& options, bool adjoint) {
  require(a.has_jacobian(), "variational equation: the field needs a Jacobian");
  const std::size_t d = base.dim();
  require(a.in_dim() == d && a.out_dim() == d, "variational equation: field must map R^d to R^d");
  const StateGerm germ = [&a, &base, d, adjoint](double s, double t, const Vec& js) -> Vec {
    const Mat da = a.jacobian_increment(s, t, base.at(s));
    const Mat j = unflatten(js, d);
    return adjoint ? flatten(-(j * da)) : flatten(da * j);
  };
  FixedPointOptions fp;
  fp.tol = options.tol;
  fp.max_iter = options.max_iter;
  fp.refine_levels = options.refine_levels;
  fp.extrapolate = options.extrapolate;
  const Vec id = flatten(Mat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  FixedPointResult res = windowed_fixed_point(germ, id, base.grid(), fp);
  return Path(base.grid(), std::move(res.states));
}

}  // namespace

Path variational_solve(const Field& a, const Path& base, const SolverOptions& options) {
  return matrix_affine_solve(a, base, options, false);
}

Path adjoint_solve(const Field& a, const Path& base, const SolverOptions& options) {
  return matrix_affine_solve(a, base, options, true);
}

JacobianDetReport jacobian_det_check(const Field& a, const Vec& x, const Grid& grid, const SolverOptions& options) {
  const Path flow = picard_solve(a, x, grid, options).solution;
  const Path jac = variational_solve(a, flow, options);
  const std::size_t d = flow.dim();
  const FieldPtr div = divergence_field(std::shared_ptr<const Field>(&a, [](const Field*) {}));
  SewOptions sew_opt;
  sew_opt.refine_levels = options.refine_levels;
  sew_opt.early_stop = false;
  const IntegralResult integral = nonlinear_young_integral(*div, flow, grid, sew_opt);
  JacobianDetReport rep;
  Mat det(1, static_cast<Eigen::Index>(grid.size())), ex(1, static_cast<Eigen::Index>(grid.size()));
  rep.min_det = std::numeric_limits<double>::infinity();
  rep.max_det = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dj = unflatten(jac.node(i), d).determinant();
    const double e = std::exp(integral.path.node(i, 0));
    det(0, static_cast<Eigen::Index>(i)) = dj;
    ex(0, static_cast<Eigen::Index>(i)) = e;
    rep.min_det = std::min(rep.min_det, dj);
    rep.max_det = std::max(rep.max_det, dj);
    rep.max_relative_gap = std::max(rep.max_relative_gap, std::abs(dj - e) / e);
  }
  rep.det = Path(grid, std::move(det));
  rep.exp_div = Path(grid, std::move(ex));
  return rep;
}

ItoDerivative ito_map_derivative(const Field& a, const Field& b, const Vec& x0, const Grid& grid,
                                 const SolverOptions& options) {
  require(b.in_dim() == a.in_dim() && b.out_dim() == a.out_dim(),
          "ito_map_derivative: B must have the same dimensions as A");
  ItoDerivative out{Path::constant(grid, x0), Path::constant(grid, x0), 0.0, 0.0};
  out.solution = picard_solve(a, x0, grid, options).solution;
  const std::size_t d = out.solution.dim();
  const Path m = variational_solve(a, out.solution, options);
  const Path n = adjoint_solve(a, out.solution, options);
  const auto di = static_cast<Eigen::Index>(d);
  out.min_abs_det = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mat mi = unflatten(m.node(i), d);
    out.min_abs_det = std::min(out.min_abs_det, std::abs(mi.determinant()));
    out.inverse_defect =
        std::max(out.inverse_defect, (unflatten(n.node(i), d) * mi - Mat::Identity(di, di)).cwiseAbs().maxCoeff());
  }
  if (out.min_abs_det < 1e-8) throw DomainError("ito_map_derivative: variational Jacobian is near-singular");
  SewOptions sew_opt;
  sew_opt.refine_levels = options.refine_levels;
  sew_opt.early_stop = false;
  const IntegralResult integral = young_integral_bilinear(n, b, out.solution, grid, sew_opt);
  Mat y(di, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    y.col(static_cast<Eigen::Index>(i)) = unflatten(m.node(i), d) * integral.path.node(i);
  }
  out.derivative = Path(grid, std::move(y));
  return out;
}

}  // namespace ycalc
