#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "build.hpp"
#include "ycalc/csv.hpp"
#include "ycalc/drivers.hpp"
#include "ycalc/germ_catalog.hpp"
#include "ycalc/integral.hpp"
#include "ycalc/parabolic.hpp"
#include "ycalc/rng.hpp"
#include "ycalc/sewing.hpp"
#include "ycalc/transport.hpp"

namespace ycalc::cli {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

std::string cell(double v) { return format_double(v); }
std::string cell(std::size_t v) { return std::to_string(v); }

void expect(RunResult& r, bool ok, const std::string& what) {
  r.messages.push_back((ok ? "PASS " : "FAIL ") + what);
  if (!ok) r.status = kExitAssertion;
}

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<Vec> get_points(const json& c, const std::string& key) {
  const json& v = c.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError("key '" + key + "' must be a nonempty array of points");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    json wrap = {{"p", v[i]}};
    out.push_back(get_vec(wrap, "p"));
  }
  return out;
}

RateReference build_reference(const std::string& name) {
  if (name == "picard") return RateReference::picard;
  if (name == "euler_at_4max") return RateReference::euler_at_4max;
  throw ConfigError("reference must be 'picard' or 'euler_at_4max', got '" + name + "'");
}

Grid experiment_grid(const json& c) { return build_grid(get_object(c, "grid")); }

// ---------------------------------------------------------------- integrate

RunResult run_integrate(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const Path& x = ctx.driver(get_string(c, "path"));
  SewOptions o;
  o.refine_levels = get_unsigned(c, "refine_levels");
  o.tolerance = get_double(c, "tolerance");
  const std::string kind = get_string(c, "integrand");
  IntegralResult res;
  if (kind == "nonlinear") {
    res = nonlinear_young_integral(*a, x, ctx.grid(), o);
  } else if (kind == "dx") {
    res = young_integral_dx(*a, x, ctx.grid(), o);
  } else {
    throw ConfigError("integrand must be 'nonlinear' or 'dx', got '" + kind + "'");
  }
  RunResult r;
  r.csv = path_table(res.path).str();
  r.summary = {{"final", to_json(res.path.back())},
               {"levels_used", res.levels_used},
               {"converged", res.converged},
               {"last_refinement_delta", res.last_refinement_delta}};
  r.messages.push_back("integral at t1 = " + num(res.path.back()(0)) + " after " +
                       std::to_string(res.levels_used) + " refinement levels");
  return r;
}

// ------------------------------------------------------------- sewing-bound

RunResult run_sewing_bound(const json& c) {
  const Grid g = experiment_grid(c);
  if (g.t0() < 0.0 || g.t1() > 1.0) throw ConfigError("sewing-bound germs live on [0, 1]");
  const std::string which = get_string(c, "germ");
  const double beta_override = get_double(c, "beta");
  const unsigned levels = get_unsigned(c, "refine_levels");
  std::vector<CatalogGerm> catalog = germ_catalog(get_size(c, "seed"));
  if (which != "all") {
    std::erase_if(catalog, [&](const CatalogGerm& e) { return e.name != which; });
    if (catalog.empty()) throw ConfigError("unknown germ '" + which + "'; use 'all' or one of the `list` germs");
  }
  RunResult r;
  std::string csv = csv_row({"germ", "beta", "constant", "defect", "max_ratio", "passed"});
  double worst = 0.0;
  json per = json::object();
  std::string single;
  for (const auto& e : catalog) {
    const double beta = beta_override > 0.0 ? beta_override : e.beta;
    const SewingBoundReport rep = check_sewing_bound(e.germ, g, beta, levels);
    csv += csv_row({e.name, cell(beta), cell(rep.constant), cell(rep.defect), cell(rep.max_ratio),
                    rep.passed ? "1" : "0"});
    per[e.name] = rep.max_ratio;
    worst = std::max(worst, rep.max_ratio);
    expect(r, rep.passed, e.name + " max ratio " + num(rep.max_ratio) + " at beta " + num(beta));
    if (which != "all") single = rep.table().str();
  }
  r.csv = which == "all" ? csv : single;
  r.summary = {{"germs", catalog.size()}, {"max_ratio", worst}, {"ratios", per}};
  if (which == "all") {
    std::ostringstream table;
    for (const auto& e : catalog) {
      char line[96];
      std::snprintf(line, sizeof line, "  %-22s %.4f", e.name.c_str(), per[e.name].get<double>());
      table << line << '\n';
    }
    r.messages.push_back("max ratio by germ:\n" + table.str());
  }
  return r;
}

// -------------------------------------------------------------------- solve

SolveReport dispatch_solve(const Field& a, const Vec& x0, const Grid& g, const FlowSolver& s) {
  return s.kind == FlowSolver::Kind::euler ? euler_solve(a, x0, g, s.options) : picard_solve(a, x0, g, s.options);
}

RunResult run_solve(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const FlowSolver s = build_flow_solver(get_object(c, "solver"));
  const SolveReport rep = dispatch_solve(*a, get_vec(c, "x0"), ctx.grid(), s);
  RunResult r;
  r.csv = path_table(rep.solution).str();
  r.summary = {{"final", to_json(rep.solution.back())},
               {"iterations", rep.iterations},
               {"final_residual", rep.final_residual},
               {"windows", rep.windows},
               {"holder_exponent", rep.alpha_estimate.exponent},
               {"holder_seminorm", rep.alpha_estimate.seminorm},
               {"flags", rep.flags}};
  for (const auto& f : rep.flags) r.messages.push_back("flag: " + f);
  return r;
}

// --------------------------------------------------------------- euler-rate

RunResult run_euler_rate(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const RateTable t = euler_rate_experiment(*a, get_vec(c, "x0"), ctx.grid().t0(), ctx.grid().t1(),
                                            get_sizes(c, "n_list"), build_reference(get_string(c, "reference")),
                                            build_solver_options(get_object(c, "solver")));
  const double lo = get_double(c, "slope_min"), hi = get_double(c, "slope_max");
  RunResult r;
  r.csv = t.table().str();
  r.summary = {{"fitted_slope", t.fitted_slope}, {"slope_min", lo}, {"slope_max", hi}, {"errors", t.errors}};
  expect(r, t.fitted_slope >= lo && t.fitted_slope <= hi,
         "fitted slope " + num(t.fitted_slope) + " in [" + num(lo) + ", " + num(hi) + "]");
  return r;
}

// ------------------------------------------------------------- ito-residual

RunResult run_ito_residual(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr f = ctx.field(get_object(c, "field"));
  const Path& x = ctx.driver(get_string(c, "path"));
  const unsigned levels = get_unsigned(c, "refine_levels");
  const std::size_t check = get_size(c, "check_levels");
  const double min_ratio = get_double(c, "min_ratio");
  const double slack = get_double(c, "ratio_slack");
  if (check == 0 || check > levels) throw ConfigError("check_levels must lie in [1, refine_levels]");
  const ItoReport rep = ito_residual(*f, x, ctx.grid(), levels);
  RunResult r;
  std::string csv = csv_row({"level", "sup_residual", "ratio"});
  for (std::size_t l = 0; l < rep.level_sups.size(); ++l) {
    csv += csv_row({cell(l), cell(rep.level_sups[l]),
                    cell(l ? rep.level_ratios[l - 1] : std::numeric_limits<double>::quiet_NaN())});
  }
  r.csv = csv;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < check; ++k) worst = std::min(worst, rep.level_ratios[k]);
  r.summary = {{"sup_residual", rep.sup_residual}, {"level_sups", rep.level_sups},
               {"min_ratio_checked", worst}, {"fitted_slope", rep.fitted_slope}};
  expect(r, worst >= min_ratio * (1.0 - slack),
         "residual ratio over the first " + std::to_string(check) + " levels " + num(worst) + " >= " + num(min_ratio));
  return r;
}

// -------------------------------------------------------------- flow-checks

RunResult run_flow_checks(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const std::vector<Vec> points = get_points(c, "points");
  const std::vector<std::size_t> starts = get_sizes(c, "start_indices");
  const std::vector<std::size_t> ends = get_sizes(c, "end_indices");
  const FlowSolver s = build_flow_solver(get_object(c, "solver"));
  const double tol = get_double(c, "tol");
  const std::size_t n = ctx.grid().cells();
  for (std::size_t i : starts) {
    if (i > n) throw ConfigError("start index beyond the grid");
  }
  for (std::size_t i : ends) {
    if (i > n) throw ConfigError("end index beyond the grid");
  }
  RunResult r;
  std::string csv = csv_row({"check", "point", "s_index", "t_index", "value"});
  const FlowTable table = compute_flow(a, points, ctx.grid(), starts, ends, s);
  const GroupReport group = group_property_check(table, tol);
  csv += csv_row({"group", "all", "all", "all", cell(group.max_defect)});
  expect(r, group.passed, "group defect " + num(group.max_defect) + " over " + std::to_string(group.triples) +
                              " triples <= " + num(tol));
  const std::size_t s0 = *std::min_element(starts.begin(), starts.end());
  const std::size_t t1 = *std::max_element(ends.begin(), ends.end());
  double worst_inverse = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const InverseReport inv = inverse_flow_check(a, points[p], ctx.grid(), s0, t1, s, tol);
    csv += csv_row({"inverse", cell(p), cell(s0), cell(t1), cell(inv.error)});
    worst_inverse = std::max(worst_inverse, inv.error);
  }
  expect(r, worst_inverse <= tol, "inverse round trip " + num(worst_inverse) + " <= " + num(tol));
  r.summary = {{"group_defect", group.max_defect}, {"inverse_error", worst_inverse}};
  if (get_bool(c, "jacobian_check")) {
    const double jtol = get_double(c, "jacobian_tol");
    double worst = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const JacobianDetReport j = jacobian_det_check(*a, points[p], ctx.grid(), s.options);
      csv += csv_row({"jacobian", cell(p), "0", cell(n), cell(j.max_relative_gap)});
      worst = std::max(worst, j.max_relative_gap);
    }
    r.summary["jacobian_gap"] = worst;
    expect(r, worst <= jtol, "det J against exp(int div A) " + num(worst) + " <= " + num(jtol));
  }
  r.csv = csv;
  return r;
}

// -------------------------------------------------------------- sensitivity

RunResult run_sensitivity(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const FieldPtr b = ctx.field(get_object(c, "perturbation"));
  const Vec x0 = get_vec(c, "x0");
  const double eps = get_double(c, "epsilon");
  const double tol = get_double(c, "tol");
  const SolverOptions o = build_solver_options(get_object(c, "solver"));
  const ItoDerivative d = ito_map_derivative(*a, *b, x0, ctx.grid(), o);
  const FieldPtr shifted = sum_field({{1.0, a}, {eps, b}});
  const Path xe = picard_solve(*shifted, x0, ctx.grid(), o).solution;
  const Path& x = d.solution;
  std::vector<std::string> header{"t"};
  for (std::size_t k = 1; k <= x.dim(); ++k) {
    header.push_back("x" + std::to_string(k));
    header.push_back("derivative" + std::to_string(k));
    header.push_back("finite_difference" + std::to_string(k));
  }
  std::string csv = csv_row(header);
  double gap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<std::string> row{cell(ctx.grid().node(i))};
    for (std::size_t k = 0; k < x.dim(); ++k) {
      const double fd = (xe.node(i, k) - x.node(i, k)) / eps;
      row.push_back(cell(x.node(i, k)));
      row.push_back(cell(d.derivative.node(i, k)));
      row.push_back(cell(fd));
      gap = std::max(gap, std::abs(fd - d.derivative.node(i, k)));
    }
    csv += csv_row(row);
  }
  RunResult r;
  r.csv = csv;
  r.summary = {{"sup_gap", gap}, {"inverse_defect", d.inverse_defect}, {"min_abs_det", d.min_abs_det}};
  expect(r, gap <= tol, "derivative against finite difference " + num(gap) + " <= " + num(tol));
  return r;
}

// ---------------------------------------------------------------- transport

LatticeBox build_box(const json& spec) {
  return {get_vec(spec, "lo"), get_vec(spec, "hi"), get_size(spec, "points_per_dim")};
}

RunResult run_transport(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const FieldPtr w = ctx.field(get_object(c, "weight"));
  const ScalarFunction u0 = build_scalar_function(get_object(c, "u0"));
  const ScalarFunction phi = build_scalar_function(get_object(c, "phi"));
  const TransportSolution u{a, w, u0.value, ctx.grid(), build_flow_solver(get_object(c, "solver"))};
  const WeakResidualFit fit = weak_residual_fit(u, phi, build_box(get_object(c, "box")),
                                                get_double(c, "min_exponent"), get_size(c, "max_gap"));
  RunResult r;
  std::string csv = csv_row({"gap", "residual"});
  for (std::size_t k = 0; k < fit.gaps.size(); ++k) csv += csv_row({cell(fit.gaps[k]), cell(fit.residuals[k])});
  r.csv = csv;
  r.summary = {{"fitted_slope", fit.fitted_slope}, {"threshold", fit.threshold}, {"residuals", fit.residuals}};
  expect(r, fit.passed, "weak residual exponent " + num(fit.fitted_slope) + " >= " + num(fit.threshold));
  return r;
}

// ------------------------------------------------------------------ duality

RunResult run_duality(const json& c) {
  BuildContext ctx(c, experiment_grid(c));
  const FieldPtr a = ctx.field(get_object(c, "field"));
  const FieldPtr w = ctx.field(get_object(c, "weight"));
  const ScalarFunction u0 = build_scalar_function(get_object(c, "u0"));
  const json& ps = get_object(c, "particles");
  const std::size_t count = get_size(ps, "count");
  const double spread = get_double(ps, "spread");
  if (count == 0) throw ConfigError("particles.count must be positive");
  ParticleMeasure mu;
  NormalStream rng(substream_seed(ctx.seed(), "particles"));
  for (std::size_t i = 0; i < count; ++i) {
    Vec p(static_cast<Eigen::Index>(a->in_dim()));
    for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = spread * rng.normal();
    mu.positions.push_back(p);
    mu.weights.push_back(1.0 / static_cast<double>(count));
  }
  const std::size_t checkpoints = get_size(c, "checkpoints");
  const std::size_t n = ctx.grid().cells();
  if (checkpoints == 0 || checkpoints > n) throw ConfigError("checkpoints must lie in [1, grid.n]");
  std::vector<std::size_t> times;
  for (std::size_t k = 1; k <= checkpoints; ++k) times.push_back(k * n / checkpoints);
  const DualityReport rep = duality_check(a, w, u0.value, mu, ctx.grid(), times, build_flow_solver(get_object(c, "solver")));
  const double tol = get_double(c, "tol");
  RunResult r;
  r.csv = rep.table().str();
  r.summary = {{"initial_pairing", rep.initial_pairing}, {"max_drift", rep.max_drift}};
  expect(r, rep.max_drift <= tol, "pairing drift " + num(rep.max_drift) + " <= " + num(tol) + " (1 + |pairing|)");
  return r;
}

// ---------------------------------------------------------------- parabolic

SpectralSystem build_system(const json& spec) {
  const std::string kind = get_string(spec, "kind");
  if (kind == "dirichlet") return SpectralSystem::dirichlet(get_size(spec, "modes"));
  if (kind == "eigenvalues") {
    const Vec v = get_vec(spec, "values");
    return SpectralSystem(std::vector<double>(v.data(), v.data() + v.size()));
  }
  throw ConfigError("system kind must be 'dirichlet' or 'eigenvalues', got '" + kind + "'");
}

RunResult run_parabolic_smoothing(const json& c) {
  const Grid g = experiment_grid(c);
  const SpectralSystem sys = build_system(get_object(c, "system"));
  const json& sm = get_object(c, "smoothing");
  const std::size_t drivers = get_size(sm, "drivers");
  const double hurst = get_double(sm, "hurst");
  const double gamma = get_double(sm, "gamma");
  const double delta_out = get_double(sm, "delta_out");
  const double band = get_double(sm, "band");
  if (drivers == 0) throw ConfigError("smoothing.drivers must be positive");
  const std::uint64_t seed = get_size(c, "seed");
  std::vector<double> sup(drivers), semi(drivers), ratio(drivers);
  for (std::size_t k = 0; k < drivers; ++k) {
    const Path y = sample_fbm(hurst, g, sys.modes(), substream_seed(seed, "smoothing:" + std::to_string(k)));
    sup[k] = mild_convolution(sys, y, delta_out).sup_norm;
    semi[k] = holder_seminorm(y, gamma).seminorm;
    ratio[k] = sup[k] / semi[k];
  }
  double mean = 0.0;
  for (double v : ratio) mean += v / static_cast<double>(drivers);
  std::string csv = csv_row({"driver", "sup_norm", "holder_seminorm", "constant", "relative"});
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t k = 0; k < drivers; ++k) {
    csv += csv_row({cell(k), cell(sup[k]), cell(semi[k]), cell(ratio[k]), cell(ratio[k] / mean)});
    lo = std::min(lo, ratio[k] / mean);
    hi = std::max(hi, ratio[k] / mean);
  }
  RunResult r;
  r.csv = csv;
  r.summary = {{"mean_constant", mean}, {"min_relative", lo}, {"max_relative", hi}};
  expect(r, lo >= 1.0 - band && hi <= 1.0 + band,
         "smoothing constant within " + num(lo) + ".." + num(hi) + " of its mean (band " + num(band) + ")");
  return r;
}

RunResult run_parabolic(const json& c) {
  const std::string mode = get_string(c, "mode");
  if (mode == "smoothing") return run_parabolic_smoothing(c);
  if (mode != "solve") throw ConfigError("parabolic mode must be 'solve' or 'smoothing', got '" + mode + "'");
  BuildContext ctx(c, experiment_grid(c));
  const SpectralSystem sys = build_system(get_object(c, "system"));
  const json& fs = get_object(c, "field");
  const FieldPtr b = ctx.field(fs);
  const Vec x0 = get_vec(c, "x0");
  ParabolicOptions o;
  o.kappa = get_double(c, "kappa");
  o.delta = get_double(c, "delta");
  o.solver = build_solver_options(get_object(c, "solver"));
  const ParabolicReport rep = parabolic_solve(sys, *b, x0, ctx.grid(), o);
  RunResult r;
  r.csv = rep.table().str();
  r.summary = {{"final", to_json(rep.report.solution.back())},
               {"holder_kappa_delta", rep.holder_kappa_delta},
               {"sup_norm_delta_kappa", rep.sup_norm_delta_kappa}};
  if (get_bool(c, "compare_linear")) {
    // dx = -lambda x dt + x dphi(t) integrates to x0 exp(-lambda t + phi(t) - phi(t0)).
    if (sys.modes() != 1 || get_string(fs, "kind") != "smooth" || get_string(fs, "function") != "identity") {
      throw ConfigError("compare_linear needs one eigenvalue and a smooth identity field");
    }
    const double lambda = sys.eigenvalues()[0];
    // The identity field at x = 1 evaluates the profile itself.
    const Vec one = Vec::Ones(1);
    const double t0 = ctx.grid().t0();
    double err = 0.0;
    for (std::size_t i = 0; i < ctx.grid().size(); ++i) {
      const double t = ctx.grid().node(i);
      const double exact = x0(0) * std::exp(-lambda * (t - t0) + b->increment(t0, t, one)(0));
      err = std::max(err, std::abs(rep.report.solution.node(i, 0) - exact));
    }
    const double tol = get_double(c, "closed_form_tol");
    r.summary["closed_form_error"] = err;
    expect(r, err <= tol, "scalar linear case against closed form " + num(err) + " <= " + num(tol));
  }
  return r;
}

// --------------------------------------------------------------- fractional

RunResult run_fractional(const json& c) {
  const Grid base = experiment_grid(c);
  const std::vector<std::size_t> ns = get_sizes(c, "n_list");
  if (ns.size() < 2) throw ConfigError("n_list needs at least two grids");
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    if (ns[k] == 0 || ns[k + 1] != 2 * ns[k]) throw ConfigError("n_list must double at every step");
  }
  const Vec x0 = get_vec(c, "x0");
  const double delta = get_double(c, "delta");
  const SolverOptions o = build_solver_options(get_object(c, "solver"));
  std::vector<Path> sols;
  for (std::size_t n : ns) {
    BuildContext ctx(c, make_uniform_grid(base.t0(), base.t1(), n));
    const FieldPtr a = ctx.field(get_object(c, "field"));
    sols.push_back(solve_fractional(*a, x0, delta, ctx.grid(), o).solution);
  }
  std::vector<double> gaps;
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    double gap = 0.0;
    for (std::size_t i = 0; i <= ns[k]; ++i) {
      gap = std::max(gap, (sols[k].node(i) - sols[k + 1].node(2 * i)).cwiseAbs().maxCoeff());
    }
    gaps.push_back(gap);
  }
  const double min_ratio = get_double(c, "min_ratio");
  RunResult r;
  std::string csv = csv_row({"n", "gap", "ratio"});
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const double ratio = k ? gaps[k - 1] / gaps[k] : std::numeric_limits<double>::quiet_NaN();
    if (k) worst = std::min(worst, ratio);
    csv += csv_row({cell(ns[k]), cell(gaps[k]), cell(ratio)});
  }
  r.csv = csv;
  r.summary = {{"gaps", gaps}, {"min_ratio_observed", worst}};
  if (gaps.size() >= 2) {
    expect(r, worst >= min_ratio, "doubling gap ratio " + num(worst) + " >= " + num(min_ratio));
  }
  return r;
}

// ----------------------------------------------------------------- defaults

json parse(const char* text) { return json::parse(text); }

std::vector<ExperimentInfo> make_registry() {
  std::vector<ExperimentInfo> reg;
  reg.push_back({"integrate", "nonlinear Young integral of a field along a path", parse(R"({
    "experiment": "integrate", "seed": 7, "output": "results/integrate",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 256},
    "drivers": {
      "y": {"kind": "smooth", "function": "sin", "amplitude": 1.0, "frequency": 3.0, "n": 65536},
      "x": {"kind": "weierstrass", "alpha": 0.8, "levels": 10, "amplitude": 1.0, "phase": 2.3}
    },
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "path": "x", "integrand": "nonlinear", "refine_levels": 12, "tolerance": 1e-9
  })"), run_integrate});
  reg.push_back({"sewing-bound", "sewing estimate against the catalog germs", parse(R"({
    "experiment": "sewing-bound", "seed": 7, "output": "results/sewing-bound",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 128},
    "germ": "all", "beta": 0.0, "refine_levels": 10
  })"), run_sewing_bound});
  reg.push_back({"solve", "solve a Young differential equation", parse(R"({
    "experiment": "solve", "seed": 7, "output": "results/solve",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 512},
    "drivers": {"y": {"kind": "weierstrass", "alpha": 0.8, "levels": 10, "amplitude": 1.0, "phase": 0.4}},
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "x0": [0.5],
    "solver": {"kind": "picard", "tol": 1e-10, "max_iter": 200, "refine_levels": 4,
               "extrapolate": true, "residual_levels": 4}
  })"), run_solve});
  reg.push_back({"euler-rate", "convergence rate of the Euler scheme", parse(R"({
    "experiment": "euler-rate", "seed": 7, "output": "results/euler-rate",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 2048},
    "drivers": {"y": {"kind": "weierstrass", "alpha": 0.75, "levels": 17, "amplitude": 1.0, "phase": 0.3,
                      "n": 524288}},
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "x0": [0.5], "n_list": [64, 128, 256, 512, 1024, 2048], "reference": "picard",
    "solver": {"tol": 1e-10, "max_iter": 200, "refine_levels": 6, "extrapolate": true, "residual_levels": 4},
    "slope_min": 0.35, "slope_max": 0.75
  })"), run_euler_rate});
  reg.push_back({"ito-residual", "chain rule residual under refinement", parse(R"({
    "experiment": "ito-residual", "seed": 7, "output": "results/ito-residual",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 256},
    "drivers": {
      "y": {"kind": "fbm", "hurst": 0.8, "dim": 1, "amplitude": 1.0},
      "x": {"kind": "weierstrass", "alpha": 0.8, "levels": 8, "amplitude": 1.0, "phase": 0.1}
    },
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "path": "x", "refine_levels": 4, "check_levels": 4, "min_ratio": 2.0, "ratio_slack": 1e-9
  })"), run_ito_residual});
  reg.push_back({"flow-checks", "group property, inverse flow and Jacobian identity", parse(R"({
    "experiment": "flow-checks", "seed": 7, "output": "results/flow-checks",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 1024},
    "drivers": {"y": {"kind": "fbm", "hurst": 0.8, "dim": 1, "amplitude": 1.0}},
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "points": [[-1.0], [-0.5], [0.0], [0.5], [1.0]],
    "start_indices": [0, 256], "end_indices": [0, 256, 512, 768, 1024],
    "solver": {"kind": "picard", "tol": 1e-9, "max_iter": 200, "refine_levels": 4,
               "extrapolate": true, "residual_levels": 4},
    "tol": 1e-3, "jacobian_check": true, "jacobian_tol": 1e-3
  })"), run_flow_checks});
  reg.push_back({"sensitivity", "derivative of the solution map in the field", parse(R"({
    "experiment": "sensitivity", "seed": 7, "output": "results/sensitivity",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 512},
    "drivers": {
      "y": {"kind": "weierstrass", "alpha": 0.8, "levels": 10, "amplitude": 1.0, "phase": 0.2},
      "z": {"kind": "weierstrass", "alpha": 0.8, "levels": 10, "amplitude": 1.0, "phase": 1.7}
    },
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "perturbation": {"kind": "product", "function": "cos", "dim": 1, "driver": "z"},
    "x0": [0.4], "epsilon": 1e-4, "tol": 1e-3,
    "solver": {"tol": 1e-13, "max_iter": 200, "refine_levels": 6, "extrapolate": true, "residual_levels": 4}
  })"), run_sensitivity});
  reg.push_back({"transport", "weak residual of the transport solution", parse(R"({
    "experiment": "transport", "seed": 7, "output": "results/transport",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 32},
    "drivers": {
      "w": {"kind": "smooth", "function": "power", "exponent": 0.8, "amplitude": 0.5},
      "y": {"kind": "smooth", "function": "power", "exponent": 0.8, "amplitude": 0.25}
    },
    "field": {"kind": "product", "function": "rotation", "dim": 2, "rate": 1.0, "driver": "w"},
    "weight": {"kind": "product", "function": "constant", "dim": 2, "vector": [1.0], "driver": "y"},
    "u0": {"kind": "gaussian", "center": [0.5, 0.0], "width": 0.7071067811865476},
    "phi": {"kind": "gaussian", "center": [0.0, 0.0], "width": 0.7},
    "box": {"lo": [-4.5, -4.5], "hi": [4.5, 4.5], "points_per_dim": 24},
    "min_exponent": 1.6, "max_gap": 16,
    "solver": {"kind": "picard", "tol": 1e-10, "max_iter": 200, "refine_levels": 4,
               "extrapolate": true, "residual_levels": 4}
  })"), run_transport});
  reg.push_back({"duality", "pairing of transport and continuity solutions", parse(R"({
    "experiment": "duality", "seed": 7, "output": "results/duality",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 256},
    "drivers": {
      "w": {"kind": "weierstrass", "alpha": 0.8, "levels": 8, "amplitude": 1.0, "phase": 0.4},
      "y": {"kind": "weierstrass", "alpha": 0.8, "levels": 8, "amplitude": 1.0, "phase": 2.3}
    },
    "field": {"kind": "product", "function": "rotation", "dim": 2, "rate": 1.0, "driver": "w"},
    "weight": {"kind": "product", "function": "constant", "dim": 2, "vector": [1.0], "driver": "y"},
    "u0": {"kind": "gaussian", "center": [0.0, 0.0], "width": 0.7071067811865476},
    "particles": {"count": 200, "spread": 1.0},
    "checkpoints": 8, "tol": 1e-3,
    "solver": {"kind": "picard", "tol": 1e-10, "max_iter": 200, "refine_levels": 4,
               "extrapolate": true, "residual_levels": 4}
  })"), run_duality});
  reg.push_back({"parabolic", "mild solutions of spectral parabolic systems", parse(R"({
    "experiment": "parabolic", "seed": 7, "output": "results/parabolic",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 2048},
    "mode": "solve",
    "system": {"kind": "eigenvalues", "values": [2.0]},
    "drivers": {},
    "field": {"kind": "smooth", "function": "identity", "dim": 1, "profile": "power", "exponent": 2.0,
              "amplitude": 0.5},
    "x0": [1.0], "kappa": 0.5, "delta": 0.0,
    "solver": {"tol": 1e-10, "max_iter": 200, "refine_levels": 4, "extrapolate": true, "residual_levels": 4},
    "compare_linear": true, "closed_form_tol": 1e-4,
    "smoothing": {"drivers": 10, "hurst": 0.75, "gamma": 0.6, "delta_out": 0.3, "band": 0.5}
  })"), run_parabolic});
  reg.push_back({"fractional", "fractional Young equation under grid doubling", parse(R"({
    "experiment": "fractional", "seed": 7, "output": "results/fractional",
    "grid": {"t0": 0.0, "t1": 1.0, "n": 128},
    "drivers": {"y": {"kind": "weierstrass", "alpha": 0.8, "levels": 8, "amplitude": 1.0, "phase": 0.4}},
    "field": {"kind": "product", "function": "sin", "dim": 1, "driver": "y"},
    "x0": [0.5], "delta": 0.9, "n_list": [128, 256, 512, 1024, 2048], "min_ratio": 2.0,
    "solver": {"tol": 1e-12, "max_iter": 200, "refine_levels": 4, "extrapolate": true, "residual_levels": 4}
  })"), run_fractional});
  std::sort(reg.begin(), reg.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return reg;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> reg = make_registry();
  return reg;
}

}  // namespace ycalc::cli
