#include "build.hpp"

#include <cmath>
#include <vector>

#include "ycalc/drivers.hpp"
#include "ycalc/errors.hpp"
#include "ycalc/rng.hpp"

namespace ycalc::cli {
namespace {

const json& member(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("missing key '" + key + "'");
  return j.at(key);
}

[[noreturn]] void wrong_type(const std::string& key, const char* expected) {
  throw ConfigError("key '" + key + "' must be " + expected);
}

TimeProfile build_profile(const json& spec) {
  const std::string kind = get_string(spec, "profile");
  if (kind == "linear") return fn::linear_time();
  if (kind == "sine") return fn::sine_time(get_double(spec, "frequency"));
  if (kind == "power") {
    const double p = get_double(spec, "exponent");
    const double c = get_double(spec, "amplitude");
    return {"power", [p, c](double t) { return c * std::pow(t, p); },
            [p, c](double t) { return p == 0.0 ? 0.0 : c * p * std::pow(t, p - 1.0); }};
  }
  throw ConfigError("unknown time profile '" + kind + "' (linear, power, sine)");
}

}  // namespace

double get_double(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_number()) wrong_type(key, "a number");
  return v.get<double>();
}

std::size_t get_size(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) wrong_type(key, "a nonnegative integer");
  return v.get<std::size_t>();
}

unsigned get_unsigned(const json& j, const std::string& key) {
  return static_cast<unsigned>(get_size(j, key));
}

bool get_bool(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_boolean()) wrong_type(key, "a boolean");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_string()) wrong_type(key, "a string");
  return v.get<std::string>();
}

const json& get_object(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_object()) wrong_type(key, "an object");
  return v;
}

Vec get_vec(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (v.is_number()) {
    Vec out(1);
    out << v.get<double>();
    return out;
  }
  if (!v.is_array()) wrong_type(key, "a number array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) wrong_type(key, "a number array");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Mat get_mat(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_array() || v.empty() || !v[0].is_array()) wrong_type(key, "an array of rows");
  const std::size_t rows = v.size(), cols = v[0].size();
  Mat out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].size() != cols) wrong_type(key, "an array of equal-length rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!v[r][c].is_number()) wrong_type(key, "an array of number rows");
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[r][c].get<double>();
    }
  }
  return out;
}

std::vector<std::size_t> get_sizes(const json& j, const std::string& key) {
  const json& v = member(j, key);
  if (!v.is_array()) wrong_type(key, "an integer array");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) wrong_type(key, "an array of nonnegative integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

Grid build_grid(const json& spec) {
  return make_uniform_grid(get_double(spec, "t0"), get_double(spec, "t1"), get_size(spec, "n"));
}

SolverOptions build_solver_options(const json& spec) {
  SolverOptions o;
  o.tol = get_double(spec, "tol");
  o.max_iter = get_unsigned(spec, "max_iter");
  o.refine_levels = get_unsigned(spec, "refine_levels");
  o.extrapolate = get_bool(spec, "extrapolate");
  o.residual_levels = get_unsigned(spec, "residual_levels");
  return o;
}

FlowSolver build_flow_solver(const json& spec) {
  FlowSolver s;
  const std::string kind = get_string(spec, "kind");
  if (kind == "picard") {
    s.kind = FlowSolver::Kind::picard;
  } else if (kind == "euler") {
    s.kind = FlowSolver::Kind::euler;
  } else {
    throw ConfigError("flow solver kind must be 'picard' or 'euler', got '" + kind + "'");
  }
  s.options = build_solver_options(spec);
  return s;
}

VectorFunction build_function(const json& spec) {
  const std::string name = get_string(spec, "function");
  const std::size_t dim = get_size(spec, "dim");
  const Mat matrix = spec.contains("matrix") ? get_mat(spec, "matrix") : Mat();
  const Vec vector = spec.contains("vector") ? get_vec(spec, "vector") : Vec();
  const double rate = spec.contains("rate") ? get_double(spec, "rate") : 1.0;
  // A constant's output is its vector, so `dim` only fixes the input.
  VectorFunction f = name == "constant" ? fn::constant(get_vec(spec, "vector"), dim)
                                        : fn::make_vector_function(name, dim, matrix, vector, rate);
  if (spec.contains("scale")) f = fn::scaled(f, get_double(spec, "scale"));
  return f;
}

ScalarFunction build_scalar_function(const json& spec) {
  const std::string kind = get_string(spec, "kind");
  if (kind == "gaussian") return fn::gaussian(get_vec(spec, "center"), get_double(spec, "width"));
  if (kind == "squared_norm") return fn::squared_norm(get_size(spec, "dim"));
  throw ConfigError("unknown scalar function '" + kind + "' (gaussian, squared_norm)");
}

BuildContext::BuildContext(const json& config, Grid grid)
    : config_(config), grid_(grid), seed_(get_size(config, "seed")) {}

const Path& BuildContext::driver(const std::string& name) {
  if (auto it = drivers_.find(name); it != drivers_.end()) return it->second;
  const json& all = get_object(config_, "drivers");
  if (!all.contains(name)) throw ConfigError("unknown driver '" + name + "'");
  const json& spec = all.at(name);
  const std::string kind = get_string(spec, "kind");
  const std::size_t n = spec.contains("n") ? get_size(spec, "n") : 0;
  const Grid g = n == 0 ? grid_ : make_uniform_grid(grid_.t0(), grid_.t1(), n);
  Path p;
  if (kind == "weierstrass") {
    p = sample_weierstrass(get_double(spec, "alpha"), get_unsigned(spec, "levels"), get_double(spec, "amplitude"),
                           g, get_double(spec, "phase"));
  } else if (kind == "fbm") {
    const Path b = sample_fbm(get_double(spec, "hurst"), g, get_size(spec, "dim"),
                              substream_seed(seed_, "driver:" + name));
    p = Path(g, b.values() * get_double(spec, "amplitude"));
  } else if (kind == "smooth") {
    const std::string f = get_string(spec, "function");
    const double c = get_double(spec, "amplitude");
    const double k = spec.contains("frequency") ? get_double(spec, "frequency") : 1.0;
    const double e = spec.contains("exponent") ? get_double(spec, "exponent") : 1.0;
    std::function<double(double)> h;
    if (f == "linear") {
      h = [c](double t) { return c * t; };
    } else if (f == "sin") {
      h = [c, k](double t) { return c * std::sin(k * t); };
    } else if (f == "cos") {
      h = [c, k](double t) { return c * std::cos(k * t); };
    } else if (f == "power") {
      h = [c, e](double t) { return c * std::pow(t, e); };
    } else {
      throw ConfigError("unknown smooth driver function '" + f + "' (cos, linear, power, sin)");
    }
    p = sample_smooth(g, h);
  } else if (kind == "stack") {
    std::vector<Path> parts;
    for (const auto& c : member(spec, "components")) {
      if (!c.is_string()) throw ConfigError("stack components must be driver names");
      parts.push_back(driver(c.get<std::string>()).resampled(g));
    }
    p = stack_paths(parts);
  } else {
    throw ConfigError("unknown driver kind '" + kind + "' (fbm, smooth, stack, weierstrass)");
  }
  return drivers_.emplace(name, std::move(p)).first->second;
}

FieldPtr BuildContext::field(const json& spec) {
  const std::string kind = get_string(spec, "kind");
  if (kind == "zero") return zero_field(get_size(spec, "in_dim"), get_size(spec, "out_dim"));
  if (kind == "product") return product_field(build_function(spec), driver(get_string(spec, "driver")));
  if (kind == "averaged") {
    return averaged_field(build_function(spec), driver(get_string(spec, "driver")),
                          get_unsigned(spec, "quad_per_cell"));
  }
  if (kind == "smooth") return smooth_field(build_function(spec), build_profile(spec));
  if (kind == "series") {
    std::vector<std::pair<VectorFunction, Path>> terms;
    for (const auto& t : member(spec, "terms")) terms.emplace_back(build_function(t), driver(get_string(t, "driver")));
    return series_field(terms);
  }
  if (kind == "sum") {
    std::vector<std::pair<double, FieldPtr>> terms;
    for (const auto& t : member(spec, "terms")) terms.emplace_back(get_double(t, "weight"), field(get_object(t, "field")));
    return sum_field(terms);
  }
  throw ConfigError("unknown field kind '" + kind + "' (averaged, product, series, smooth, sum, zero)");
}

}  // namespace ycalc::cli
