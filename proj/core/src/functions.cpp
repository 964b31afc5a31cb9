#include "ycalc/functions.hpp"

#include <algorithm>
#include <cmath>

#include "ycalc/errors.hpp"

namespace ycalc::fn {

VectorFunction identity(std::size_t dim) {
  return {"identity", dim, dim, [](const Vec& x) { return x; },
          [dim](const Vec&) { return Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)); }};
}

VectorFunction constant(const Vec& v, std::size_t in_dim) {
  const auto out = static_cast<Eigen::Index>(v.size());
  return {"constant", in_dim, static_cast<std::size_t>(v.size()), [v](const Vec&) { return v; },
          [out, in_dim](const Vec&) { return Mat::Zero(out, static_cast<Eigen::Index>(in_dim)); }};
}

VectorFunction sin(std::size_t dim) {
  return {"sin", dim, dim, [](const Vec& x) -> Vec { return x.array().sin(); },
          [](const Vec& x) -> Mat { return x.array().cos().matrix().asDiagonal(); }};
}

VectorFunction cos(std::size_t dim) {
  return {"cos", dim, dim, [](const Vec& x) -> Vec { return x.array().cos(); },
          [](const Vec& x) -> Mat { return (-x.array().sin()).matrix().asDiagonal(); }};
}

VectorFunction tanh(std::size_t dim) {
  return {"tanh", dim, dim, [](const Vec& x) -> Vec { return x.array().tanh(); },
          [](const Vec& x) -> Mat {
            const Eigen::ArrayXd th = x.array().tanh();
            return (1.0 - th * th).matrix().asDiagonal();
          }};
}

VectorFunction linear(const Mat& m) {
  return {"linear", static_cast<std::size_t>(m.cols()), static_cast<std::size_t>(m.rows()),
          [m](const Vec& x) -> Vec { return m * x; }, [m](const Vec&) { return m; }};
}

VectorFunction rotation(double rate) {
  Mat m(2, 2);
  m << 0.0, rate, -rate, 0.0;
  VectorFunction g = linear(m);
  g.name = "rotation";
  return g;
}

VectorFunction swirl() {
  return {"swirl", 2, 2,
          [](const Vec& x) {
            Vec y(2);
            y << std::sin(x(1)), std::cos(x(0));
            return y;
          },
          [](const Vec& x) {
            Mat j(2, 2);
            j << 0.0, std::cos(x(1)), -std::sin(x(0)), 0.0;
            return j;
          }};
}

VectorFunction scaled(const VectorFunction& g, double scale) {
  VectorFunction out = g;
  out.value = [v = g.value, scale](const Vec& x) -> Vec { return scale * v(x); };
  if (g.jacobian) out.jacobian = [j = g.jacobian, scale](const Vec& x) -> Mat { return scale * j(x); };
  return out;
}

MatrixFunction constant_matrix(const Mat& m, std::size_t in_dim) {
  return {"constant_matrix", in_dim, static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
          [m](const Vec&) { return m; },
          [r = m.rows(), c = m.cols()](const Vec&, std::size_t) { return Mat::Zero(r, c); }};
}

MatrixFunction column(const VectorFunction& g) {
  MatrixFunction f;
  f.name = g.name;
  f.in_dim = g.in_dim;
  f.rows = g.out_dim;
  f.cols = 1;
  f.value = [v = g.value](const Vec& x) -> Mat { return v(x); };
  if (g.jacobian) {
    f.partial = [j = g.jacobian](const Vec& x, std::size_t k) -> Mat {
      return j(x).col(static_cast<Eigen::Index>(k));
    };
  }
  return f;
}

ScalarFunction squared_norm(std::size_t dim) {
  return {"squared_norm", dim, [](const Vec& x) { return x.squaredNorm(); },
          [](const Vec& x) -> Vec { return 2.0 * x; }};
}

ScalarFunction constant_scalar(double c, std::size_t dim) {
  return {"constant", dim, [c](const Vec&) { return c; },
          [dim](const Vec&) -> Vec { return Vec::Zero(static_cast<Eigen::Index>(dim)); }};
}

ScalarFunction gaussian(const Vec& center, double width) {
  const double inv = 1.0 / (2.0 * width * width);
  return {"gaussian", static_cast<std::size_t>(center.size()),
          [center, inv](const Vec& x) { return std::exp(-(x - center).squaredNorm() * inv); },
          [center, inv](const Vec& x) -> Vec {
            return (-2.0 * inv * std::exp(-(x - center).squaredNorm() * inv)) * (x - center);
          }};
}

TimeProfile linear_time() {
  return {"linear", [](double t) { return t; }, [](double) { return 1.0; }};
}

TimeProfile sine_time(double frequency) {
  return {"sine", [frequency](double t) { return std::sin(frequency * t); },
          [frequency](double t) { return frequency * std::cos(frequency * t); }};
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names = {"constant", "cos", "identity", "linear",
                                    "rotation", "sin", "swirl",    "tanh"};
  std::sort(names.begin(), names.end());
  return names;
}

VectorFunction make_vector_function(const std::string& name, std::size_t dim, const Mat& matrix,
                                    const Vec& vector, double rate) {
  if (name == "identity") return identity(dim);
  if (name == "sin") return sin(dim);
  if (name == "cos") return cos(dim);
  if (name == "tanh") return tanh(dim);
  if (name == "linear") {
    require(matrix.rows() == static_cast<Eigen::Index>(dim) && matrix.cols() == static_cast<Eigen::Index>(dim),
            "function 'linear' needs a dim x dim matrix");
    return linear(matrix);
  }
  if (name == "rotation") {
    require(dim == 2, "function 'rotation' is two-dimensional");
    return rotation(rate);
  }
  if (name == "swirl") {
    require(dim == 2, "function 'swirl' is two-dimensional");
    return swirl();
  }
  if (name == "constant") {
    require(vector.size() == static_cast<Eigen::Index>(dim), "function 'constant' needs a vector of length dim");
    return constant(vector, dim);
  }
  throw DomainError("unknown function '" + name + "'");
}

}  // namespace ycalc::fn
