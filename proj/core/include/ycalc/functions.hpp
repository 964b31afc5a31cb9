#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ycalc/types.hpp"

namespace ycalc {

/// g : R^in -> R^out with an optional Jacobian (out x in).
struct VectorFunction {
  std::string name;
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jacobian;

  bool has_jacobian() const noexcept { return static_cast<bool>(jacobian); }
};

/// f : R^in -> R^{rows x cols}; `partial(x, k)` is the derivative in x_k.
struct MatrixFunction {
  std::string name;
  std::size_t in_dim = 1;
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::function<Mat(const Vec&)> value;
  std::function<Mat(const Vec&, std::size_t)> partial;

  bool has_derivative() const noexcept { return static_cast<bool>(partial); }
};

/// F : R^in -> R with gradient; used for first integrals and test functions.
struct ScalarFunction {
  std::string name;
  std::size_t in_dim = 1;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

/// Scalar time profile phi with derivative; fields built from it subtract
/// phi(0) so that they vanish at t = 0.
struct TimeProfile {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

namespace fn {

VectorFunction identity(std::size_t dim);
VectorFunction constant(const Vec& v, std::size_t in_dim);
VectorFunction sin(std::size_t dim);
VectorFunction cos(std::size_t dim);
VectorFunction tanh(std::size_t dim);
/// x -> M x.
VectorFunction linear(const Mat& m);
/// 2-d infinitesimal rotation x -> rate * (x2, -x1).
VectorFunction rotation(double rate);
/// 2-d field x -> (sin x2, cos x1).
VectorFunction swirl();
/// x -> scale * g(x).
VectorFunction scaled(const VectorFunction& g, double scale);

/// Constant matrix-valued function (derivative zero).
MatrixFunction constant_matrix(const Mat& m, std::size_t in_dim);
/// Column view of a vector function (cols = 1).
MatrixFunction column(const VectorFunction& g);

ScalarFunction squared_norm(std::size_t dim);
ScalarFunction constant_scalar(double c, std::size_t dim);
/// exp(-|x - center|^2 / (2 width^2)).
ScalarFunction gaussian(const Vec& center, double width);

TimeProfile linear_time();
TimeProfile sine_time(double frequency);

/// Sorted names of vector functions understood by `make_vector_function`.
std::vector<std::string> catalog_names();

/// Catalog lookup: identity, sin, cos, tanh, linear (needs matrix),
/// rotation (rate), swirl, constant (needs vector). Throws DomainError for
/// unknown names or inconsistent parameters.
VectorFunction make_vector_function(const std::string& name, std::size_t dim,
                                    const Mat& matrix = Mat(), const Vec& vector = Vec(),
                                    double rate = 1.0);

}  // namespace fn

}  // namespace ycalc
