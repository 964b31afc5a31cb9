#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ycalc/functions.hpp"
#include "ycalc/path.hpp"
#include "ycalc/types.hpp"

namespace ycalc {

/// Space-time driver A(t, x): R^d -> R^m for each t, with A(0, .) = 0.
///
/// Solvers and integrals only consume increments A_{s,t}(x); `increment`
/// defaults to eval(t, x) - eval(s, x) and concrete fields override it when a
/// direct formula is cheaper or exact.
class Field {
 public:
  Field(std::size_t in_dim, std::size_t out_dim) : in_dim_(in_dim), out_dim_(out_dim) {}
  virtual ~Field() = default;

  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return out_dim_; }

  virtual Vec eval(double t, const Vec& x) const = 0;
  virtual Vec increment(double s, double t, const Vec& x) const { return eval(t, x) - eval(s, x); }

  virtual bool has_jacobian() const { return false; }
  /// m x d matrix DA(t, x). Throws DomainError when unavailable.
  virtual Mat jacobian(double t, const Vec& x) const;
  virtual Mat jacobian_increment(double s, double t, const Vec& x) const {
    return jacobian(t, x) - jacobian(s, x);
  }

  virtual bool has_time_derivative() const { return false; }
  virtual Vec time_derivative(double t, const Vec& x) const;

  virtual std::string describe() const = 0;

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// A == 0.
FieldPtr zero_field(std::size_t in_dim, std::size_t out_dim);

/// A(t, x) = f(x) (y_t - y_0) with f matrix-valued (rows x dim(y)).
FieldPtr product_field(const MatrixFunction& f, const Path& y);
/// A(t, x) = g(x) (y_t - y_0) for a scalar path y.
FieldPtr product_field(const VectorFunction& g, const Path& y);

/// A(t, x) = sum_j g_j(x) (y^j_t - y^j_0) with scalar paths y^j.
FieldPtr series_field(const std::vector<std::pair<VectorFunction, Path>>& terms);

/// A(t, x) = g(x) (phi(t) - phi(0)); time derivative g(x) phi'(t).
FieldPtr smooth_field(const VectorFunction& g, const TimeProfile& phi);

/// A(t, x) = int_0^t b(x + w_s) ds by composite midpoint quadrature with
/// `quad_per_cell` points per cell of w's grid; dA/dt = b(x + w_t).
FieldPtr averaged_field(const VectorFunction& b, const Path& w, unsigned quad_per_cell);

/// sum_i c_i A^i.
FieldPtr sum_field(const std::vector<std::pair<double, FieldPtr>>& terms);
inline FieldPtr difference_field(FieldPtr a, FieldPtr b) {
  return sum_field({{1.0, std::move(a)}, {-1.0, std::move(b)}});
}

/// Time reversal on [0, t_end]: A~(r, z) = A(t_end - r, z) - A(t_end, z).
FieldPtr reversed_field(FieldPtr a, double t_end);

/// Scalar field div A(t, z) = trace DA(t, z); central differences with step
/// 1e-5 (1 + |z|) when A has no Jacobian. Requires in_dim == out_dim.
FieldPtr divergence_field(FieldPtr a);

struct LambdaFieldSpec {
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  std::string name = "lambda";
  std::function<Vec(double, const Vec&)> eval;
  std::function<Mat(double, const Vec&)> jacobian;
  std::function<Vec(double, const Vec&)> time_derivative;
};
/// Field from callables; the caller guarantees eval(0, .) = 0.
FieldPtr lambda_field(LambdaFieldSpec spec);

/// Central-difference Jacobian of x -> A(t, x) with step 1e-5 (1 + |x|).
Mat finite_difference_jacobian(const Field& a, double t, const Vec& x);

}  // namespace ycalc
