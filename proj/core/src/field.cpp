#include "ycalc/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ycalc/errors.hpp"

namespace ycalc {

Mat Field::jacobian(double, const Vec&) const {
  throw DomainError("field '" + describe() + "' has no spatial Jacobian");
}

Vec Field::time_derivative(double, const Vec&) const {
  throw DomainError("field '" + describe() + "' has no time derivative");
}

Mat finite_difference_jacobian(const Field& a, double t, const Vec& x) {
  const double h = 1e-5 * (1.0 + x.norm());
  Mat j(static_cast<Eigen::Index>(a.out_dim()), x.size());
  Vec xp = x, xm = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    xp(k) = x(k) + h;
    xm(k) = x(k) - h;
    j.col(k) = (a.eval(t, xp) - a.eval(t, xm)) / (2.0 * h);
    xp(k) = x(k);
    xm(k) = x(k);
  }
  return j;
}

namespace {

class ZeroField final : public Field {
 public:
  using Field::Field;
  Vec eval(double, const Vec&) const override { return Vec::Zero(static_cast<Eigen::Index>(out_dim())); }
  Vec increment(double, double, const Vec&) const override {
    return Vec::Zero(static_cast<Eigen::Index>(out_dim()));
  }
  bool has_jacobian() const override { return true; }
  Mat jacobian(double, const Vec&) const override {
    return Mat::Zero(static_cast<Eigen::Index>(out_dim()), static_cast<Eigen::Index>(in_dim()));
  }
  Mat jacobian_increment(double, double, const Vec&) const override {
    return Mat::Zero(static_cast<Eigen::Index>(out_dim()), static_cast<Eigen::Index>(in_dim()));
  }
  bool has_time_derivative() const override { return true; }
  Vec time_derivative(double, const Vec&) const override {
    return Vec::Zero(static_cast<Eigen::Index>(out_dim()));
  }
  std::string describe() const override { return "zero"; }
};

class MatrixProductField final : public Field {
 public:
  MatrixProductField(MatrixFunction f, Path y)
      : Field(f.in_dim, f.rows), f_(std::move(f)), y_(std::move(y)), y0_(y_.front()) {
    require(f_.cols == y_.dim(), "product field: f has " + std::to_string(f_.cols) +
                                     " columns but the driver has dimension " + std::to_string(y_.dim()));
  }
  Vec eval(double t, const Vec& x) const override { return f_.value(x) * (y_.at(t) - y0_); }
  Vec increment(double s, double t, const Vec& x) const override {
    return f_.value(x) * (y_.at(t) - y_.at(s));
  }
  bool has_jacobian() const override { return f_.has_derivative(); }
  Mat jacobian(double t, const Vec& x) const override { return jac(x, y_.at(t) - y0_); }
  Mat jacobian_increment(double s, double t, const Vec& x) const override {
    return jac(x, y_.at(t) - y_.at(s));
  }
  std::string describe() const override { return "product(" + f_.name + ")"; }

 private:
  Mat jac(const Vec& x, const Vec& dy) const {
    if (!f_.has_derivative()) return Field::jacobian(0.0, x);
    Mat j(static_cast<Eigen::Index>(out_dim()), static_cast<Eigen::Index>(in_dim()));
    for (std::size_t k = 0; k < in_dim(); ++k) j.col(static_cast<Eigen::Index>(k)) = f_.partial(x, k) * dy;
    return j;
  }
  MatrixFunction f_;
  Path y_;
  Vec y0_;
};

class ScalarProductField final : public Field {
 public:
  ScalarProductField(VectorFunction g, Path y)
      : Field(g.in_dim, g.out_dim), g_(std::move(g)), y_(std::move(y)), y0_(y_.node(0, 0)) {
    require(y_.dim() == 1, "product field: vector function needs a scalar driver");
  }
  Vec eval(double t, const Vec& x) const override { return g_.value(x) * (y_.at(t, 0) - y0_); }
  Vec increment(double s, double t, const Vec& x) const override {
    return g_.value(x) * (y_.at(t, 0) - y_.at(s, 0));
  }
  bool has_jacobian() const override { return g_.has_jacobian(); }
  Mat jacobian(double t, const Vec& x) const override {
    if (!g_.has_jacobian()) return Field::jacobian(t, x);
    return g_.jacobian(x) * (y_.at(t, 0) - y0_);
  }
  Mat jacobian_increment(double s, double t, const Vec& x) const override {
    if (!g_.has_jacobian()) return Field::jacobian(t, x);
    return g_.jacobian(x) * (y_.at(t, 0) - y_.at(s, 0));
  }
  std::string describe() const override { return "product(" + g_.name + ")"; }

 private:
  VectorFunction g_;
  Path y_;
  double y0_;
};

class SmoothField final : public Field {
 public:
  SmoothField(VectorFunction g, TimeProfile phi)
      : Field(g.in_dim, g.out_dim), g_(std::move(g)), phi_(std::move(phi)), phi0_(phi_.value(0.0)) {}
  Vec eval(double t, const Vec& x) const override { return g_.value(x) * (phi_.value(t) - phi0_); }
  Vec increment(double s, double t, const Vec& x) const override {
    return g_.value(x) * (phi_.value(t) - phi_.value(s));
  }
  bool has_jacobian() const override { return g_.has_jacobian(); }
  Mat jacobian(double t, const Vec& x) const override {
    if (!g_.has_jacobian()) return Field::jacobian(t, x);
    return g_.jacobian(x) * (phi_.value(t) - phi0_);
  }
  Mat jacobian_increment(double s, double t, const Vec& x) const override {
    if (!g_.has_jacobian()) return Field::jacobian(t, x);
    return g_.jacobian(x) * (phi_.value(t) - phi_.value(s));
  }
  bool has_time_derivative() const override { return true; }
  Vec time_derivative(double t, const Vec& x) const override { return g_.value(x) * phi_.derivative(t); }
  std::string describe() const override { return "smooth(" + g_.name + "," + phi_.name + ")"; }

 private:
  VectorFunction g_;
  TimeProfile phi_;
  double phi0_;
};

// A(t) = sum of full cells before cell(t) + partial(cell(t), t), where the
// partial integral over [c, t] uses q midpoint nodes. Increments are formed
// from the same pieces so that A_{s,t} = A(t) - A(s) holds term by term.
class AveragedField final : public Field {
 public:
  AveragedField(VectorFunction b, Path w, unsigned q)
      : Field(b.in_dim, b.out_dim), b_(std::move(b)), w_(std::move(w)), q_(q) {
    require(q_ >= 1, "averaged field: quad_per_cell must be at least 1");
    require(b_.in_dim == b_.out_dim && b_.in_dim == w_.dim(),
            "averaged field: b must map R^d to R^d with d = dim(w)");
  }

  Vec eval(double t, const Vec& x) const override { return increment(w_.grid().t0(), t, x); }

  Vec increment(double s, double t, const Vec& x) const override {
    return integrate(s, t, [&](const Vec& z) { return b_.value(z); }, x);
  }

  bool has_jacobian() const override { return b_.has_jacobian(); }
  Mat jacobian(double t, const Vec& x) const override { return jacobian_increment(w_.grid().t0(), t, x); }
  Mat jacobian_increment(double s, double t, const Vec& x) const override {
    if (!b_.has_jacobian()) return Field::jacobian(t, x);
    return integrate(s, t, [&](const Vec& z) { return b_.jacobian(z); }, x);
  }
  bool has_time_derivative() const override { return true; }
  Vec time_derivative(double t, const Vec& x) const override { return b_.value(x + w_.at(t)); }
  std::string describe() const override { return "averaged(" + b_.name + ")"; }

 private:
  // Midpoint rule with q nodes on [a, b] of z -> g(x + w_z).
  template <class G>
  auto piece(double a, double b, const G& g, const Vec& x) const {
    const double h = (b - a) / q_;
    auto acc = g(x + w_.at(a + 0.5 * h));
    for (unsigned k = 1; k < q_; ++k) acc += g(x + w_.at(a + (k + 0.5) * h));
    acc *= h;
    return acc;
  }

  template <class G>
  auto integrate(double s, double t, const G& g, const Vec& x) const -> decltype(g(x)) {
    using R = decltype(g(x));
    const Grid& grid = w_.grid();
    const double t0 = grid.t0();
    auto partial = [&](std::size_t c, double u) -> R {
      const double a = grid.node(c);
      if (u <= a) return R::Zero(g(x).rows(), g(x).cols());
      return piece(a, u, g, x);
    };
    if (t <= s) {
      R z = g(x);
      z.setZero();
      return z;
    }
    s = std::max(s, t0);
    const std::size_t cs = grid.locate(s);
    std::size_t ct = grid.locate(t);
    // t at a node belongs to the full cell ending there.
    if (ct > cs && t == grid.node(ct)) {
      --ct;
    }
    if (ct == cs) {
      if (t == grid.node(ct + 1)) return piece(grid.node(cs), t, g, x) - partial(cs, s);
      return partial(cs, t) - partial(cs, s);
    }
    R acc = piece(grid.node(cs), grid.node(cs + 1), g, x) - partial(cs, s);
    for (std::size_t c = cs + 1; c < ct; ++c) acc += piece(grid.node(c), grid.node(c + 1), g, x);
    if (t == grid.node(ct + 1)) {
      acc += piece(grid.node(ct), t, g, x);
    } else {
      acc += partial(ct, t);
    }
    return acc;
  }

  VectorFunction b_;
  Path w_;
  unsigned q_;
};

class SumField final : public Field {
 public:
  explicit SumField(std::vector<std::pair<double, FieldPtr>> terms)
      : Field(terms.at(0).second->in_dim(), terms.at(0).second->out_dim()), terms_(std::move(terms)) {
    for (const auto& [c, f] : terms_) {
      require(f->in_dim() == in_dim() && f->out_dim() == out_dim(), "sum field: dimension mismatch");
    }
  }
  Vec eval(double t, const Vec& x) const override {
    Vec acc = terms_[0].first * terms_[0].second->eval(t, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) acc += terms_[i].first * terms_[i].second->eval(t, x);
    return acc;
  }
  Vec increment(double s, double t, const Vec& x) const override {
    Vec acc = terms_[0].first * terms_[0].second->increment(s, t, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      acc += terms_[i].first * terms_[i].second->increment(s, t, x);
    }
    return acc;
  }
  bool has_jacobian() const override {
    for (const auto& term : terms_) {
      if (!term.second->has_jacobian()) return false;
    }
    return true;
  }
  Mat jacobian(double t, const Vec& x) const override {
    Mat acc = terms_[0].first * terms_[0].second->jacobian(t, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) acc += terms_[i].first * terms_[i].second->jacobian(t, x);
    return acc;
  }
  Mat jacobian_increment(double s, double t, const Vec& x) const override {
    Mat acc = terms_[0].first * terms_[0].second->jacobian_increment(s, t, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      acc += terms_[i].first * terms_[i].second->jacobian_increment(s, t, x);
    }
    return acc;
  }
  bool has_time_derivative() const override {
    for (const auto& term : terms_) {
      if (!term.second->has_time_derivative()) return false;
    }
    return true;
  }
  Vec time_derivative(double t, const Vec& x) const override {
    Vec acc = terms_[0].first * terms_[0].second->time_derivative(t, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      acc += terms_[i].first * terms_[i].second->time_derivative(t, x);
    }
    return acc;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "sum(";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) os << ",";
      os << terms_[i].first << "*" << terms_[i].second->describe();
    }
    os << ")";
    return os.str();
  }

 private:
  std::vector<std::pair<double, FieldPtr>> terms_;
};

class ReversedField final : public Field {
 public:
  ReversedField(FieldPtr a, double t_end) : Field(a->in_dim(), a->out_dim()), a_(std::move(a)), t_end_(t_end) {}
  Vec eval(double r, const Vec& z) const override { return -a_->increment(t_end_ - r, t_end_, z); }
  Vec increment(double r1, double r2, const Vec& z) const override {
    return -a_->increment(t_end_ - r2, t_end_ - r1, z);
  }
  bool has_jacobian() const override { return a_->has_jacobian(); }
  Mat jacobian(double r, const Vec& z) const override { return -a_->jacobian_increment(t_end_ - r, t_end_, z); }
  Mat jacobian_increment(double r1, double r2, const Vec& z) const override {
    return -a_->jacobian_increment(t_end_ - r2, t_end_ - r1, z);
  }
  bool has_time_derivative() const override { return a_->has_time_derivative(); }
  Vec time_derivative(double r, const Vec& z) const override { return -a_->time_derivative(t_end_ - r, z); }
  std::string describe() const override { return "reversed(" + a_->describe() + ")"; }

 private:
  FieldPtr a_;
  double t_end_;
};

class DivergenceField final : public Field {
 public:
  explicit DivergenceField(FieldPtr a) : Field(a->in_dim(), 1), a_(std::move(a)) {
    require(a_->in_dim() == a_->out_dim(), "divergence: field must map R^d to R^d");
  }
  Vec eval(double t, const Vec& z) const override {
    Vec v(1);
    v(0) = (a_->has_jacobian() ? a_->jacobian(t, z) : finite_difference_jacobian(*a_, t, z)).trace();
    return v;
  }
  Vec increment(double s, double t, const Vec& z) const override {
    Vec v(1);
    if (a_->has_jacobian()) {
      v(0) = a_->jacobian_increment(s, t, z).trace();
    } else {
      v(0) = (finite_difference_jacobian(*a_, t, z) - finite_difference_jacobian(*a_, s, z)).trace();
    }
    return v;
  }
  std::string describe() const override { return "div(" + a_->describe() + ")"; }

 private:
  FieldPtr a_;
};

class LambdaField final : public Field {
 public:
  explicit LambdaField(LambdaFieldSpec spec) : Field(spec.in_dim, spec.out_dim), spec_(std::move(spec)) {
    require(static_cast<bool>(spec_.eval), "lambda field: eval is required");
  }
  Vec eval(double t, const Vec& x) const override { return spec_.eval(t, x); }
  bool has_jacobian() const override { return static_cast<bool>(spec_.jacobian); }
  Mat jacobian(double t, const Vec& x) const override {
    if (!spec_.jacobian) return Field::jacobian(t, x);
    return spec_.jacobian(t, x);
  }
  bool has_time_derivative() const override { return static_cast<bool>(spec_.time_derivative); }
  Vec time_derivative(double t, const Vec& x) const override {
    if (!spec_.time_derivative) return Field::time_derivative(t, x);
    return spec_.time_derivative(t, x);
  }
  std::string describe() const override { return spec_.name; }

 private:
  LambdaFieldSpec spec_;
};

}  // namespace

FieldPtr zero_field(std::size_t in_dim, std::size_t out_dim) {
  return std::make_shared<ZeroField>(in_dim, out_dim);
}

FieldPtr product_field(const MatrixFunction& f, const Path& y) {
  return std::make_shared<MatrixProductField>(f, y);
}

FieldPtr product_field(const VectorFunction& g, const Path& y) {
  if (y.dim() != 1) return std::make_shared<MatrixProductField>(fn::column(g), y);
  return std::make_shared<ScalarProductField>(g, y);
}

FieldPtr series_field(const std::vector<std::pair<VectorFunction, Path>>& terms) {
  require(!terms.empty(), "series field: need at least one term");
  std::vector<std::pair<double, FieldPtr>> parts;
  for (const auto& [g, y] : terms) parts.emplace_back(1.0, product_field(g, y));
  if (parts.size() == 1) return parts.front().second;
  return sum_field(parts);
}

FieldPtr smooth_field(const VectorFunction& g, const TimeProfile& phi) {
  return std::make_shared<SmoothField>(g, phi);
}

FieldPtr averaged_field(const VectorFunction& b, const Path& w, unsigned quad_per_cell) {
  return std::make_shared<AveragedField>(b, w, quad_per_cell);
}

FieldPtr sum_field(const std::vector<std::pair<double, FieldPtr>>& terms) {
  require(!terms.empty(), "sum field: need at least one term");
  return std::make_shared<SumField>(terms);
}

FieldPtr reversed_field(FieldPtr a, double t_end) { return std::make_shared<ReversedField>(std::move(a), t_end); }

FieldPtr divergence_field(FieldPtr a) { return std::make_shared<DivergenceField>(std::move(a)); }

FieldPtr lambda_field(LambdaFieldSpec spec) { return std::make_shared<LambdaField>(std::move(spec)); }

}  // namespace ycalc
