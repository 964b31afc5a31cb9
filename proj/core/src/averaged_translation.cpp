#include "ycalc/averaged_translation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "ycalc/errors.hpp"
#include "ycalc/sewing.hpp"

namespace ycalc {
namespace {

constexpr std::size_t kMaxCacheEntries = 1 << 14;

class AveragedTranslation final : public Field {
 public:
  AveragedTranslation(FieldPtr a, Path y, Grid grid, unsigned levels)
      : Field(a->in_dim(), a->out_dim()), a_(std::move(a)), y_(std::move(y)), grid_(grid), levels_(levels) {
    require(y_.dim() == a_->in_dim(), "averaged translation: dim(y) must equal the field's input dimension");
    require(levels_ < 30, "averaged translation: refine_levels too large");
  }

  Vec eval(double t, const Vec& z) const override {
    t = std::clamp(t, grid_.t0(), grid_.t1());
    const auto nodes = node_values(z);
    const std::size_t i = grid_.locate(t);
    const double a = grid_.node(i);
    Vec base = nodes->col(static_cast<Eigen::Index>(i));
    if (t == a) return base;
    if (t == grid_.node(i + 1)) return nodes->col(static_cast<Eigen::Index>(i + 1));
    return base + piece(a, t, z);
  }

  Vec increment(double s, double t, const Vec& z) const override {
    if (t <= s) return Vec::Zero(static_cast<Eigen::Index>(out_dim()));
    // Split at interior grid nodes so node-to-node increments match the cache.
    std::size_t i = grid_.locate(s);
    if (grid_.node(i + 1) <= s) ++i;
    Vec acc = Vec::Zero(static_cast<Eigen::Index>(out_dim()));
    double lo = s;
    while (lo < t) {
      const double hi = std::min(t, grid_.node(i + 1));
      if (hi > lo) acc += piece(lo, hi, z);
      lo = hi;
      if (i + 1 >= grid_.cells()) {
        if (lo < t) acc += piece(lo, t, z);
        break;
      }
      ++i;
    }
    return acc;
  }

  bool has_jacobian() const override { return true; }
  Mat jacobian(double t, const Vec& z) const override {
    return fd([&](const Vec& zz) { return eval(t, zz); }, z);
  }
  Mat jacobian_increment(double s, double t, const Vec& z) const override {
    return fd([&](const Vec& zz) { return increment(s, t, zz); }, z);
  }

  std::string describe() const override { return "translation(" + a_->describe() + ")"; }

 private:
  template <class F>
  Mat fd(const F& f, const Vec& z) const {
    const double h = 1e-5 * (1.0 + z.norm());
    Mat j(static_cast<Eigen::Index>(out_dim()), z.size());
    Vec zp = z, zm = z;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      zp(k) += h;
      zm(k) -= h;
      j.col(k) = (f(zp) - f(zm)) / (2.0 * h);
      zp(k) = z(k);
      zm(k) = z(k);
    }
    return j;
  }

  Vec germ(double s, double t, const Vec& z) const { return a_->increment(s, t, z + y_.at(s)); }

  unsigned levels_for(double length) const {
    const double cells = length / grid_.mesh();
    if (cells >= 1.0) return levels_;
    const double k = std::floor(-std::log2(cells));
    return k >= levels_ ? 0u : levels_ - static_cast<unsigned>(k);
  }

  // Dyadic Riemann sum of the germ over [a, b]; same node formula as the
  // sewing engine so whole cells reproduce the cached cell sums.
  Vec piece(double a, double b, const Vec& z) const {
    const std::size_t pieces = std::size_t{1} << levels_for(b - a);
    const double h = b - a;
    Vec acc = Vec::Zero(static_cast<Eigen::Index>(out_dim()));
    double s = a;
    for (std::size_t m = 1; m <= pieces; ++m) {
      const double t = (m == pieces) ? b : a + h * (static_cast<double>(m) / static_cast<double>(pieces));
      acc += germ(s, t, z);
      s = t;
    }
    return acc;
  }

  std::shared_ptr<const Mat> node_values(const Vec& z) const {
    std::string key(reinterpret_cast<const char*>(z.data()), sizeof(double) * static_cast<std::size_t>(z.size()));
    {
      std::shared_lock lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    SewOptions opt;
    opt.refine_levels = levels_;
    opt.early_stop = false;
    const Germ g{out_dim(), [&](double s, double t) { return germ(s, t, z); }};
    auto values = std::make_shared<const Mat>(sew(g, grid_, opt).path.values());
    std::unique_lock lock(mutex_);
    if (cache_.size() >= kMaxCacheEntries) cache_.clear();
    cache_[key] = values;
    return values;
  }

  FieldPtr a_;
  Path y_;
  Grid grid_;
  unsigned levels_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::string, std::shared_ptr<const Mat>> cache_;
};

}  // namespace

FieldPtr averaged_translation(FieldPtr a, const Path& y, const Grid& grid, unsigned refine_levels) {
  return std::make_shared<AveragedTranslation>(std::move(a), y, grid, refine_levels);
}

}  // namespace ycalc
