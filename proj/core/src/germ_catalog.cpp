#include "ycalc/germ_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "ycalc/drivers.hpp"
#include "ycalc/field.hpp"
#include "ycalc/functions.hpp"
#include "ycalc/rng.hpp"

namespace ycalc {
namespace {

Vec scalar(double v) {
  Vec r(1);
  r << v;
  return r;
}

Germ along(FieldPtr a, const Path& x) {
  return {a->out_dim(), [a, x](double s, double t) { return a->increment(s, t, x.at(s)); }};
}

}  // namespace

std::vector<CatalogGerm> germ_catalog(std::uint64_t seed) {
  const Grid fine(0.0, 1.0, std::size_t{1} << 17);
  const Grid coarse(0.0, 1.0, 1024);
  const Path w7 = sample_weierstrass(0.7, 7, 1.0, fine, 0.9);
  const Path x7 = sample_weierstrass(0.7, 7, 1.0, fine, 1.7);
  const Path w8 = sample_weierstrass(0.8, 10, 1.0, fine, 0.4);
  const Path x8 = sample_weierstrass(0.8, 10, 1.0, fine, 2.3);
  const Path v8 = sample_weierstrass(0.8, 10, 0.5, fine, 1.1);
  const Path b8 = sample_fbm(0.8, fine, 1, substream_seed(seed, "germ-fbm"));
  const Path c8 = sample_fbm(0.8, coarse, 1, substream_seed(seed, "germ-averaged"));
  const Path x2 = stack_paths(std::vector<Path>{x8, v8});

  std::vector<CatalogGerm> out;
  // Smooth germs.
  out.push_back({"square", 2.0, {1, [](double s, double t) { return scalar((t - s) * (t - s)); }}});
  out.push_back({"cube", 2.0, {1, [](double s, double t) { return scalar((t - s) * (t - s) * (t - s)); }}});
  out.push_back({"riemann-linear", 2.0, {1, [](double s, double t) { return scalar(s * (t - s)); }}});
  out.push_back({"additive-plus-square", 2.0,
                 {1, [](double s, double t) { return scalar(std::sin(t) - std::sin(s) + (t - s) * (t - s)); }}});
  out.push_back({"riemann-cos", 1.6, {1, [](double s, double t) { return scalar(std::cos(s) * (t - s)); }}});
  out.push_back({"power-1.5", 1.3, {1, [](double s, double t) { return scalar(std::pow(t - s, 1.5)); }}});

  // Young germs and product fields at exponent 0.7 + 0.7.
  out.push_back({"young-x-dx-0.7", 1.3, {1, [x7](double s, double t) {
                   return scalar(x7.at(s, 0) * (x7.at(t, 0) - x7.at(s, 0)));
                 }}});
  for (const char* f : {"identity", "sin", "tanh"}) {
    out.push_back({std::string("product-") + f + "-0.7", 1.3,
                   along(product_field(fn::make_vector_function(f, 1), w7), x7)});
  }

  // Product fields at exponent 0.8 + 0.8.
  for (const char* f : {"identity", "sin", "cos", "tanh"}) {
    out.push_back({std::string("product-") + f + "-0.8", 1.6,
                   along(product_field(fn::make_vector_function(f, 1), w8), x8)});
  }
  for (const char* f : {"sin", "tanh"}) {
    out.push_back({std::string("product-") + f + "-fbm", 1.6,
                   along(product_field(fn::make_vector_function(f, 1), b8), x8)});
  }
  out.push_back({"averaged-tanh-fbm", 1.6, along(averaged_field(fn::tanh(1), c8, 1), x8)});
  {
    const FieldPtr a = product_field(fn::sin(1), w8);
    out.push_back({"bilinear-sin", 1.6, {1, [a, x8, v8](double s, double t) {
                     return Vec(v8.at(s, 0) * a->increment(s, t, x8.at(s)));
                   }}});
  }
  out.push_back({"rotation-2d", 1.6, along(product_field(fn::rotation(1.0), w8), x2)});
  out.push_back({"swirl-2d", 1.6, along(product_field(fn::swirl(), w8), x2)});
  return out;
}

std::vector<std::string> germ_catalog_names() {
  std::vector<std::string> names;
  for (const auto& g : germ_catalog()) names.push_back(g.name);
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace ycalc
