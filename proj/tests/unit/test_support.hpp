#pragma once

#include <cmath>

#include "ycalc/path.hpp"
#include "ycalc/types.hpp"

namespace ycalc::test {

inline Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

inline Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

inline double max_gap(const Path& a, const Path& b) { return (a.values() - b.values()).cwiseAbs().maxCoeff(); }

}  // namespace ycalc::test
