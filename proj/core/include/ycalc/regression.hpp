#pragma once

#include <limits>
#include <span>

namespace ycalc {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of log(y) against log(x), ignoring pairs with y <= floor.
/// Returns +infinity when fewer than two pairs survive (all remainders
/// vanished), which callers report as "faster than any power".
double loglog_slope(std::span<const double> x, std::span<const double> y, double floor = 0.0);

inline constexpr double kInfiniteSlope = std::numeric_limits<double>::infinity();

}  // namespace ycalc
