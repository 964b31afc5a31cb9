#include "ycalc/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ycalc/errors.hpp"

namespace ycalc {

bool is_blown_up(const Vec& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x(k)) || std::abs(x(k)) > kBlowUpThreshold) return true;
  }
  return false;
}

namespace {

Vec riemann_sum(const StateGerm& germ, double a, double b, const Vec& xa, const Vec& xb, unsigned levels) {
  const std::size_t pieces = std::size_t{1} << levels;
  const double h = b - a;
  Vec acc;
  double s = a;
  for (std::size_t m = 1; m <= pieces; ++m) {
    const double t = (m == pieces) ? b : a + h * (static_cast<double>(m) / static_cast<double>(pieces));
    const double w = (s - a) / h;
    const Vec xs = (m == 1) ? xa : Vec((1.0 - w) * xa + w * xb);
    if (m == 1) {
      acc = germ(s, t, xs);
    } else {
      acc += germ(s, t, xs);
    }
    s = t;
  }
  return acc;
}

}  // namespace

Vec cell_increment(const StateGerm& germ, double a, double b, const Vec& xa, const Vec& xb, unsigned levels,
                   bool extrapolate) {
  Vec fine = riemann_sum(germ, a, b, xa, xb, levels);
  if (!extrapolate || levels == 0) return fine;
  return 2.0 * fine - riemann_sum(germ, a, b, xa, xb, levels - 1);
}

namespace {

enum class WindowOutcome { converged, failed, diverged };

struct WindowStats {
  WindowOutcome outcome = WindowOutcome::failed;
  unsigned iterations = 0;
  double last_update = 0.0;
};

}  // namespace

FixedPointResult windowed_fixed_point(const StateGerm& germ, const Vec& x0, const Grid& grid,
                                      const FixedPointOptions& options, const StepRule& step) {
  require(options.tol > 0.0, "fixed point: tol must be positive");
  require(options.max_iter >= 1, "fixed point: max_iter must be at least 1");
  const std::size_t n = grid.cells();
  const Eigen::Index d = x0.size();
  FixedPointResult res;
  res.states = Mat::Zero(d, static_cast<Eigen::Index>(n + 1));
  res.states.col(0) = x0;
  const std::vector<double> t = grid.nodes();

  auto advance = [&](std::size_t j, const Vec& left, const Vec& inc) -> Vec {
    if (step) return step(j, left, inc, res.states);
    return left + inc;
  };

  std::size_t window = n;
  std::size_t a = 0;
  while (a < n) {
    window = std::min(window, n - a);
    const std::size_t b = a + window;
    // Euler predictor over the window.
    for (std::size_t j = a; j < b; ++j) {
      const Vec left = res.states.col(static_cast<Eigen::Index>(j));
      const Vec inc = germ(t[j], t[j + 1], left);
      res.states.col(static_cast<Eigen::Index>(j + 1)) = left;
      Vec next = advance(j, left, inc);
      if (is_blown_up(next)) next = left;
      res.states.col(static_cast<Eigen::Index>(j + 1)) = next;
    }
    const bool single = window == 1 || !options.windowing;
    const unsigned budget = single ? options.max_iter : std::max(1u, options.max_iter / 4);
    WindowStats stats;
    Mat next(d, static_cast<Eigen::Index>(window + 1));
    double prev_update = std::numeric_limits<double>::infinity();
    unsigned growth = 0;
    for (unsigned it = 1; it <= budget; ++it) {
      next.col(0) = res.states.col(static_cast<Eigen::Index>(a));
      bool blown = false;
      std::size_t blown_at = a;
      for (std::size_t j = a; j < b; ++j) {
        const Vec inc = cell_increment(germ, t[j], t[j + 1], res.states.col(static_cast<Eigen::Index>(j)),
                                       res.states.col(static_cast<Eigen::Index>(j + 1)), options.refine_levels,
                                       options.extrapolate);
        const Vec v = advance(j, next.col(static_cast<Eigen::Index>(j - a)), inc);
        if (is_blown_up(v)) {
          blown = true;
          blown_at = j;
          break;
        }
        next.col(static_cast<Eigen::Index>(j + 1 - a)) = v;
      }
      stats.iterations = it;
      if (blown) {
        if (single) {
          throw BlowUpError("fixed point: state left |x| <= 1e12 at step " + std::to_string(blown_at + 1),
                            blown_at + 1, t[blown_at + 1]);
        }
        stats.outcome = WindowOutcome::diverged;
        break;
      }
      const double update =
          (next - res.states.middleCols(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(window + 1)))
              .cwiseAbs()
              .maxCoeff();
      res.states.middleCols(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(window + 1)) = next;
      stats.last_update = update;
      // Updates at rounding level of the state cannot shrink further.
      const double floor = 16.0 * std::numeric_limits<double>::epsilon() * next.cwiseAbs().maxCoeff();
      if (update < options.tol || update <= floor) {
        stats.outcome = WindowOutcome::converged;
        break;
      }
      growth = update > prev_update ? growth + 1 : 0;
      prev_update = update;
      if (!single && growth >= 2) {
        stats.outcome = WindowOutcome::diverged;
        break;
      }
    }
    res.iterations += stats.iterations;
    if (stats.outcome == WindowOutcome::converged) {
      res.final_residual = std::max(res.final_residual, stats.last_update);
      ++res.windows;
      a = b;
      continue;
    }
    if (single) {
      throw ConvergenceError("fixed point: max_iter (" + std::to_string(options.max_iter) +
                             ") exceeded on the window starting at t = " + std::to_string(t[a]) +
                             ", last update " + std::to_string(stats.last_update));
    }
    window /= 2;
    if (window == 0) throw ConvergenceError("fixed point: window shrank below one cell");
  }
  res.final_window = window;
  return res;
}

}  // namespace ycalc
