#include "ycalc/field_norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "ycalc/errors.hpp"
#include "ycalc/parallel.hpp"
#include "ycalc/rng.hpp"

namespace ycalc {
namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
constexpr int kSmallestLevel = -10;

struct Ball {
  double radius;
  std::vector<Vec> points;
};

std::vector<Ball> sample_balls(std::size_t dim, double radius, std::size_t samples, std::uint64_t seed) {
  require(dim <= std::size(kPrimes), "estimate_field_norms: space dimension above 16 is not supported");
  NormalStream shift_rng(substream_seed(seed, "field-norms-shift"));
  Vec shift(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) shift(static_cast<Eigen::Index>(k)) = shift_rng.uniform();

  std::vector<double> radii;
  for (int j = kSmallestLevel; std::ldexp(1.0, j) <= radius; ++j) radii.push_back(std::ldexp(1.0, j));
  if (radii.empty()) radii.push_back(radius);

  std::vector<Ball> balls;
  for (std::size_t level = 0; level < radii.size(); ++level) {
    Ball b{radii[level], {}};
    b.points.push_back(Vec::Zero(static_cast<Eigen::Index>(dim)));
    for (std::size_t i = 0; i < samples; ++i) {
      Vec v(static_cast<Eigen::Index>(dim));
      const std::uint64_t index = 1 + i + level * samples;
      for (std::size_t k = 0; k < dim; ++k) {
        double u = radical_inverse(index, kPrimes[k]) + shift(static_cast<Eigen::Index>(k));
        u -= std::floor(u);
        v(static_cast<Eigen::Index>(k)) = 2.0 * u - 1.0;
      }
      // Radial map of the cube [-1,1]^d onto the unit ball.
      const double l2 = v.norm();
      if (l2 > 0.0) v *= v.lpNorm<Eigen::Infinity>() / l2;
      b.points.push_back(b.radius * v);
    }
    balls.push_back(std::move(b));
  }
  return balls;
}

std::vector<std::pair<std::size_t, std::size_t>> time_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n <= kExactNormCells) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  std::vector<std::size_t> gaps;
  for (std::size_t g = 1; g <= 16 && g <= n; ++g) gaps.push_back(g);
  for (double g = 16.0; g < static_cast<double>(n);) {
    g *= 1.25;
    gaps.push_back(std::min(n, static_cast<std::size_t>(std::llround(g))));
  }
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  for (std::size_t g : gaps) {
    for (std::size_t i = 0; i + g <= n; ++i) pairs.emplace_back(i, i + g);
  }
  return pairs;
}

}  // namespace

FieldNorms estimate_field_norms(const Field& a, const Grid& grid, double alpha, double beta, double radius,
                                std::size_t space_samples, std::uint64_t seed, std::optional<double> lambda) {
  require(alpha > 0.0 && alpha <= 1.0, "estimate_field_norms: alpha must lie in (0, 1]");
  require(beta > 0.0 && beta <= 1.0, "estimate_field_norms: beta must lie in (0, 1]");
  require(radius > 0.0, "estimate_field_norms: radius must be positive");
  require(space_samples >= 2, "estimate_field_norms: need at least two space samples");

  const std::vector<Ball> balls = sample_balls(a.in_dim(), radius, space_samples, seed);
  const std::size_t m = a.out_dim();
  const std::size_t nodes = grid.size();

  // values[ball][point] is an m x nodes block of A(t_i, x_p).
  std::vector<std::vector<Mat>> values(balls.size());
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t b = 0; b < balls.size(); ++b) {
    values[b].resize(balls[b].points.size());
    for (std::size_t p = 0; p < balls[b].points.size(); ++p) jobs.emplace_back(b, p);
  }
  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [b, p] = jobs[j];
    Mat block(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(nodes));
    for (std::size_t i = 0; i < nodes; ++i) {
      block.col(static_cast<Eigen::Index>(i)) = a.eval(grid.node(i), balls[b].points[p]);
    }
    values[b][p] = std::move(block);
  });

  // Inverse distance powers per ball, reused across time pairs.
  std::vector<std::vector<double>> inv_dist(balls.size());
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const auto& pts = balls[b].points;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      for (std::size_t q = p + 1; q < pts.size(); ++q) {
        const double d = (pts[p] - pts[q]).norm();
        inv_dist[b].push_back(d > 0.0 ? std::pow(d, -beta) : 0.0);
      }
    }
  }

  const auto pairs = time_pairs(grid.cells());
  struct Partial {
    double semi = 0.0, norm = 0.0, sup = 0.0;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_budget(), pairs.size()));
  std::vector<Partial> partial(workers);
  parallel_for(workers, [&](std::size_t w) {
    Partial acc;
    std::vector<double> diff;
    const std::size_t lo = pairs.size() * w / workers, hi = pairs.size() * (w + 1) / workers;
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [i, j] = pairs[k];
      const double scale = std::pow(grid.node(j) - grid.node(i), -alpha);
      double sup = 0.0, semi = 0.0;
      for (std::size_t b = 0; b < balls.size(); ++b) {
        const std::size_t np = balls[b].points.size();
        diff.assign(np * m, 0.0);
        for (std::size_t p = 0; p < np; ++p) {
          const Mat& v = values[b][p];
          double sq = 0.0;
          for (std::size_t r = 0; r < m; ++r) {
            const double d = v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) -
                             v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i));
            diff[p * m + r] = d;
            sq += d * d;
          }
          sup = std::max(sup, std::sqrt(sq));
        }
        std::size_t e = 0;
        for (std::size_t p = 0; p < np; ++p) {
          for (std::size_t q = p + 1; q < np; ++q, ++e) {
            double sq = 0.0;
            for (std::size_t r = 0; r < m; ++r) {
              const double d = diff[p * m + r] - diff[q * m + r];
              sq += d * d;
            }
            semi = std::max(semi, std::sqrt(sq) * inv_dist[b][e]);
          }
        }
      }
      acc.semi = std::max(acc.semi, semi * scale);
      acc.sup = std::max(acc.sup, sup * scale);
      acc.norm = std::max(acc.norm, (semi + sup) * scale);
    }
    partial[w] = acc;
  });

  FieldNorms out;
  out.alpha = alpha;
  out.beta = beta;
  out.radius = radius;
  out.lambda = lambda;
  for (const Partial& p : partial) {
    out.seminorm_ab = std::max(out.seminorm_ab, p.semi);
    out.norm_ab = std::max(out.norm_ab, p.norm);
    out.sup_ab = std::max(out.sup_ab, p.sup);
  }
  std::ostringstream os;
  os << a.describe() << ": " << pairs.size() << " time pairs, " << balls.size() << " balls x "
     << (space_samples + 1) << " points, seed " << seed;
  out.description = os.str();
  return out;
}

}  // namespace ycalc
