#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ycalc/field.hpp"
#include "ycalc/grid.hpp"

namespace ycalc {

/// Restricted-sup estimates of the space-time Hölder norms of a field on
/// grid pairs s < t and sampled point pairs in the closed ball B_R.
struct FieldNorms {
  double alpha = 1.0;
  double beta = 1.0;
  double radius = 1.0;
  /// sup_{s<t} [A_{s,t}]_{beta,R} / |t-s|^alpha.
  double seminorm_ab = 0.0;
  /// sup_{s<t} (sup_{B_R} |A_{s,t}| + [A_{s,t}]_{beta,R}) / |t-s|^alpha.
  double norm_ab = 0.0;
  /// sup_{s<t} sup_{B_R} |A_{s,t}| / |t-s|^alpha.
  double sup_ab = 0.0;
  /// Growth exponent, recorded as metadata only.
  std::optional<double> lambda;
  std::string description;
};

/// Space samples are shifted Halton points (plus the centre) on a ladder of
/// balls of radius 2^j, 2^-10 <= 2^j <= R, so the sample set grows with R and
/// the estimates are nondecreasing in R. Radii below 2^-10 use the single ball
/// B_R. Hölder quotients use pairs within one ball. Time pairs are all node
/// pairs up to kExactNormCells cells and a gap ladder with every start beyond.
FieldNorms estimate_field_norms(const Field& a, const Grid& grid, double alpha, double beta,
                                double radius, std::size_t space_samples, std::uint64_t seed,
                                std::optional<double> lambda = std::nullopt);

inline constexpr std::size_t kExactNormCells = 256;

}  // namespace ycalc
