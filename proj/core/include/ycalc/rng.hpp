#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ycalc {

/// Seed of the named substream `name` derived from a top-level seed.
/// Adding a new stream never perturbs the seeds of existing ones.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view name);

/// Portable Gaussian source: mt19937_64 bits mapped to doubles with an
/// explicit Box-Muller transform, so streams are identical on every
/// conforming platform (std::normal_distribution is implementation-defined).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Radical-inverse (Halton) coordinate of index i in the given prime base.
double radical_inverse(std::uint64_t i, unsigned base);

}  // namespace ycalc
