#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ycalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dyadic refinement of a germ failed to be Cauchy; the germ's defect
/// exponent is not above one on the observed scales.
class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, double last_delta)
      : Error(what), last_delta_(last_delta) {}
  double last_delta() const noexcept { return last_delta_; }

 private:
  double last_delta_;
};

/// The state left any bounded region (|x| > 1e12 or non-finite).
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t step, double time)
      : Error(what), step_(step), time_(time) {}
  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t step_;
  double time_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw DomainError(msg);
}
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace ycalc
