#pragma once

#include <stdexcept>
#include <string>

namespace antibunch {

// Argument outside the mathematical domain of an operation (e.g. Bose
// occupation at omega <= mu, negative Bessel argument).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or inconsistent physical parameters, including unit conversion.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate so
// callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double abs_error)
      : std::runtime_error(what), best_estimate_(best_estimate), abs_error_(abs_error) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double abs_error() const noexcept { return abs_error_; }

 private:
  double best_estimate_;
  double abs_error_;
};

// An integral that must vanish by k1 <-> k2 exchange symmetry did not.
class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace antibunch
