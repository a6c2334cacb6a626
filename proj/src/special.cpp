#include "antibunch/special.hpp"

#include <cmath>
#include <numbers>

#include "antibunch/errors.hpp"

namespace antibunch {

namespace {

constexpr double kSeriesLimit = 30.0;

// sum_k (x^2/4)^k / (k!)^2, all terms positive so there is no cancellation
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k [(2k-1)!!]^2 / (k! (8x)^k)
double i0e_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;  // asymptotic series started to diverge
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i0_scaled: x must be >= 0");
  if (x <= kSeriesLimit) return std::exp(-x) * i0_series(x);
  return i0e_asymptotic(x);
}

}  // namespace antibunch
