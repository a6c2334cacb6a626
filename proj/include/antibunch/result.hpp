#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace antibunch {

enum class Method { Analytic, GaussianApprox, Numeric };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);  // "analytic", "gauss", "numeric"

struct EvalMeta {
  int evaluations = 0;     // integrand evaluations of the outermost quadrature
  int bessel_terms = 0;    // largest Bessel-series order used by the angular moments
  int direct_fallbacks = 0;  // angular points evaluated by direct 2D quadrature
  double imag_residual = 0.0;
  std::vector<std::string> warnings;
};

struct CorrResult {
  double value = 0.0;
  Method method = Method::Analytic;
  double abs_error = 0.0;
  EvalMeta meta;
};

}  // namespace antibunch
