#include "antibunch/result.hpp"

#include "antibunch/errors.hpp"

namespace antibunch {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::GaussianApprox: return "gauss";
    case Method::Numeric: return "numeric";
  }
  return "analytic";
}

Method method_from_string(std::string_view name) {
  if (name == "analytic") return Method::Analytic;
  if (name == "gauss" || name == "gaussian-approx") return Method::GaussianApprox;
  if (name == "numeric") return Method::Numeric;
  throw ParameterError("unknown method '" + std::string(name) + "' (expected analytic, gauss or numeric)");
}

}  // namespace antibunch
