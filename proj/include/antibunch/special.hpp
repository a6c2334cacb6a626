#pragma once

namespace antibunch {

// exp(-x) I0(x) for x >= 0, relative error below 1e-12 on [0, 700] and beyond.
// Power series for x <= 30, Hankel asymptotic series above. Throws
// DomainError for x < 0 or NaN.
double bessel_i0_scaled(double x);

}  // namespace antibunch
