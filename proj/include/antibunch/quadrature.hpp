#pragma once

// Adaptive Gauss-Kronrod quadrature.
//
// integrate_1d is a global adaptive (QAG-style) 21-point Gauss-Kronrod
// driver: the interval with the largest error estimate is bisected until the
// summed estimate drops below max(abs_tol, rel_tol*|I|). It is generic over
// the integrand's value type, so real, complex and fixed-size vector
// integrands (several moments in one pass) share the same code. A value type
// V needs V+V, V-V, double*V and an ADL-visible `magnitude(const V&)`.
//
// integrate_nd nests integrate_1d over up to four axes.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "antibunch/errors.hpp"

namespace antibunch {

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-300;
  int max_subdiv = 4000;
  // momentum integrals are truncated to k0 +- k_window_sigmas * dk_z
  double k_window_sigmas = 8.0;

  // Throws ParameterError when a tolerance is not positive, max_subdiv < 1 or
  // k_window_sigmas < 5.
  void validate() const;
};

template <class V>
struct QuadResult {
  V value{};
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

// Small fixed-size vector for integrating several related integrands at once.
template <std::size_t N>
struct VecN {
  std::array<double, N> v{};

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  friend VecN operator+(VecN a, const VecN& b) {
    for (std::size_t i = 0; i < N; ++i) a.v[i] += b.v[i];
    return a;
  }
  friend VecN operator-(VecN a, const VecN& b) {
    for (std::size_t i = 0; i < N; ++i) a.v[i] -= b.v[i];
    return a;
  }
  friend VecN operator*(double s, VecN a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
  // Max norm: the error criterion then holds componentwise relative to the
  // largest component.
  friend double magnitude(const VecN& a) {
    double m = 0.0;
    for (double x : a.v) m = std::max(m, std::abs(x));
    return m;
  }
};

namespace detail {

template <class V>
double best_estimate(const V& v) {
  if constexpr (std::is_same_v<V, double>) {
    return v;
  } else if constexpr (std::is_same_v<V, std::complex<double>>) {
    return v.real();
  } else {
    return magnitude(v);
  }
}

// 21-point Kronrod nodes (nonnegative half, x[0] = 0) with the embedded
// 10-point Gauss rule on the odd entries.
struct Gk21Rule {
  std::array<double, 11> x;
  std::array<double, 11> wk;
  std::array<double, 5> wg;
};

const Gk21Rule& gk21_rule();

template <class V>
struct Panel {
  double a, b;
  V value;
  double error;
  double resabs;
};

template <class V, class F>
Panel<V> gk21(F& f, double a, double b) {
  const auto& rule = gk21_rule();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<V, 21> fx;
  fx[0] = f(center);
  for (int j = 1; j < 11; ++j) {
    const double dx = half * rule.x[j];
    fx[2 * j - 1] = f(center - dx);
    fx[2 * j] = f(center + dx);
  }

  V res_k = rule.wk[0] * fx[0];
  V res_g{};
  double resabs = rule.wk[0] * magnitude(fx[0]);
  for (int j = 1; j < 11; ++j) {
    const V pair = fx[2 * j - 1] + fx[2 * j];
    res_k = res_k + rule.wk[j] * pair;
    resabs += rule.wk[j] * (magnitude(fx[2 * j - 1]) + magnitude(fx[2 * j]));
    if (j % 2 == 1) res_g = res_g + rule.wg[(j - 1) / 2] * pair;
  }

  const V mean = 0.5 * res_k;
  double resasc = rule.wk[0] * magnitude(fx[0] - mean);
  for (int j = 1; j < 11; ++j)
    resasc += rule.wk[j] * (magnitude(fx[2 * j - 1] - mean) + magnitude(fx[2 * j] - mean));

  const double scale = std::abs(half);
  double err = magnitude(res_k - res_g) * scale;
  resabs *= scale;
  resasc *= scale;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

  return Panel<V>{a, b, half * res_k, err, resabs};
}

}  // namespace detail

// Integrates f over [a, b]. `breakpoints` inside (a, b) seed the initial
// partition (use them for kinks such as a sharp Fermi edge); `panels` splits
// every seed interval uniformly. Throws ConvergenceError when max_subdiv is
// exhausted before the tolerance is met.
template <class V = double, class F>
QuadResult<V> integrate_1d(F&& f, double a, double b, const QuadSpec& spec,
                           std::span<const double> breakpoints = {}, int panels = 1) {
  QuadResult<V> out;
  if (a == b) return out;
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using P = detail::Panel<V>;
  auto by_error = [](const P& l, const P& r) { return l.error < r.error; };
  std::vector<P> heap;
  panels = std::max(panels, 1);
  heap.reserve(static_cast<std::size_t>(cuts.size() * panels + 64));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double h = (cuts[i + 1] - cuts[i]) / panels;
    for (int j = 0; j < panels; ++j) {
      const double lo = cuts[i] + j * h;
      const double hi = (j + 1 == panels) ? cuts[i + 1] : lo + h;
      heap.push_back(detail::gk21<V>(f, lo, hi));
    }
  }
  std::make_heap(heap.begin(), heap.end(), by_error);
  int evaluations = static_cast<int>(heap.size()) * 21;

  auto totals = [&](V& value, double& err, double& resabs) {
    value = V{};
    err = 0.0;
    resabs = 0.0;
    for (const auto& p : heap) {
      value = value + p.value;
      err += p.error;
      resabs += p.resabs;
    }
  };

  V value;
  double err = 0.0, resabs = 0.0;
  totals(value, err, resabs);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto tolerance = [&] {
    return std::max({spec.abs_tol, spec.rel_tol * magnitude(value), 50.0 * eps * resabs});
  };

  while (err > tolerance()) {
    if (static_cast<int>(heap.size()) >= spec.max_subdiv) {
      throw ConvergenceError("integrate_1d: max_subdiv exceeded", sign * detail::best_estimate(value), err);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const P worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("integrate_1d: interval below machine resolution",
                             sign * detail::best_estimate(value), err);
    }
    P left = detail::gk21<V>(f, worst.a, mid);
    P right = detail::gk21<V>(f, mid, worst.b);
    evaluations += 42;
    value = value - worst.value + left.value + right.value;
    err += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    // refresh running sums now and then to shed accumulated rounding
    if (heap.size() % 64 == 0) totals(value, err, resabs);
  }
  totals(value, err, resabs);

  out.value = sign * value;
  out.abs_error = err;
  out.evaluations = evaluations;
  out.intervals = static_cast<int>(heap.size());
  return out;
}

// Iterated adaptive integration of f(x, y) over [lo, hi]^2 with the same
// breakpoints on both axes. Inner integrals get an absolute tolerance tied to
// `scale`, the expected size of the full integral, so inner integrals that
// nearly cancel (oscillating phases) do not stall the driver. The error
// estimate is the outer estimate plus the width times the largest inner one.
template <class V = double, class F>
QuadResult<V> integrate_square(F&& f, double lo, double hi, std::span<const double> breakpoints,
                               const QuadSpec& spec, double scale) {
  const double width = hi - lo;
  QuadSpec outer = spec;
  outer.abs_tol = std::max(spec.abs_tol, 0.1 * spec.rel_tol * scale);
  QuadSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  inner.abs_tol = std::max(spec.abs_tol, 0.01 * spec.rel_tol * scale / width);

  double max_inner_err = 0.0;
  int evaluations = 0;
  auto row = [&](double x) {
    auto g = [&](double y) { return f(x, y); };
    const auto r = integrate_1d<V>(g, lo, hi, inner, breakpoints);
    max_inner_err = std::max(max_inner_err, r.abs_error);
    evaluations += r.evaluations;
    return r.value;
  };
  auto out = integrate_1d<V>(row, lo, hi, outer, breakpoints);
  out.abs_error += width * max_inner_err;
  out.evaluations = evaluations;
  return out;
}

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

// Nested adaptive integration over a box of dimension 1..4. The error
// estimate is the outer estimate plus the box width times the largest inner
// estimate, summed over axes.
QuadResult<double> integrate_nd(const std::function<double(std::span<const double>)>& f,
                                const Box& box, const QuadSpec& spec);

}  // namespace antibunch
