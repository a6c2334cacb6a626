#include "antibunch/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace antibunch {

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ParameterError("quadrature: tolerances must be > 0");
  if (max_subdiv < 1) throw ParameterError("quadrature: max_subdiv must be >= 1");
  if (!(k_window_sigmas >= 5.0)) throw ParameterError("quadrature: k_window_sigmas must be >= 5");
}

namespace detail {

const Gk21Rule& gk21_rule() {
  static const Gk21Rule rule = [] {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    Gk21Rule r{};
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    for (std::size_t i = 0; i < 11; ++i) {
      r.x[i] = xk[i];
      r.wk[i] = wk[i];
    }
    for (std::size_t i = 0; i < 5; ++i) r.wg[i] = wg[i];
    return r;
  }();
  return rule;
}

}  // namespace detail

namespace {

struct NestedState {
  const std::function<double(std::span<const double>)>& f;
  const Box& box;
  const QuadSpec& spec;
  std::array<double, 4> point{};
  std::array<double, 4> max_inner_error{};
  int evaluations = 0;
};

double integrate_axis(NestedState& st, std::size_t axis) {
  const std::size_t dims = st.box.lo.size();
  auto integrand = [&](double x) {
    st.point[axis] = x;
    if (axis + 1 == dims) {
      ++st.evaluations;
      return st.f(std::span<const double>(st.point.data(), dims));
    }
    return integrate_axis(st, axis + 1);
  };
  const auto r = integrate_1d<double>(integrand, st.box.lo[axis], st.box.hi[axis], st.spec);
  st.max_inner_error[axis] = std::max(st.max_inner_error[axis], r.abs_error);
  return r.value;
}

}  // namespace

QuadResult<double> integrate_nd(const std::function<double(std::span<const double>)>& f,
                                const Box& box, const QuadSpec& spec) {
  const std::size_t dims = box.lo.size();
  if (dims == 0 || dims > 4 || box.hi.size() != dims)
    throw ParameterError("integrate_nd: box must have 1..4 matching dimensions");

  NestedState st{f, box, spec};
  QuadResult<double> out;
  out.value = integrate_axis(st, 0);

  // outer estimate plus, for each inner axis, the worst inner estimate
  // propagated through the widths of the enclosing axes
  double err = st.max_inner_error[0];
  double width = 1.0;
  for (std::size_t ax = 1; ax < dims; ++ax) {
    width *= std::abs(box.hi[ax - 1] - box.lo[ax - 1]);
    err += width * st.max_inner_error[ax];
  }
  out.abs_error = err;
  out.evaluations = st.evaluations;
  return out;
}

}  // namespace antibunch
