#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "antibunch/beamprofile.hpp"
#include "antibunch/cli.hpp"
#include "antibunch/collinear.hpp"
#include "antibunch/errors.hpp"
#include "antibunch/experiments.hpp"
#include "antibunch/offaxis.hpp"
#include "antibunch/saddle.hpp"

namespace py = pybind11;
using namespace antibunch;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-particle correlations of a thermal beam (C++ core)";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<SymmetryError>(m, "SymmetryError", PyExc_ArithmeticError);
  // ConvergenceError carries the best estimate, which the generic translator
  // would drop. The module keeps the type alive.
  static PyObject* conv_type =
      py::exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConvergenceError& e) {
      py::object err = py::reinterpret_borrow<py::object>(conv_type)(e.what());
      err.attr("best_estimate") = e.best_estimate();
      err.attr("abs_error") = e.abs_error();
      PyErr_SetObject(conv_type, err.ptr());
    }
  });

  py::enum_<Statistics>(m, "Statistics")
      .value("Fermion", Statistics::Fermion)
      .value("Boson", Statistics::Boson)
      .value("Classical", Statistics::Classical);

  py::enum_<Method>(m, "Method")
      .value("Analytic", Method::Analytic)
      .value("GaussianApprox", Method::GaussianApprox)
      .value("Numeric", Method::Numeric);

  py::enum_<AngularRoute>(m, "AngularRoute")
      .value("BesselSeries", AngularRoute::BesselSeries)
      .value("Direct", AngularRoute::Direct);

  py::class_<SourceSpec>(m, "SourceSpec")
      .def(py::init<>())
      .def_readwrite("w", &SourceSpec::w)
      .def_readwrite("w_z", &SourceSpec::w_z)
      .def_readwrite("beta", &SourceSpec::beta)
      .def_readwrite("mu", &SourceSpec::mu)
      .def_readwrite("mass", &SourceSpec::mass)
      .def_readwrite("statistics", &SourceSpec::statistics)
      .def_readwrite("lambda_", &SourceSpec::lambda)
      .def("validate", &SourceSpec::validate);

  py::class_<BeamSpec>(m, "BeamSpec")
      .def(py::init<>())
      .def_readwrite("k0", &BeamSpec::k0)
      .def_readwrite("dk_perp", &BeamSpec::dk_perp)
      .def_readwrite("dk_z", &BeamSpec::dk_z)
      .def_readwrite("mono_limit", &BeamSpec::mono_limit)
      .def("well_monochromatized", &BeamSpec::well_monochromatized);

  py::class_<DetectorSpec>(m, "DetectorSpec")
      .def(py::init<>())
      .def(py::init([](double a, double d) { return DetectorSpec{a, d}; }), py::arg("a"), py::arg("d"))
      .def_readwrite("a", &DetectorSpec::a)
      .def_readwrite("d", &DetectorSpec::d);

  py::class_<QuadSpec>(m, "QuadSpec")
      .def(py::init<>())
      .def(py::init([](double rel) { return QuadSpec{rel}; }), py::arg("rel_tol"))
      .def_readwrite("rel_tol", &QuadSpec::rel_tol)
      .def_readwrite("abs_tol", &QuadSpec::abs_tol)
      .def_readwrite("max_subdiv", &QuadSpec::max_subdiv)
      .def_readwrite("k_window_sigmas", &QuadSpec::k_window_sigmas);

  py::class_<CollinearOptions>(m, "CollinearOptions")
      .def(py::init<>())
      .def_readwrite("gauss", &CollinearOptions::gauss)
      .def_readwrite("numeric", &CollinearOptions::numeric)
      .def_readwrite("route", &CollinearOptions::route);

  py::class_<CollinearSetup>(m, "CollinearSetup")
      .def(py::init<>())
      .def_readwrite("src", &CollinearSetup::src)
      .def_readwrite("beam", &CollinearSetup::beam)
      .def_readwrite("det", &CollinearSetup::det)
      .def_readwrite("z1", &CollinearSetup::z1)
      .def_readwrite("z2", &CollinearSetup::z2)
      .def("validate", &CollinearSetup::validate)
      .def("warnings", &CollinearSetup::warnings, py::arg("ratio") = 20.0);

  py::class_<CorrResult>(m, "CorrResult")
      .def_readonly("value", &CorrResult::value)
      .def_readonly("method", &CorrResult::method)
      .def_readonly("abs_error", &CorrResult::abs_error)
      .def_property_readonly("warnings", [](const CorrResult& r) { return r.meta.warnings; })
      .def_property_readonly("evaluations", [](const CorrResult& r) { return r.meta.evaluations; })
      .def("__repr__", [](const CorrResult& r) {
        std::ostringstream os;
        os << "CorrResult(value=" << r.value << ", method=" << to_string(r.method) << ", abs_error=" << r.abs_error
           << ")";
        return os.str();
      });

  py::class_<DipShape>(m, "DipShape")
      .def_readonly("depth", &DipShape::depth)
      .def_readonly("half_width", &DipShape::half_width)
      .def_readonly("evaluations", &DipShape::evaluations);

  const CollinearOptions defaults{};
  m.def("exchange_sign", &exchange_sign);
  m.def("occupation", &occupation, py::arg("omega"), py::arg("src"));
  m.def("rho1", &rho1, py::arg("setup"), py::arg("zbar"), py::arg("method"), py::arg("opts") = defaults);
  m.def("interference", &interference, py::arg("setup"), py::arg("method"), py::arg("opts") = defaults);
  m.def("c_normalized", &c_normalized, py::arg("setup"), py::arg("method"), py::arg("opts") = defaults,
        py::call_guard<py::gil_scoped_release>());
  m.def("c_analytic", &c_analytic, py::arg("setup"));
  m.def("dip_shape", &dip_shape, py::arg("setup"), py::arg("method"), py::arg("opts") = defaults,
        py::call_guard<py::gil_scoped_release>());
  m.def("coherence_lengths", [](const CollinearSetup& s) {
    const auto c = coherence_lengths(s);
    return py::dict(py::arg("lateral") = c.lateral, py::arg("longitudinal") = c.longitudinal);
  });

  m.def("c_offaxis", &c_offaxis, py::arg("theta_d"), py::arg("r1"), py::arg("r2"), py::arg("src"), py::arg("beam"),
        py::arg("det"));
  m.def("c_symmetric_pair", &c_symmetric_pair, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("src"),
        py::arg("beam"), py::arg("det"));
  m.def(
      "momentum_oracle",
      [](double th, double r1, double r2, const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det,
         double rel_tol) {
        const auto o = momentum_oracle(th, r1, r2, src, beam, det, QuadSpec{rel_tol});
        return py::dict(py::arg("c") = o.c, py::arg("abs_error") = o.abs_error,
                        py::arg("imag_residual") = o.imag_residual);
      },
      py::arg("theta_d"), py::arg("r1"), py::arg("r2"), py::arg("src"), py::arg("beam"), py::arg("det"),
      py::arg("rel_tol") = 1e-8);

  m.def(
      "farfield_amplitude",
      [](std::array<double, 3> k, std::array<double, 3> rhat, double r, const SourceSpec& src, const BeamSpec& beam) {
        return farfield_amplitude({k[0], k[1], k[2]}, {rhat[0], rhat[1], rhat[2]}, r, src, beam);
      },
      py::arg("k"), py::arg("rhat"), py::arg("r"), py::arg("src"), py::arg("beam"));
  m.def(
      "radial_integral_check",
      [](std::array<double, 3> k, std::array<double, 3> rhat, double r, const SourceSpec& src, const BeamSpec& beam,
         double bias) {
        const auto c = radial_integral_check({k[0], k[1], k[2]}, {rhat[0], rhat[1], rhat[2]}, r, src, beam, bias);
        return py::dict(py::arg("extrapolated") = c.extrapolated, py::arg("farfield") = c.farfield,
                        py::arg("rel_modulus_diff") = c.rel_modulus_diff, py::arg("converged") = c.converged,
                        py::arg("far_field") = c.far_field);
      },
      py::arg("k"), py::arg("rhat"), py::arg("r"), py::arg("src"), py::arg("beam"), py::arg("bias") = 0.1);
  m.def(
      "angular_half_width",
      [](std::array<double, 3> k, const SourceSpec& src, const BeamSpec& beam) {
        return angular_half_width({k[0], k[1], k[2]}, src, beam);
      },
      py::arg("k"), py::arg("src"), py::arg("beam"));

  m.def("saddle_theta0", [](double p, double q) {
    const auto s = saddle_theta0(SaddleParams{p, q});
    return py::make_tuple(s.theta0, s.limit);
  });

  m.def("preset_names", [] {
    std::vector<std::string> out;
    for (const auto& p : builtin_presets()) out.push_back(p.name);
    return out;
  });
  m.def("dip_report_json", [](const std::string& name) { return to_json(dip_report(find_preset(name))).dump(); });
  m.def("dip_report_text", [](const std::string& name) { return to_text(dip_report(find_preset(name))); });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
