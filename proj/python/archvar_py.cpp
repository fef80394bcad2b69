#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "archvar/calibration.hpp"
#include "archvar/commands.hpp"
#include "archvar/copula.hpp"
#include "archvar/errors.hpp"
#include "archvar/mc.hpp"
#include "archvar/sampler.hpp"
#include "archvar/var.hpp"

namespace py = pybind11;
using namespace archvar;

namespace {

QuadConfig quad(double abs_tol, double rel_tol, int max_subdivisions) {
  QuadConfig cfg{abs_tol, rel_tol, max_subdivisions};
  cfg.validate();
  return cfg;
}

Margins margins_or_uniform(const CopulaSpec& spec,
                           const std::optional<Margins>& margins) {
  return margins ? *margins : uniform_margins(spec.dim());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Marginal VaR on the level sets of Archimedean copulas";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<InfiniteGeneratorError>(m, "InfiniteGeneratorError",
                                                 domain.ptr());
  auto argument = py::register_exception<ArgumentError>(m, "ArgumentError", error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", argument.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", argument.ptr());
  py::register_exception<RangeError>(m, "RangeError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<EmptyLevelSetError>(m, "EmptyLevelSetError", error.ptr());
  py::register_exception<StudyError>(m, "StudyError", error.ptr());
  py::register_exception<DiagnosticError>(m, "DiagnosticError", error.ptr());

  py::enum_<Family>(m, "Family")
      .value("CLAYTON", Family::Clayton)
      .value("FRANK", Family::Frank)
      .value("GUMBEL", Family::GumbelHougaard)
      .value("JOE", Family::Joe)
      .value("AMH", Family::AliMikhailHaq);

  m.def("parse_family", &parse_family, py::arg("name"));

  py::class_<CopulaSpec>(m, "CopulaSpec")
      .def(py::init<Family, double, int>(), py::arg("family"), py::arg("theta"),
           py::arg("dim"))
      .def(py::init([](const std::string& family, double theta, int dim) {
             return CopulaSpec(parse_family(family), theta, dim);
           }),
           py::arg("family"), py::arg("theta"), py::arg("dim"))
      .def_property_readonly("family", &CopulaSpec::family)
      .def_property_readonly("theta", &CopulaSpec::theta)
      .def_property_readonly("dim", &CopulaSpec::dim)
      .def("__eq__", [](const CopulaSpec& a, const CopulaSpec& b) { return a == b; })
      .def("__repr__", [](const CopulaSpec& s) { return to_string(s); });

  m.def("phi", &phi, py::arg("spec"), py::arg("t"));
  m.def("phi_prime", &phi_prime, py::arg("spec"), py::arg("t"));
  m.def("phi_inverse", &phi_inverse, py::arg("spec"), py::arg("s"));
  m.def(
      "copula_cdf",
      [](const CopulaSpec& spec, const std::vector<double>& u) {
        return copula_cdf(spec, u);
      },
      py::arg("spec"), py::arg("u"));
  m.def("beta_kernel", &beta_kernel, py::arg("spec"), py::arg("u"), py::arg("alpha"));

  py::class_<QuantileFn>(m, "QuantileFn")
      .def_static("uniform", &QuantileFn::uniform)
      .def_static("constant", &QuantileFn::constant, py::arg("value"))
      .def_static("tabulated", &QuantileFn::tabulated, py::arg("u"), py::arg("q"))
      .def_static("from_function", &QuantileFn::from_function, py::arg("fn"),
                  py::arg("name"))
      .def("scaled", &QuantileFn::scaled, py::arg("factor"))
      .def("__call__", &QuantileFn::operator(), py::arg("u"))
      .def_property_readonly("name", &QuantileFn::name);

  py::class_<VarResult>(m, "VarResult")
      .def_readonly("alpha", &VarResult::alpha)
      .def_readonly("components", &VarResult::components)
      .def_readonly("abs_error_estimate", &VarResult::abs_error_estimate)
      .def_readonly("spec", &VarResult::spec);

  m.def(
      "var",
      [](const CopulaSpec& spec, double alpha, std::optional<Margins> margins,
         bool generic, double abs_tol, double rel_tol, int max_subdivisions) {
        const Margins ms = margins_or_uniform(spec, margins);
        const QuadConfig cfg = quad(abs_tol, rel_tol, max_subdivisions);
        return generic ? var_generic(spec, ms, alpha, cfg)
                       : var_closed_form(spec, ms, alpha, cfg);
      },
      py::arg("spec"), py::arg("alpha") = 0.05, py::arg("margins") = py::none(),
      py::arg("generic") = false, py::arg("abs_tol") = 1e-10,
      py::arg("rel_tol") = 1e-9, py::arg("max_subdivisions") = 2000,
      "Marginal VaR components; `generic` selects the generator-kernel form.");
  m.def(
      "kernel_mass",
      [](const CopulaSpec& spec, double alpha) { return kernel_mass(spec, alpha); },
      py::arg("spec"), py::arg("alpha"));

  m.def("kendall_tau", py::overload_cast<const CopulaSpec&>(&kendall_tau),
        py::arg("spec"));
  m.def("kendall_tau", py::overload_cast<Family, double>(&kendall_tau),
        py::arg("family"), py::arg("theta"));
  m.def("theta_from_tau", &theta_from_tau, py::arg("family"), py::arg("tau"));
  m.def(
      "attainable_tau",
      [](Family f) {
        const TauRange r = attainable_tau(f);
        return py::make_tuple(r.lower, r.upper, r.lower_closed, r.upper_closed);
      },
      py::arg("family"));

  m.def(
      "sample",
      [](const CopulaSpec& spec, std::size_t n, std::uint64_t seed,
         std::uint64_t stream, int jobs) {
        const Sample s = [&] {
          py::gil_scoped_release release;
          return sample_copula(spec, n, Seed{seed, stream}, jobs);
        }();
        py::array_t<double> out({s.rows, static_cast<std::size_t>(s.dim)});
        std::copy(s.data.begin(), s.data.end(), out.mutable_data());
        return out;
      },
      py::arg("spec"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0,
      py::arg("jobs") = 1, "n x d array of copula pseudo-observations.");
  m.def(
      "empirical_kendall_tau",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return empirical_kendall_tau(x, y);
      },
      py::arg("x"), py::arg("y"));

  py::class_<McStats>(m, "McStats")
      .def_readonly("mean", &McStats::mean)
      .def_readonly("std_dev", &McStats::std_dev)
      .def_readonly("std_error", &McStats::std_error)
      .def_readonly("bias", &McStats::bias)
      .def_readonly("rmse", &McStats::rmse)
      .def_readonly("theoretical", &McStats::theoretical)
      .def_readonly("mean_selected_count", &McStats::mean_selected_count)
      .def_readonly("failed_replications", &McStats::failed_replications)
      .def_readonly("replications", &McStats::replications);

  m.def(
      "run_study",
      [](const CopulaSpec& spec, std::size_t n, int replications, double h,
         double alpha, std::uint64_t seed, std::uint64_t stream, int jobs) {
        McConfig cfg{spec,  n,    replications, h, alpha, Seed{seed, stream},
                     Margins{}, QuadConfig{}};
        py::gil_scoped_release release;
        return run_study(cfg, jobs);
      },
      py::arg("spec"), py::arg("n") = 50000, py::arg("replications") = 100,
      py::arg("h") = 1e-4, py::arg("alpha") = 0.05, py::arg("seed") = 1,
      py::arg("stream") = 0, py::arg("jobs") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (code, stdout, stderr).");
}
