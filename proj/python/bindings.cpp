#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "herbst/error.hpp"
#include "herbst/fourierb.hpp"
#include "herbst/kernel.hpp"
#include "herbst/specfun.hpp"
#include "herbst/spectral.hpp"
#include "herbst/threshold.hpp"
#include "herbst/verify.hpp"

namespace py = pybind11;
using namespace herbst;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Birman-Schwinger analysis of the relativistic Herbst operator";

  auto domain_error = py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);
  (void)domain_error;

  // specfun
  mod.def("bessel_k", &specfun::bessel_k, py::arg("order"), py::arg("x"));
  mod.def("k0_moment_full", &specfun::k0_moment_full, py::arg("beta"));
  mod.def("f1_moment", &specfun::f1_moment, py::arg("mu"));
  mod.def("hyp3f2_neg", &specfun::hyp3f2_neg, py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("b1"),
          py::arg("b2"), py::arg("w"));

  // kernel
  py::class_<kernel::PhysParams>(mod, "PhysParams")
      .def_static("from_alpha", &kernel::PhysParams::from_alpha, py::arg("alpha"), py::arg("m") = 1.0)
      .def_static("from_energy", &kernel::PhysParams::from_energy, py::arg("E"), py::arg("m") = 1.0)
      .def_static("from_mu", &kernel::PhysParams::from_mu, py::arg("mu"), py::arg("m") = 1.0)
      .def_readonly("m", &kernel::PhysParams::m)
      .def_readonly("E", &kernel::PhysParams::E)
      .def_readonly("alpha", &kernel::PhysParams::alpha)
      .def_readonly("mu", &kernel::PhysParams::mu)
      .def("__repr__", [](const kernel::PhysParams& p) {
        return "PhysParams(m=" + std::to_string(p.m) + ", E=" + std::to_string(p.E) + ", mu=" + std::to_string(p.mu) +
               ")";
      });
  mod.def("green_function", &kernel::green_function, py::arg("r"), py::arg("p"));
  mod.def("l0_profile", &kernel::l0_profile, py::arg("r"), py::arg("m") = 1.0);
  mod.def("a_profile", &kernel::a_profile, py::arg("m") = 1.0);
  mod.def("b_profile", &kernel::b_profile, py::arg("r"), py::arg("m") = 1.0);
  mod.def("series_remainder", &kernel::series_remainder, py::arg("r"), py::arg("alpha"), py::arg("m") = 1.0);
  mod.def("envelope_bound", &kernel::envelope_bound, py::arg("r"), py::arg("p"), py::arg("c") = 0.7451315);
  mod.def("h3_root", &kernel::h3_root);

  // fourierb
  mod.def("b_hat", &fourierb::b_hat, py::arg("sigma"));
  mod.def(
      "hankel_incomplete",
      [](int alpha, int beta, double k, double m) { return fourierb::hankel_incomplete({alpha, beta, 3}, k, m); },
      py::arg("alpha"), py::arg("beta"), py::arg("k"), py::arg("m") = 1.0);
  mod.def(
      "hankel_tail", [](int alpha, int beta, double k, double m) { return fourierb::hankel_tail({alpha, beta, 3}, k, m); },
      py::arg("alpha"), py::arg("beta"), py::arg("k"), py::arg("m") = 1.0);

  // spectral
  py::class_<spectral::RadialPotential>(mod, "RadialPotential")
      .def("__call__", &spectral::RadialPotential::operator(), py::arg("r"))
      .def_readonly("support_radius", &spectral::RadialPotential::support_radius);
  mod.def("bump", &spectral::bump, py::arg("depth") = 1.0, py::arg("radius") = 1.0);
  mod.def("truncated_gaussian", &spectral::truncated_gaussian, py::arg("depth") = 1.0, py::arg("radius") = 1.0,
          py::arg("width") = 0.4);
  mod.def("square_well_smoothed", &spectral::square_well_smoothed, py::arg("depth") = 1.0, py::arg("radius") = 1.0,
          py::arg("edge") = 0.2);
  mod.def("tabulated", &spectral::tabulated, py::arg("r"), py::arg("v"));
  mod.def("scaled", &spectral::scaled, py::arg("potential"), py::arg("c"));

  py::class_<spectral::QuadGrid>(mod, "QuadGrid")
      .def_readonly("nodes", &spectral::QuadGrid::nodes)
      .def_readonly("weights", &spectral::QuadGrid::weights)
      .def_readonly("radius", &spectral::QuadGrid::radius);
  mod.def("gauss_legendre_grid", &spectral::gauss_legendre_grid, py::arg("n"), py::arg("radius"));

  py::class_<spectral::BsMatrix>(mod, "BsMatrix").def_readonly("entries", &spectral::BsMatrix::entries);
  mod.def("s_wave_reduce",
          py::overload_cast<const spectral::RadialPotential&, const kernel::PhysParams&, const spectral::QuadGrid&>(
              &spectral::s_wave_reduce),
          py::arg("potential"), py::arg("p"), py::arg("grid"));

  py::class_<spectral::SpectralResult>(mod, "SpectralResult")
      .def_readonly("mu0", &spectral::SpectralResult::mu0)
      .def_readonly("lambda0", &spectral::SpectralResult::lambda0)
      .def_readonly("phi", &spectral::SpectralResult::phi)
      .def_readonly("residual", &spectral::SpectralResult::residual)
      .def_readonly("gap", &spectral::SpectralResult::gap)
      .def_readonly("multiplicity", &spectral::SpectralResult::multiplicity);
  mod.def("leading_eigenpair", &spectral::leading_eigenpair, py::arg("mat"));
  mod.def(
      "eigen_continuation",
      [](const spectral::RadialPotential& v, const spectral::QuadGrid& g, const std::vector<double>& alphas, double m) {
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : spectral::eigen_continuation(v, g, alphas, m)) out.emplace_back(pt.alpha, pt.mu);
        return out;
      },
      py::arg("potential"), py::arg("grid"), py::arg("alphas"), py::arg("m") = 1.0);

  // threshold
  py::enum_<threshold::Branch>(mod, "Branch")
      .value("a_nonzero", threshold::Branch::a_nonzero)
      .value("a_zero", threshold::Branch::a_zero);
  py::class_<threshold::ThresholdExpansion>(mod, "ThresholdExpansion")
      .def_readwrite("mu0", &threshold::ThresholdExpansion::mu0)
      .def_readwrite("lambda0", &threshold::ThresholdExpansion::lambda0)
      .def_readwrite("a", &threshold::ThresholdExpansion::a)
      .def_readwrite("b", &threshold::ThresholdExpansion::b)
      .def_readwrite("c", &threshold::ThresholdExpansion::c)
      .def_readwrite("branch", &threshold::ThresholdExpansion::branch)
      .def_readwrite("m", &threshold::ThresholdExpansion::m);
  mod.def("coefficient_a", &threshold::coefficient_a, py::arg("res"), py::arg("potential"), py::arg("grid"),
          py::arg("m") = 1.0);
  mod.def(
      "coefficient_b",
      [](const spectral::SpectralResult& res, const spectral::RadialPotential& v, const spectral::QuadGrid& g,
         double m) {
        const auto b = threshold::coefficient_b(res, v, g, m, threshold::MomentumMode::finite_part);
        return py::dict(py::arg("direct") = b.direct, py::arg("momentum") = b.momentum, py::arg("mixing") = b.mixing,
                        py::arg("total") = b.total());
      },
      py::arg("res"), py::arg("potential"), py::arg("grid"), py::arg("m") = 1.0);
  mod.def("expansion", &threshold::expansion, py::arg("res"), py::arg("potential"), py::arg("grid"),
          py::arg("m") = 1.0, py::arg("a_zero_tol") = 1e-8);
  mod.def("zero_overlap_trial", &threshold::zero_overlap_trial, py::arg("l0"), py::arg("k") = 0);
  mod.def("lambda_of_alpha", &threshold::lambda_of_alpha, py::arg("exp"), py::arg("alpha"));
  mod.def("alpha_of_lambda", &threshold::alpha_of_lambda, py::arg("exp"), py::arg("lam"));
  mod.def("energy_of_lambda", &threshold::energy_of_lambda, py::arg("exp"), py::arg("lam"));
  mod.def(
      "u_reconstruct",
      [](const spectral::SpectralResult& res, const spectral::RadialPotential& v, const spectral::QuadGrid& g,
         const std::vector<double>& radii, double m) {
        const auto d = threshold::u_reconstruct(res, v, g, radii, m);
        return py::dict(py::arg("u") = d.u, py::arg("gamma") = d.gamma, py::arg("monopole") = d.monopole,
                        py::arg("prefactor_ratio") = d.prefactor_ratio);
      },
      py::arg("res"), py::arg("potential"), py::arg("grid"), py::arg("radii"), py::arg("m") = 1.0);

  // verify
  mod.def(
      "run_suite",
      [](const std::string& name, int grid_n) {
        verify::SuiteOptions opt;
        opt.grid_n = grid_n;
        const auto rep = verify::run_suite(name, opt);
        py::list checks;
        for (const auto& c : rep.checks) {
          checks.append(py::dict(py::arg("group") = c.group, py::arg("name") = c.name, py::arg("value") = c.value,
                                 py::arg("residual") = c.residual, py::arg("tolerance") = c.tolerance,
                                 py::arg("passed") = c.passed, py::arg("note") = c.note));
        }
        return py::dict(py::arg("suite") = rep.suite, py::arg("passed") = rep.passed(), py::arg("checks") = checks);
      },
      py::arg("name"), py::arg("grid_n") = 200);
  mod.attr("suite_names") = verify::suite_names();
}
