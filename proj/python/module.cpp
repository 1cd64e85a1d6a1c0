#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bhmetric/analysis.hpp"
#include "bhmetric/dieudonne.hpp"
#include "bhmetric/eigen.hpp"
#include "bhmetric/evolution.hpp"
#include "bhmetric/hamiltonian.hpp"
#include "bhmetric/su2.hpp"

namespace py = pybind11;
using namespace bhmetric;

namespace {

py::array_t<Complex> to_numpy(const ComplexMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  return out;
}

ComplexMatrix from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw InvalidDimension("expected a two-dimensional array");
  ComplexMatrix m(std::size_t(a.shape(0)), std::size_t(a.shape(1)));
  auto buf = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(std::size_t(i), std::size_t(j)) = buf(i, j);
  return m;
}

py::dict candidate_dict(const MetricCandidate& cand) {
  py::dict d;
  d["matrix"] = to_numpy(cand.matrix);
  d["family"] = to_string(cand.family);
  d["gamma"] = cand.gamma;
  d["hermiticity_residual"] = cand.hermiticity_residual;
  d["dieudonne_residual"] = cand.dieudonne_residual;
  d["warnings"] = cand.warnings;
  return d;
}

MetricCandidate candidate_from(const py::array_t<Complex>& theta) {
  MetricCandidate cand;
  cand.matrix = from_numpy(theta);
  return cand;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quasi-Hermitian Bose-Hubbard toolkit";

  m.def(
      "build_cbh",
      [](std::size_t N, double gamma, double v, double c) {
        return to_numpy(build_cbh({.N = N, .gamma = gamma, .v = v, .c = c}));
      },
      py::arg("N"), py::arg("gamma"), py::arg("v") = 1.0, py::arg("c") = 0.0);

  m.def(
      "build_hermitian_bh",
      [](std::size_t N, double epsilon, double v, double c) {
        return to_numpy(build_hermitian_bh({.N = N, .epsilon = epsilon, .v = v, .c = c}));
      },
      py::arg("N"), py::arg("epsilon") = 0.0, py::arg("v") = 1.0, py::arg("c") = 0.0);

  m.def(
      "generators",
      [](std::size_t N) {
        const Generators g = build_generators(N);
        return py::make_tuple(to_numpy(g.Lx), to_numpy(g.Ly), to_numpy(g.Lz));
      },
      py::arg("N"));

  m.def(
      "spectrum",
      [](const py::array_t<Complex>& h, double tol) {
        const SpectrumReport rep = spectrum(from_numpy(h), tol);
        py::dict d;
        d["eigenvalues"] = rep.eigenvalues;
        d["max_imag"] = rep.max_imag;
        d["is_real"] = rep.is_real;
        return d;
      },
      py::arg("h"), py::arg("tol") = 1e-10);

  m.def(
      "classify_phase",
      [](std::size_t N, double gamma) {
        const PhaseVerdict v = classify_phase({.N = N, .gamma = gamma});
        const char* name = v.phase == Phase::unbroken ? "unbroken"
                           : v.phase == Phase::boundary ? "boundary"
                                                        : "broken";
        py::dict d;
        d["phase"] = name;
        d["gamma"] = v.gamma;
        d["ep_distance"] = v.ep_distance;
        return d;
      },
      py::arg("N"), py::arg("gamma"));

  m.def(
      "metric",
      [](std::size_t N, const std::string& family, double gamma, double nu) {
        FamilyOptions opts;
        opts.nu = nu;
        return candidate_dict(named_family(N, family_from_string(family), gamma, opts));
      },
      py::arg("N"), py::arg("family"), py::arg("gamma"), py::arg("nu") = 1.0);

  m.def(
      "metric_from_first_row",
      [](const py::array_t<Complex>& h, const std::vector<double>& first_row_real) {
        MetricParams p;
        p.first_row_real = first_row_real;
        return candidate_dict(metric_from_first_row(from_numpy(h), p));
      },
      py::arg("h"), py::arg("first_row_real"));

  m.def(
      "solve_nullspace",
      [](const py::array_t<Complex>& h) {
        py::list out;
        for (const auto& cand : solve_nullspace(from_numpy(h))) out.append(candidate_dict(cand));
        return out;
      },
      py::arg("h"));

  m.def(
      "positivity",
      [](const py::array_t<Complex>& theta) {
        const PositivityReport rep = positivity(candidate_from(theta));
        py::dict d;
        d["eigenvalues"] = rep.eigenvalues;
        d["min_eigenvalue"] = rep.min_eigenvalue;
        d["positive_definite"] = rep.positive_definite;
        d["anisotropy"] = rep.anisotropy;
        return d;
      },
      py::arg("theta"));

  m.def(
      "critical_gamma",
      [](const std::string& family, std::size_t N) {
        const CriticalGamma cg = find_gamma_critical(family_from_string(family), N);
        py::dict d;
        d["gamma_critical"] = cg.gamma_critical;
        d["bracket_width"] = cg.bracket_width;
        d["no_sign_change"] = cg.no_sign_change;
        return d;
      },
      py::arg("family"), py::arg("N"));

  m.def(
      "fit_series",
      [](const std::string& family, std::size_t N) {
        const SeriesFit fit = fit_series(family_from_string(family), N);
        py::dict d;
        d["A"] = fit.A;
        d["B"] = fit.B;
        d["residual"] = fit.residual;
        d["grid"] = fit.grid;
        return d;
      },
      py::arg("family"), py::arg("N"));

  m.def(
      "evolve",
      [](const py::array_t<Complex>& h, const py::array_t<Complex>& theta,
         const std::vector<Complex>& psi0, const std::vector<double>& times) {
        const EvolutionTrace trace = evolve(from_numpy(h), candidate_from(theta), psi0, times);
        py::dict d;
        d["times"] = trace.times;
        d["theta_norms"] = trace.theta_norms;
        d["naive_norms"] = trace.naive_norms;
        d["max_drift"] = trace.max_drift;
        return d;
      },
      py::arg("h"), py::arg("theta"), py::arg("psi0"), py::arg("times"));
}
