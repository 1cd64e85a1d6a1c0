#include "bhmetric/hamiltonian.hpp"

#include <cmath>

#include "bhmetric/errors.hpp"
#include "bhmetric/su2.hpp"

namespace bhmetric {

namespace {

void check_common(const CbhParams& p) {
  if (p.N < 2) throw InvalidDimension("CbhParams: dimension must be at least 2");
  if (p.epsilon != 0.0 && p.gamma != 0.0)
    throw InvalidParams("CbhParams: at most one of epsilon, gamma may be nonzero");
}

}  // namespace

ComplexMatrix build_hermitian_bh(const CbhParams& p) {
  check_common(p);
  if (p.gamma != 0.0) throw InvalidParams("build_hermitian_bh: gamma must be zero");
  const Generators g = build_generators(p.N);
  ComplexMatrix h = Complex{2.0 * p.epsilon, 0.0} * g.Lz + Complex{2.0 * p.v, 0.0} * g.Lx;
  if (p.c != 0.0) h += Complex{2.0 * p.c, 0.0} * (g.Lz * g.Lz);
  return h;
}

ComplexMatrix build_cbh(const CbhParams& p) {
  check_common(p);
  if (p.epsilon != 0.0) throw InvalidParams("build_cbh: epsilon must be zero");
  const Generators g = build_generators(p.N);
  ComplexMatrix h = Complex{0.0, -2.0 * p.gamma} * g.Lz + Complex{2.0 * p.v, 0.0} * g.Lx;
  if (p.c != 0.0) h += Complex{2.0 * p.c, 0.0} * (g.Lz * g.Lz);
  return h;
}

SpectrumReport spectrum(const ComplexMatrix& h, double tol) {
  if (!h.square()) throw InvalidDimension("spectrum: matrix must be square");
  EigenResult eig = general_eigen(h, kDefaultTol, /*want_vectors=*/false);
  SpectrumReport rep;
  rep.eigenvalues = std::move(eig.eigenvalues);
  for (const auto& e : rep.eigenvalues)
    rep.max_imag = std::max(rep.max_imag, std::abs(e.imag()));
  rep.is_real = rep.max_imag <= tol;
  return rep;
}

PhaseVerdict classify_phase(const CbhParams& p, double tol, double boundary_tol) {
  if (p.epsilon != 0.0) throw InvalidParams("classify_phase: epsilon must be zero");
  PhaseVerdict verdict;
  verdict.gamma = p.gamma;

  const bool closed_form = (p.c == 0.0 && p.v == 1.0);
  const SpectrumReport rep = spectrum(build_cbh(p), tol);

  if (closed_form) {
    verdict.ep_distance = 1.0 - std::abs(p.gamma);
    if (std::abs(verdict.ep_distance) <= boundary_tol) {
      verdict.phase = Phase::boundary;
      return verdict;
    }
    // Cross-check the closed-form boundary against the numerical spectrum.
    bool gaps_ok = rep.is_real;
    for (std::size_t i = 0; i + 1 < rep.eigenvalues.size() && gaps_ok; ++i)
      if (std::abs(rep.eigenvalues[i + 1] - rep.eigenvalues[i]) <= tol) gaps_ok = false;
    verdict.phase = (verdict.ep_distance > 0.0 && gaps_ok) ? Phase::unbroken : Phase::broken;
    return verdict;
  }

  // No closed-form boundary for c != 0 or v != 1: rely on the spectral test.
  verdict.spectral_test_only = true;
  verdict.ep_distance = std::nan("");
  bool gaps_ok = rep.is_real;
  bool near_degenerate = false;
  for (std::size_t i = 0; i + 1 < rep.eigenvalues.size(); ++i)
    if (std::abs(rep.eigenvalues[i + 1] - rep.eigenvalues[i]) <= tol) near_degenerate = true;
  if (rep.is_real && near_degenerate)
    verdict.phase = Phase::boundary;
  else
    verdict.phase = (gaps_ok ? Phase::unbroken : Phase::broken);
  return verdict;
}

}  // namespace bhmetric
