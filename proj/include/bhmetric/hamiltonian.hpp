#pragma once

#include <vector>

#include "bhmetric/eigen.hpp"
#include "bhmetric/matrix.hpp"

namespace bhmetric {

// Parameter set of the two-mode Bose-Hubbard family. At most one of
// {epsilon, gamma} may be nonzero in a single build request; the interface
// point epsilon = gamma = 0 is legal.
struct CbhParams {
  std::size_t N = 2;
  double epsilon = 0.0;  // real on-site energy (Hermitian branch)
  double gamma = 0.0;    // non-Hermiticity strength (complexified branch)
  double v = 1.0;        // tunneling strength
  double c = 0.0;        // interaction strength
};

struct SpectrumReport {
  CVector eigenvalues;  // sorted by (Re, Im)
  double max_imag = 0.0;
  bool is_real = false;
};

enum class Phase { unbroken, boundary, broken };

struct PhaseVerdict {
  Phase phase = Phase::unbroken;
  double gamma = 0.0;
  double ep_distance = 0.0;  // 1 - |gamma| for c = 0, v = 1
  bool spectral_test_only = false;  // set when no closed-form boundary applies
};

// 2 eps Lz + 2 v Lx + 2 c Lz^2; requires gamma = 0.
ComplexMatrix build_hermitian_bh(const CbhParams& p);

// -2 i gamma Lz + 2 v Lx + 2 c Lz^2; requires epsilon = 0.
ComplexMatrix build_cbh(const CbhParams& p);

SpectrumReport spectrum(const ComplexMatrix& h, double tol = 1e-10);

// Phase classification against the known boundary at |gamma| = 1 (c = 0,
// v = 1). For c != 0 or v != 1 the classification falls back to the numerical
// reality test and flags it.
PhaseVerdict classify_phase(const CbhParams& p, double tol = 1e-10,
                            double boundary_tol = 1e-6);

}  // namespace bhmetric
