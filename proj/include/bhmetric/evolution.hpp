#pragma once

#include <vector>

#include "bhmetric/dieudonne.hpp"

namespace bhmetric {

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> theta_norms;  // <psi(t)| Theta |psi(t)>
  std::vector<double> naive_norms;  // <psi(t)|psi(t)>
  double max_drift = 0.0;           // max_t |theta_norm(t) - theta_norm(0)|
};

struct EvolveOptions {
  double propagator_tol = 1e-12;
  // The broken-phase audit deliberately propagates with an indefinite metric;
  // everything else keeps the positivity requirement on.
  bool require_positive_metric = true;
};

// psi(t) = exp(-i H t) psi(0), with the Theta-weighted and naive norms recorded
// at every requested time.
EvolutionTrace evolve(const ComplexMatrix& h, const MetricCandidate& theta,
                      const CVector& psi0, const std::vector<double>& times,
                      const EvolveOptions& opts = {});

struct ObservableCandidate {
  ComplexMatrix matrix;
  double compatibility_residual = 0.0;  // ||Lambda^dagger Theta - Theta Lambda||_max
  bool compatible = false;
};

ObservableCandidate check_observable(const ComplexMatrix& lambda, const MetricCandidate& theta,
                                     double tol = 1e-10);

}  // namespace bhmetric
