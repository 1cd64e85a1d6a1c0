#include "bhmetric/evolution.hpp"

#include <cmath>

#include "bhmetric/eigen.hpp"
#include "bhmetric/errors.hpp"
#include "bhmetric/expm.hpp"

namespace bhmetric {

EvolutionTrace evolve(const ComplexMatrix& h, const MetricCandidate& theta,
                      const CVector& psi0, const std::vector<double>& times,
                      const EvolveOptions& opts) {
  if (!h.square() || h.rows() != psi0.size())
    throw InvalidDimension("evolve: dimension mismatch");
  if (vector_norm(psi0) == 0.0) throw InvalidParams("evolve: initial state must be nonzero");
  if (opts.require_positive_metric) {
    const EigenResult eig = hermitian_eigen(theta.matrix, kDefaultTol, /*want_vectors=*/false);
    if (eig.eigenvalues.front().real() <= 0.0)
      throw NonPositiveMetric("evolve: metric is not positive definite");
  }

  EvolutionTrace trace;
  trace.times = times;
  trace.states.reserve(times.size());
  for (double t : times) {
    ComplexMatrix gen = h;
    gen *= Complex{0.0, -t};
    CVector psi = matrix_exponential_apply(gen, psi0, opts.propagator_tol);
    const CVector theta_psi = theta.matrix.apply(psi);
    trace.theta_norms.push_back(inner(psi, theta_psi).real());
    trace.naive_norms.push_back(inner(psi, psi).real());
    trace.states.push_back(std::move(psi));
  }
  for (double n : trace.theta_norms)
    trace.max_drift = std::max(trace.max_drift, std::abs(n - trace.theta_norms.front()));
  return trace;
}

ObservableCandidate check_observable(const ComplexMatrix& lambda, const MetricCandidate& theta,
                                     double tol) {
  if (!lambda.square() || lambda.rows() != theta.matrix.rows())
    throw InvalidDimension("check_observable: dimension mismatch");
  ObservableCandidate cand;
  cand.matrix = lambda;
  cand.compatibility_residual =
      (lambda.adjoint() * theta.matrix - theta.matrix * lambda).max_norm();
  cand.compatible = cand.compatibility_residual <= tol;
  return cand;
}

}  // namespace bhmetric
