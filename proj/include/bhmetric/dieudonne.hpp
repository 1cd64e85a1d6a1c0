#pragma once

#include <string>
#include <vector>

#include "bhmetric/matrix.hpp"

namespace bhmetric {

// Free parameters of the metric construction: the real parts of the first row,
// with entry 0 pinned to 1 (normalization Theta_{1,1} = 1). Conventional
// aliases: beta = entry 1, delta = entry 2, kappa = entry 3.
struct MetricParams {
  std::vector<double> first_row_real;

  static MetricParams zeros(std::size_t n) {
    MetricParams p;
    p.first_row_real.assign(n, 0.0);
    p.first_row_real[0] = 1.0;
    return p;
  }
};

enum class MetricFamily { general, zero_param, chessboard, delta_rule, linearized, spectral };

std::string to_string(MetricFamily family);
MetricFamily family_from_string(const std::string& name);

struct MetricCandidate {
  ComplexMatrix matrix;
  MetricParams params;
  MetricFamily family = MetricFamily::general;
  double gamma = 0.0;
  double hermiticity_residual = 0.0;
  double dieudonne_residual = 0.0;
  std::vector<std::string> warnings;
};

struct FamilyOptions {
  double nu = 1.0;  // exponent-mixing parameter of the delta-rule family (1..4)
};

// max-norm of H^dagger Theta - Theta H.
double dieudonne_residual(const ComplexMatrix& h, const ComplexMatrix& theta);

// Row-wise recurrence for tridiagonal complex-symmetric H: the unique Hermitian
// solution of H^dagger Theta = Theta H whose first-row real parts equal params.
MetricCandidate metric_from_first_row(const ComplexMatrix& h, const MetricParams& params);

// Basis of the real solution space of the Dieudonne equation over Hermitian
// unknowns, via SVD of the vectorized commutator map.
std::vector<MetricCandidate> solve_nullspace(const ComplexMatrix& h, double tol = 1e-10,
                                             double safety_factor = 1e3);

// Linear combination of nullspace basis elements whose first-row real parts
// match params; used to compare the nullspace route against the recurrence.
MetricCandidate combine_nullspace_basis(const std::vector<MetricCandidate>& basis,
                                        const MetricParams& params);

// Biorthogonal construction Theta = sum_j w_j |L_j><L_j| over left eigenvectors,
// trace-normalized; requires a real nondegenerate spectrum and positive weights.
MetricCandidate spectral_metric(const ComplexMatrix& h, const std::vector<double>& weights);

// Least-squares weights making the spectral construction match a target metric.
std::vector<double> fit_spectral_weights(const ComplexMatrix& h, const ComplexMatrix& target);

// I - 2 gamma Ly; satisfies the Dieudonne equation to O(gamma^2) only, and the
// candidate records that residual.
MetricCandidate linearized_metric(std::size_t N, double gamma);

// Closed-form families: zero_param (N = 2..6), chessboard (N = 5, 6),
// delta_rule (N = 3, 4), linearized (any N >= 2).
MetricCandidate named_family(std::size_t N, MetricFamily family, double gamma,
                             const FamilyOptions& opts = {});

}  // namespace bhmetric
