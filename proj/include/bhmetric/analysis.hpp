#pragma once

#include <vector>

#include "bhmetric/dieudonne.hpp"

namespace bhmetric {

struct PositivityReport {
  double gamma = 0.0;
  std::vector<double> eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  bool positive_definite = false;
  double anisotropy = 0.0;  // theta_max - theta_min
};

// Eigenvalues of a Hermitian metric candidate. Positive definite means the
// minimum eigenvalue exceeds tol * (trace / N).
PositivityReport positivity(const MetricCandidate& candidate, double tol = 1e-12);

struct CriticalGamma {
  MetricFamily family = MetricFamily::zero_param;
  std::size_t N = 0;
  double gamma_critical = 0.0;
  double bracket_width = 0.0;
  double min_eig_at_boundary = 0.0;
  // Set when the family stays positive definite up to gamma = 1 - 1e-6; the
  // boundary fields then describe that endpoint instead of a sign change.
  bool no_sign_change = false;
};

struct CriticalOptions {
  FamilyOptions family_options;
  double gamma_lo = 1e-3;
  double tol = 1e-10;  // final bracket width
};

// Bisection on the sign of the smallest metric eigenvalue over (gamma_lo, 1).
CriticalGamma find_gamma_critical(MetricFamily family, std::size_t N,
                                  const CriticalOptions& opts = {});

struct SeriesFit {
  std::vector<double> A;  // per sorted eigenvalue branch, ascending
  std::vector<double> B;
  double residual = 0.0;
  std::vector<double> grid;
};

// Least-squares fit theta_j(gamma) = 1 + A_j gamma + B_j gamma^2 + O(gamma^3)
// per sorted branch; higher-order nuisance terms absorb the truncation error.
// Default grid: 12 uniform points on [0.002, 0.04].
SeriesFit fit_series(MetricFamily family, std::size_t N, int order = 2,
                     std::vector<double> grid = {}, const FamilyOptions& opts = {});

// First-order positivity-boundary estimate 1 / (N - 1).
double leading_order_estimate(std::size_t N);

struct EigencurveTable {
  std::vector<double> gammas;
  std::vector<std::vector<double>> thetas;  // per row: sorted eigenvalues
  bool min_branch_monotone_decreasing = false;  // reported, not assumed
};

EigencurveTable eigencurve_table(MetricFamily family, std::size_t N,
                                 const std::vector<double>& grid,
                                 const FamilyOptions& opts = {});

struct PowerPatternEntry {
  std::size_t i = 0, j = 0;  // 1-based entry indices
  int power = 0;
  double coefficient = 0.0;
};

struct PowerPatternReport {
  bool ok = false;
  double worst_disallowed = 0.0;
  std::vector<PowerPatternEntry> violations;
};

// Polynomial fit of each metric entry on a gamma grid; coefficients must obey
// the parity rule (power parity equals parity of i + j) and the window
// |i - j| <= K <= min(i + j - 2, 2N + 2 - i - j).
PowerPatternReport power_pattern_audit(MetricFamily family, std::size_t N,
                                       double coeff_tol = 1e-9);

}  // namespace bhmetric
