#include "bhmetric/analysis.hpp"

#include <cmath>

#include "bhmetric/eigen.hpp"
#include "bhmetric/errors.hpp"
#include "bhmetric/nullspace.hpp"

namespace bhmetric {

PositivityReport positivity(const MetricCandidate& candidate, double tol) {
  const ComplexMatrix& m = candidate.matrix;
  if (!m.is_hermitian(1e-10 * std::max(1.0, m.max_norm())))
    throw NonHermitianInput("positivity: candidate matrix is not Hermitian");
  const EigenResult eig = hermitian_eigen(m, kDefaultTol, /*want_vectors=*/false);

  PositivityReport rep;
  rep.gamma = candidate.gamma;
  rep.eigenvalues.reserve(eig.eigenvalues.size());
  for (const auto& e : eig.eigenvalues) rep.eigenvalues.push_back(e.real());
  rep.min_eigenvalue = rep.eigenvalues.front();
  const double avg = m.trace().real() / double(m.rows());
  rep.positive_definite = rep.min_eigenvalue > tol * avg;
  rep.anisotropy = rep.eigenvalues.back() - rep.eigenvalues.front();
  return rep;
}

namespace {

// Monomial coefficients of the polynomial interpolating (xs, f), via Newton
// divided differences (Bjorck-Pereyra). Much more accurate than a normal or
// QR solve of the Vandermonde system when the nodes are positive and ordered.
std::vector<double> vandermonde_interpolate(const std::vector<double>& xs,
                                            std::vector<double> f) {
  const std::size_t n = xs.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) f[i] = (f[i] - f[i - 1]) / (xs[i] - xs[i - k - 1]);
  for (std::size_t k = n - 1; k-- > 0;)
    for (std::size_t i = k; i + 1 < n; ++i) f[i] -= xs[k] * f[i + 1];
  return f;
}

double min_metric_eigenvalue(MetricFamily family, std::size_t N, double gamma,
                             const FamilyOptions& opts) {
  const MetricCandidate cand = named_family(N, family, gamma, opts);
  const EigenResult eig = hermitian_eigen(cand.matrix, kDefaultTol, /*want_vectors=*/false);
  return eig.eigenvalues.front().real();
}

}  // namespace

CriticalGamma find_gamma_critical(MetricFamily family, std::size_t N,
                                  const CriticalOptions& opts) {
  CriticalGamma result;
  result.family = family;
  result.N = N;

  const double gamma_hi = 1.0 - 1e-6;
  double lo = opts.gamma_lo;
  double f_lo = min_metric_eigenvalue(family, N, lo, opts.family_options);
  if (f_lo <= 0.0)
    throw InvalidParams("find_gamma_critical: family is not positive definite at gamma_lo");

  // Coarse scan for the first sign change, then bisection.
  const int scan_steps = 400;
  double hi = gamma_hi;
  double f_hi = 0.0;
  bool bracketed = false;
  double prev = lo, f_prev = f_lo;
  for (int k = 1; k <= scan_steps; ++k) {
    const double g = lo + (gamma_hi - lo) * double(k) / double(scan_steps);
    const double f = min_metric_eigenvalue(family, N, g, opts.family_options);
    if (f <= 0.0) {
      lo = prev;
      f_lo = f_prev;
      hi = g;
      f_hi = f;
      bracketed = true;
      break;
    }
    prev = g;
    f_prev = f;
  }
  if (!bracketed) {
    result.no_sign_change = true;
    result.gamma_critical = gamma_hi;
    result.bracket_width = 0.0;
    result.min_eig_at_boundary = f_prev;
    return result;
  }

  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    const double f = min_metric_eigenvalue(family, N, mid, opts.family_options);
    if (f > 0.0) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
  }
  result.gamma_critical = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  result.min_eig_at_boundary = f_hi;
  (void)f_lo;
  return result;
}

SeriesFit fit_series(MetricFamily family, std::size_t N, int order, std::vector<double> grid,
                     const FamilyOptions& opts) {
  if (order != 2) throw InvalidParams("fit_series: only order 2 is supported");
  if (grid.empty()) {
    const double lo = 0.002, hi = 0.04;
    for (int k = 0; k < 12; ++k) grid.push_back(lo + (hi - lo) * double(k) / 11.0);
  }
  if (grid.size() < 5) throw InvalidParams("fit_series: grid must have at least 5 points");

  // Sorted-branch tracking: branch j is the j-th smallest eigenvalue.
  std::vector<std::vector<double>> branches(N, std::vector<double>(grid.size()));
  double min_separation = 1e300;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const MetricCandidate cand = named_family(N, family, grid[g], opts);
    const EigenResult eig = hermitian_eigen(cand.matrix, kDefaultTol, /*want_vectors=*/false);
    for (std::size_t j = 0; j < N; ++j) branches[j][g] = eig.eigenvalues[j].real();
    for (std::size_t j = 0; j + 1 < N; ++j)
      min_separation =
          std::min(min_separation, eig.eigenvalues[j + 1].real() - eig.eigenvalues[j].real());
  }

  SeriesFit fit;
  fit.grid = grid;
  fit.A.resize(N);
  fit.B.resize(N);
  // Basis {gamma, gamma^2, gamma^3, gamma^4}: the cubic and quartic terms are
  // nuisance parameters absorbing the truncation error of the small grid.
  std::vector<std::vector<double>> cols(4, std::vector<double>(grid.size()));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double x = grid[g];
    cols[0][g] = x;
    cols[1][g] = x * x;
    cols[2][g] = x * x * x;
    cols[3][g] = x * x * x * x;
  }
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<double> rhs(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) rhs[g] = branches[j][g] - 1.0;
    const std::vector<double> coef = least_squares_columns(cols, rhs);
    fit.A[j] = coef[0];
    fit.B[j] = coef[1];
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double model = 0.0, x = 1.0;
      for (std::size_t c = 0; c < coef.size(); ++c) {
        x *= grid[g];
        model += coef[c] * x;
      }
      fit.residual = std::max(fit.residual, std::abs(model - rhs[g]));
    }
  }
  if (min_separation < 10.0 * std::max(fit.residual, 1e-14))
    throw BranchCrossing("fit_series: adjacent eigenvalue branches approach each other");
  return fit;
}

double leading_order_estimate(std::size_t N) {
  if (N < 2) throw InvalidDimension("leading_order_estimate: N must be at least 2");
  return 1.0 / double(N - 1);
}

EigencurveTable eigencurve_table(MetricFamily family, std::size_t N,
                                 const std::vector<double>& grid, const FamilyOptions& opts) {
  EigencurveTable table;
  table.gammas = grid;
  table.thetas.reserve(grid.size());
  for (double g : grid) {
    const MetricCandidate cand = named_family(N, family, g, opts);
    const EigenResult eig = hermitian_eigen(cand.matrix, kDefaultTol, /*want_vectors=*/false);
    std::vector<double> row(N);
    for (std::size_t j = 0; j < N; ++j) row[j] = eig.eigenvalues[j].real();
    table.thetas.push_back(std::move(row));
  }
  table.min_branch_monotone_decreasing = true;
  for (std::size_t g = 0; g + 1 < table.thetas.size(); ++g)
    if (table.thetas[g + 1][0] > table.thetas[g][0] + 1e-12)
      table.min_branch_monotone_decreasing = false;
  return table;
}

PowerPatternReport power_pattern_audit(MetricFamily family, std::size_t N, double coeff_tol) {
  // Parity is separated exactly by sampling at +/- gamma; each parity sector is
  // then an interpolation problem in gamma^2. The entries are polynomials for
  // any gamma (positivity is irrelevant here), so the samples sit on [0.5, 1]
  // where the gamma^2-Vandermonde system is well conditioned; 6 magnitudes,
  // 12 sample points in total.
  const std::size_t half = 6;
  std::vector<double> gs(half);
  for (std::size_t k = 0; k < half; ++k) gs[k] = 0.5 + 0.5 * double(k) / double(half - 1);

  std::vector<ComplexMatrix> plus, minus;
  for (double g : gs) {
    plus.push_back(named_family(N, family, g).matrix);
    minus.push_back(named_family(N, family, -g).matrix);
  }

  std::vector<double> xs(half);
  for (std::size_t k = 0; k < half; ++k) xs[k] = gs[k] * gs[k];

  PowerPatternReport rep;
  rep.ok = true;
  const auto record = [&](std::size_t i, std::size_t j, int power, double coef) {
    if (std::abs(coef) <= coeff_tol) return;
    rep.ok = false;
    rep.worst_disallowed = std::max(rep.worst_disallowed, std::abs(coef));
    rep.violations.push_back({i + 1, j + 1, power, coef});
  };

  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const int one_i = int(i) + 1, one_j = int(j) + 1;
      const bool even_sector = (one_i + one_j) % 2 == 0;
      const int min_k = std::abs(one_i - one_j);
      const int max_k = std::min(one_i + one_j - 2, 2 * int(N) + 2 - one_i - one_j);

      // Chessboard structure: only one component (Re for even i+j, Im for odd)
      // with matching gamma-parity is allowed; everything else must vanish.
      for (std::size_t g = 0; g < half; ++g) {
        const Complex even_part = 0.5 * (plus[g](i, j) + minus[g](i, j));
        const Complex odd_part = 0.5 * (plus[g](i, j) - minus[g](i, j));
        double wrong;
        if (even_sector)
          wrong = std::max({std::abs(even_part.imag()), std::abs(odd_part.real()),
                            std::abs(odd_part.imag())});
        else
          wrong = std::max({std::abs(even_part.real()), std::abs(even_part.imag()),
                            std::abs(odd_part.real())});
        record(i, j, -1, wrong);
      }

      // Fit the structurally allowed component in powers of gamma^2.
      std::vector<double> samples(half);
      for (std::size_t g = 0; g < half; ++g) {
        const Complex even_part = 0.5 * (plus[g](i, j) + minus[g](i, j));
        const Complex odd_part = 0.5 * (plus[g](i, j) - minus[g](i, j));
        samples[g] = even_sector ? even_part.real() : odd_part.imag() / gs[g];
      }
      const std::vector<double> coef = vandermonde_interpolate(xs, samples);
      for (std::size_t m = 0; m < half; ++m) {
        const int power = even_sector ? 2 * int(m) : 2 * int(m) + 1;
        const bool allowed = power >= min_k && power <= max_k;
        if (!allowed) record(i, j, power, coef[m]);
      }
    }
  }
  return rep;
}

}  // namespace bhmetric
