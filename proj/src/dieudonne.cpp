#include "bhmetric/dieudonne.hpp"

#include <cmath>
#include <utility>

#include "bhmetric/eigen.hpp"
#include "bhmetric/errors.hpp"
#include "bhmetric/hamiltonian.hpp"
#include "bhmetric/nullspace.hpp"
#include "bhmetric/su2.hpp"

namespace bhmetric {

std::string to_string(MetricFamily family) {
  switch (family) {
    case MetricFamily::general: return "general";
    case MetricFamily::zero_param: return "zero_param";
    case MetricFamily::chessboard: return "chessboard";
    case MetricFamily::delta_rule: return "delta_rule";
    case MetricFamily::linearized: return "linearized";
    case MetricFamily::spectral: return "spectral";
  }
  return "general";
}

MetricFamily family_from_string(const std::string& name) {
  if (name == "general") return MetricFamily::general;
  if (name == "zero_param") return MetricFamily::zero_param;
  if (name == "chessboard") return MetricFamily::chessboard;
  if (name == "delta_rule") return MetricFamily::delta_rule;
  if (name == "linearized") return MetricFamily::linearized;
  if (name == "spectral") return MetricFamily::spectral;
  throw UnknownFamily("unknown metric family: " + name);
}

double dieudonne_residual(const ComplexMatrix& h, const ComplexMatrix& theta) {
  return (h.adjoint() * theta - theta * h).max_norm();
}

namespace {

struct Tridiag {
  CVector diag;
  std::vector<double> off;  // real off-diagonal couplings
};

Tridiag check_tridiagonal(const ComplexMatrix& h) {
  if (!h.square()) throw InvalidDimension("metric solver: Hamiltonian must be square");
  const std::size_t n = h.rows();
  const double tol = 1e-12 * std::max(1.0, h.max_norm());
  Tridiag t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || (i > j ? i - j : j - i) == 1) continue;
      if (std::abs(h(i, j)) > tol)
        throw InvalidParams("metric solver: Hamiltonian must be tridiagonal");
    }
    t.diag[i] = h(i, i);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex a = h(k, k + 1), b = h(k + 1, k);
    if (std::abs(a - b) > tol || std::abs(a.imag()) > tol)
      throw InvalidParams("metric solver: off-diagonal couplings must be real symmetric");
    t.off[k] = a.real();
  }
  return t;
}

double gamma_of(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  return n > 1 ? -h(0, 0).imag() / double(n - 1) : 0.0;
}

// Row-wise sweep of H^dagger Theta = Theta H for tridiagonal H: given the full
// (complex) first row, every further row follows with the coupling t_i as
// pivot.
ComplexMatrix rows_from_first(const Tridiag& t, const CVector& first_row) {
  const std::size_t n = first_row.size();
  ComplexMatrix theta(n, n);
  for (std::size_t j = 0; j < n; ++j) theta(0, j) = first_row[j];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(t.off[i]) < 1e-14)
      throw RecurrenceBreakdown("metric_from_first_row: vanishing sub-diagonal pivot");
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = theta(i, j) * (t.diag[j] - std::conj(t.diag[i]));
      if (j > 0) acc += theta(i, j - 1) * t.off[j - 1];
      if (j + 1 < n) acc += theta(i, j + 1) * t.off[j];
      if (i > 0) acc -= t.off[i - 1] * theta(i - 1, j);
      theta(i + 1, j) = acc / t.off[i];
    }
  }
  return theta;
}

std::vector<double> flatten_defect(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<double> out;
  out.reserve(2 * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex d = m(i, j) - std::conj(m(j, i));
      out.push_back(d.real());
      out.push_back(d.imag());
    }
  return out;
}

void near_ep_warning(double gamma, MetricCandidate& cand) {
  if (std::abs(gamma) >= 0.99)
    cand.warnings.push_back("near-exceptional-point conditioning: |gamma| >= 0.99");
}

void finalize(const ComplexMatrix& h, MetricCandidate& cand) {
  cand.hermiticity_residual = cand.matrix.hermiticity_defect();
  cand.dieudonne_residual = dieudonne_residual(h, cand.matrix);
}

}  // namespace

MetricCandidate metric_from_first_row(const ComplexMatrix& h, const MetricParams& params) {
  const Tridiag t = check_tridiagonal(h);
  const std::size_t n = h.rows();
  if (params.first_row_real.size() != n)
    throw InvalidParams("metric_from_first_row: parameter vector length must equal N");
  if (params.first_row_real[0] != 1.0)
    throw InvalidParams("metric_from_first_row: the first parameter is fixed to 1");

  // The recurrence consumes the full complex first row; its imaginary parts
  // are the unique values restoring Hermiticity of the generated matrix.
  CVector base(n);
  for (std::size_t j = 0; j < n; ++j) base[j] = params.first_row_real[j];
  const ComplexMatrix theta0 = rows_from_first(t, base);

  std::vector<std::vector<double>> cols;
  std::vector<ComplexMatrix> directions;
  for (std::size_t k = 1; k < n; ++k) {
    CVector unit(n, Complex{0.0, 0.0});
    unit[k] = Complex{0.0, 1.0};
    directions.push_back(rows_from_first(t, unit));
    cols.push_back(flatten_defect(directions.back()));
  }
  std::vector<double> rhs = flatten_defect(theta0);
  for (auto& r : rhs) r = -r;
  const std::vector<double> imag_parts = least_squares_columns(cols, rhs);

  MetricCandidate cand;
  cand.matrix = theta0;
  for (std::size_t k = 1; k < n; ++k)
    cand.matrix += Complex{imag_parts[k - 1], 0.0} * directions[k - 1];
  cand.params = params;
  cand.family = MetricFamily::general;
  cand.gamma = gamma_of(h);
  near_ep_warning(cand.gamma, cand);
  finalize(h, cand);
  return cand;
}

namespace {

// Hermitian basis element for parameter index k of the vectorization:
// k < n are diagonal entries, the rest are (Re, Im) pairs of the upper triangle.
ComplexMatrix hermitian_basis_element(std::size_t n, std::size_t k) {
  ComplexMatrix m(n, n);
  if (k < n) {
    m(k, k) = 1.0;
    return m;
  }
  std::size_t idx = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (k == idx) {
        m(i, j) = 1.0;
        m(j, i) = 1.0;
        return m;
      }
      if (k == idx + 1) {
        m(i, j) = Complex{0.0, 1.0};
        m(j, i) = Complex{0.0, -1.0};
        return m;
      }
      idx += 2;
    }
  throw InvalidDimension("hermitian_basis_element: index out of range");
}

}  // namespace

std::vector<MetricCandidate> solve_nullspace(const ComplexMatrix& h, double tol,
                                             double safety_factor) {
  if (!h.square()) throw InvalidDimension("solve_nullspace: Hamiltonian must be square");
  const std::size_t n = h.rows();
  const std::size_t nparams = n * n;
  const ComplexMatrix hdag = h.adjoint();

  RealMatrix a(2 * n * n, nparams);
  for (std::size_t k = 0; k < nparams; ++k) {
    const ComplexMatrix basis = hermitian_basis_element(n, k);
    const ComplexMatrix c = hdag * basis - basis * h;
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(row++, k) = c(i, j).real();
        a(row++, k) = c(i, j).imag();
      }
  }

  const NullspaceBasis ns = nullspace(a, tol, safety_factor);
  std::vector<MetricCandidate> out;
  out.reserve(ns.dimension);
  const double gamma = gamma_of(h);
  for (const auto& vec : ns.basis) {
    MetricCandidate cand;
    cand.matrix = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < nparams; ++k)
      cand.matrix += vec(k, 0).real() * hermitian_basis_element(n, k);
    cand.family = MetricFamily::general;
    cand.gamma = gamma;
    cand.params.first_row_real.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) cand.params.first_row_real[j] = cand.matrix(0, j).real();
    near_ep_warning(gamma, cand);
    finalize(h, cand);
    out.push_back(std::move(cand));
  }
  return out;
}

MetricCandidate combine_nullspace_basis(const std::vector<MetricCandidate>& basis,
                                        const MetricParams& params) {
  if (basis.empty()) throw InvalidParams("combine_nullspace_basis: empty basis");
  const std::size_t n = basis.front().matrix.rows();
  if (params.first_row_real.size() != n)
    throw InvalidParams("combine_nullspace_basis: parameter vector length must equal N");

  std::vector<std::vector<double>> cols;
  for (const auto& b : basis) {
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) col[j] = b.matrix(0, j).real();
    cols.push_back(std::move(col));
  }
  const std::vector<double> coeff = least_squares_columns(cols, params.first_row_real);

  MetricCandidate cand;
  cand.matrix = ComplexMatrix(n, n);
  for (std::size_t b = 0; b < basis.size(); ++b)
    cand.matrix += Complex{coeff[b], 0.0} * basis[b].matrix;
  cand.params = params;
  cand.family = MetricFamily::general;
  cand.gamma = basis.front().gamma;
  cand.hermiticity_residual = cand.matrix.hermiticity_defect();
  // The generating H is not at hand here; the caller rechecks the residual.
  cand.dieudonne_residual = 0.0;
  for (const auto& b : basis)
    cand.dieudonne_residual = std::max(cand.dieudonne_residual, b.dieudonne_residual);
  return cand;
}

MetricCandidate spectral_metric(const ComplexMatrix& h, const std::vector<double>& weights) {
  if (!h.square()) throw InvalidDimension("spectral_metric: Hamiltonian must be square");
  const std::size_t n = h.rows();
  if (weights.size() != n)
    throw InvalidParams("spectral_metric: weight count must equal the dimension");
  for (double w : weights)
    if (!(w > 0.0)) throw InvalidParams("spectral_metric: weights must be positive");

  const double scale = std::max(1.0, h.max_norm());
  const EigenResult left = general_eigen(h.adjoint(), kDefaultTol, /*want_vectors=*/true);
  for (const auto& e : left.eigenvalues)
    if (std::abs(e.imag()) > 1e-8 * scale)
      throw DegenerateSpectrum("spectral_metric: spectrum is not real");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (std::abs(left.eigenvalues[i + 1] - left.eigenvalues[i]) < 1e-10 * scale)
      throw DegenerateSpectrum("spectral_metric: spectrum is degenerate");

  MetricCandidate cand;
  cand.matrix = ComplexMatrix(n, n);
  const ComplexMatrix& lv = *left.eigenvectors;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cand.matrix(i, j) += weights[k] * lv(i, k) * std::conj(lv(j, k));

  // Trace-based normalization for this family.
  const double tr = cand.matrix.trace().real();
  cand.matrix *= Complex{double(n) / tr, 0.0};
  cand.family = MetricFamily::spectral;
  cand.gamma = gamma_of(h);
  cand.params.first_row_real.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) cand.params.first_row_real[j] = cand.matrix(0, j).real();
  near_ep_warning(cand.gamma, cand);
  finalize(h, cand);
  return cand;
}

std::vector<double> fit_spectral_weights(const ComplexMatrix& h, const ComplexMatrix& target) {
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_norm());
  const EigenResult left = general_eigen(h.adjoint(), kDefaultTol, /*want_vectors=*/true);
  for (const auto& e : left.eigenvalues)
    if (std::abs(e.imag()) > 1e-8 * scale)
      throw DegenerateSpectrum("fit_spectral_weights: spectrum is not real");

  const ComplexMatrix& lv = *left.eigenvectors;
  std::vector<std::vector<double>> cols(n);
  for (std::size_t k = 0; k < n; ++k) {
    cols[k].reserve(2 * n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex m = lv(i, k) * std::conj(lv(j, k));
        cols[k].push_back(m.real());
        cols[k].push_back(m.imag());
      }
  }
  std::vector<double> rhs;
  rhs.reserve(2 * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rhs.push_back(target(i, j).real());
      rhs.push_back(target(i, j).imag());
    }
  return least_squares_columns(cols, rhs);
}

MetricCandidate linearized_metric(std::size_t N, double gamma) {
  const Generators g = build_generators(N);
  MetricCandidate cand;
  cand.matrix = ComplexMatrix::identity(N) - Complex{2.0 * gamma, 0.0} * g.Ly;
  cand.family = MetricFamily::linearized;
  cand.gamma = gamma;
  cand.params.first_row_real.assign(N, 0.0);
  cand.params.first_row_real[0] = 1.0;
  const ComplexMatrix h = build_cbh({.N = N, .gamma = gamma});
  finalize(h, cand);  // residual is O(gamma^2) by construction and stays recorded
  return cand;
}

namespace {

double known_positivity_boundary(MetricFamily family, std::size_t N) {
  const double sqrt5 = std::sqrt(5.0);
  switch (family) {
    case MetricFamily::zero_param:
    case MetricFamily::chessboard:
      if (N == 2) return 1.0;
      if (N == 3 || N == 4) return 1.0 / std::sqrt(2.0);
      if (N == 5) return 0.5 * std::sqrt(sqrt5 - 1.0);
      if (N == 6) return 0.5;
      return 0.0;
    case MetricFamily::delta_rule:
      return 1.0;
    case MetricFamily::linearized:
      return 1.0 / double(N - 1);  // leading-order estimate
    default:
      return 0.0;
  }
}

MetricCandidate chessboard_n5(double gamma) {
  const double g2 = gamma * gamma;
  const double g3 = g2 * gamma;
  const double g4 = g2 * g2;
  const double s6 = std::sqrt(6.0);
  ComplexMatrix m(5, 5);
  const Complex i2g{0.0, 2.0 * gamma};
  const Complex i4g3{0.0, 4.0 * g3};
  const Complex is6{0.0, s6 * gamma * (1.0 + 2.0 * g2)};
  m(0, 0) = 1.0;            m(0, 1) = i2g;            m(0, 3) = i4g3;
  m(1, 1) = 1.0 + 6.0 * g2; m(1, 2) = is6;            m(1, 3) = 4.0 * g4; m(1, 4) = i4g3;
  m(2, 2) = 1.0 + 8.0 * g2 + 8.0 * g4;                m(2, 3) = is6;
  m(3, 3) = 1.0 + 6.0 * g2; m(3, 4) = i2g;
  m(4, 4) = 1.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) m(j, i) = std::conj(m(i, j));
  MetricCandidate cand;
  cand.matrix = std::move(m);
  return cand;
}

MetricCandidate chessboard_n6(double gamma) {
  const double g2 = gamma * gamma;
  const double g3 = g2 * gamma;
  const double g4 = g2 * g2;
  const double g5 = g4 * gamma;
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0), s10 = std::sqrt(10.0);
  const Complex ix{0.0, s5 * gamma};
  const Complex iz{0.0, 2.0 * s10 * g3};
  const Complex imu{0.0, 16.0 * g5};
  const Complex iu{0.0, 2.0 * s2 * gamma * (1.0 + 3.0 * g2)};
  const Complex izeta{0.0, 8.0 * g3 * (1.0 + 2.0 * g2)};
  const Complex isigma{0.0, 3.0 * gamma + 12.0 * g3 + 8.0 * g5};
  const double rho = 1.0 + 8.0 * g2;
  const double tau = 1.0 + 12.0 * g2 + 24.0 * g4;
  const double vv = 8.0 * s2 * g4;
  ComplexMatrix m(6, 6);
  m(0, 0) = 1.0; m(0, 1) = ix;  m(0, 3) = iz;  m(0, 5) = imu;
  m(1, 1) = rho; m(1, 2) = iu;  m(1, 3) = vv;  m(1, 4) = izeta;
  m(2, 2) = tau; m(2, 3) = isigma; m(2, 4) = vv; m(2, 5) = iz;
  m(3, 3) = tau; m(3, 4) = iu;
  m(4, 4) = rho; m(4, 5) = ix;
  m(5, 5) = 1.0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) m(j, i) = std::conj(m(i, j));
  MetricCandidate cand;
  cand.matrix = std::move(m);
  return cand;
}

}  // namespace

MetricCandidate named_family(std::size_t N, MetricFamily family, double gamma,
                             const FamilyOptions& opts) {
  MetricCandidate cand;
  const ComplexMatrix h = build_cbh({.N = N, .gamma = gamma});
  switch (family) {
    case MetricFamily::zero_param: {
      if (N < 2 || N > 6)
        throw UnknownFamily("zero_param family is defined for N = 2..6");
      cand = metric_from_first_row(h, MetricParams::zeros(N));
      break;
    }
    case MetricFamily::chessboard: {
      if (N == 5)
        cand = chessboard_n5(gamma);
      else if (N == 6)
        cand = chessboard_n6(gamma);
      else
        throw UnknownFamily("chessboard family is defined for N = 5, 6");
      cand.params.first_row_real.assign(N, 0.0);
      cand.params.first_row_real[0] = 1.0;
      break;
    }
    case MetricFamily::delta_rule: {
      if (N == 3) {
        MetricParams p = MetricParams::zeros(3);
        p.first_row_real[2] = -gamma;
        cand = metric_from_first_row(h, p);
      } else if (N == 4) {
        if (opts.nu < 1.0 || opts.nu > 4.0)
          throw InvalidParams("delta_rule: nu must lie in [1, 4]");
        MetricParams p = MetricParams::zeros(4);
        p.first_row_real[2] =
            -std::sqrt(3.0) * (gamma + opts.nu * gamma * gamma * gamma) / (opts.nu + 1.0);
        cand = metric_from_first_row(h, p);
      } else {
        throw UnknownFamily("delta_rule family is defined for N = 3, 4");
      }
      break;
    }
    case MetricFamily::linearized:
      return linearized_metric(N, gamma);
    default:
      throw UnknownFamily("named_family: family has no closed-form constructor: " +
                          to_string(family));
  }
  cand.family = family;
  cand.gamma = gamma;
  const double boundary = known_positivity_boundary(family, N);
  if (boundary > 0.0 && std::abs(gamma) >= boundary)
    cand.warnings.push_back("gamma outside the family's positivity validity range");
  near_ep_warning(gamma, cand);
  finalize(h, cand);
  return cand;
}

}  // namespace bhmetric
