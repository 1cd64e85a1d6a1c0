#include "bhmetric/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bhmetric {

namespace {

struct SortPerm {
  CVector values;
  std::vector<std::size_t> order;
};

SortPerm sorted_order(const CVector& vals) {
  SortPerm sp;
  sp.order.resize(vals.size());
  std::iota(sp.order.begin(), sp.order.end(), std::size_t{0});
  std::stable_sort(sp.order.begin(), sp.order.end(), [&](std::size_t a, std::size_t b) {
    if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
    return vals[a].imag() < vals[b].imag();
  });
  sp.values.reserve(vals.size());
  for (auto k : sp.order) sp.values.push_back(vals[k]);
  return sp;
}

double pair_residual(const ComplexMatrix& a, const CVector& lambdas, const ComplexMatrix& vecs) {
  const std::size_t n = a.rows();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = vecs(i, j);
    CVector av = a.apply(v);
    for (std::size_t i = 0; i < n; ++i) av[i] -= lambdas[j] * v[i];
    worst = std::max(worst, vector_norm(av));
  }
  return worst;
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix& a, double tol, bool want_vectors) {
  if (!a.square()) throw InvalidDimension("hermitian_eigen: matrix must be square");
  if (a.hermiticity_defect() > tol)
    throw NonHermitianInput("hermitian_eigen: input is not Hermitian at the given tolerance");
  const std::size_t n = a.rows();

  // Work on the exactly Hermitian part; the defect is within tol by the check above.
  ComplexMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(b.max_norm(), 1e-300);
  const double stop = 1e-15 * scale;
  const int max_sweeps = 100;
  int sweeps = 0;
  for (; sweeps < max_sweeps; ++sweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(b(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = b(p, q);
        const double r = std::abs(g);
        if (r <= stop * 1e-2) continue;
        const Complex u = g / r;
        const double alpha = b(p, p).real();
        const double beta = b(q, q).real();
        const double rho = (beta - alpha) / (2.0 * r);
        // Annihilation condition for this update convention: t^2 - 2 rho t - 1 = 0,
        // smaller-magnitude root.
        const double sgn = rho >= 0.0 ? 1.0 : -1.0;
        const double t = -sgn / (std::abs(rho) + std::sqrt(rho * rho + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex su = s * u;
        const Complex suc = s * std::conj(u);

        // B <- U^dagger B U with the rotation in the (p,q) plane.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex bkp = b(k, p), bkq = b(k, q);
          b(k, p) = c * bkp + suc * bkq;
          b(k, q) = -su * bkp + c * bkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex bpk = b(p, k), bqk = b(q, k);
          b(p, k) = c * bpk + su * bqk;
          b(q, k) = -suc * bpk + c * bqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + suc * vkq;
          v(k, q) = -su * vkp + c * vkq;
        }
      }
    }
  }
  if (sweeps == max_sweeps)
    throw NoConvergence("hermitian_eigen: Jacobi sweeps did not converge", sweeps);

  CVector raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = Complex{b(i, i).real(), 0.0};
  SortPerm sp = sorted_order(raw);

  EigenResult res;
  res.eigenvalues = sp.values;
  ComplexMatrix vecs(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) vecs(i, j) = v(i, sp.order[j]);
  res.residual = pair_residual(a, res.eigenvalues, vecs);
  if (want_vectors) res.eigenvectors = std::move(vecs);
  return res;
}

namespace {

// Householder reduction to upper Hessenberg form (in place).
void hessenberg(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
    colnorm = std::sqrt(colnorm);
    if (colnorm < 1e-300) continue;
    Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    const Complex alpha = -phase * colnorm;
    CVector w(n, Complex{0.0, 0.0});
    w[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) w[i] = h(i, k);
    double wnorm = vector_norm(w);
    if (wnorm < 1e-300) continue;
    for (auto& wi : w) wi /= wnorm;
    // H <- (I - 2 w w^dagger) H (I - 2 w w^dagger)
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot{0.0, 0.0};
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(w[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * w[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot{0.0, 0.0};
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * w[j];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * std::conj(w[j]);
    }
  }
}

// Eigenvalues of an upper Hessenberg matrix by explicitly shifted QR with
// Givens rotations and deflation.
CVector hessenberg_qr_eigenvalues(ComplexMatrix h) {
  const std::size_t n = h.rows();
  CVector evals(n);
  const double scale = std::max(h.max_norm(), 1e-300);
  std::size_t m = n;  // active block is [0, m)
  int iters_this = 0;
  while (m > 0) {
    // Deflate negligible subdiagonals.
    for (std::size_t i = 1; i < m; ++i) {
      if (std::abs(h(i, i - 1)) <=
          1e-16 * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)) + scale * 1e-3))
        h(i, i - 1) = 0.0;
    }
    if (m == 1 || std::abs(h(m - 1, m - 2)) == 0.0) {
      evals[m - 1] = h(m - 1, m - 1);
      --m;
      iters_this = 0;
      continue;
    }
    if (++iters_this > 80)
      throw NoConvergence("general_eigen: QR iteration did not converge", iters_this);

    // Start of the unreduced block ending at m-1.
    std::size_t l = m - 1;
    while (l > 0 && std::abs(h(l, l - 1)) != 0.0) --l;

    // Wilkinson shift from the trailing 2x2 of the block.
    const Complex a = h(m - 2, m - 2), bb = h(m - 2, m - 1);
    const Complex cc = h(m - 1, m - 2), d = h(m - 1, m - 1);
    const Complex tr2 = 0.5 * (a + d);
    const Complex disc = std::sqrt(tr2 * tr2 - (a * d - bb * cc));
    Complex mu1 = tr2 + disc, mu2 = tr2 - disc;
    Complex sigma = (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
    if (iters_this % 12 == 0) sigma = d + Complex{1.5, 0.0} * std::abs(h(m - 1, m - 2));

    for (std::size_t i = l; i < m; ++i) h(i, i) -= sigma;
    // QR by Givens on the subdiagonal, then RQ.
    std::vector<double> cs(m);
    std::vector<Complex> ss(m);
    for (std::size_t i = l; i + 1 < m; ++i) {
      const Complex x = h(i, i), y = h(i + 1, i);
      const double r = std::sqrt(std::norm(x) + std::norm(y));
      double c;
      Complex s;
      if (r < 1e-300) {
        c = 1.0;
        s = Complex{0.0, 0.0};
      } else if (std::abs(x) < 1e-300) {
        c = 0.0;
        s = Complex{1.0, 0.0};
      } else {
        c = std::abs(x) / r;
        s = (x / std::abs(x)) * std::conj(y) / r;
      }
      cs[i] = c;
      ss[i] = s;
      for (std::size_t j = i; j < m; ++j) {
        const Complex hij = h(i, j), h1j = h(i + 1, j);
        h(i, j) = c * hij + s * h1j;
        h(i + 1, j) = -std::conj(s) * hij + c * h1j;
      }
    }
    for (std::size_t i = l; i + 1 < m; ++i) {
      const double c = cs[i];
      const Complex s = ss[i];
      const std::size_t top = std::min(i + 2, m);
      for (std::size_t k = l; k < top; ++k) {
        const Complex hki = h(k, i), hki1 = h(k, i + 1);
        h(k, i) = hki * c + hki1 * std::conj(s);
        h(k, i + 1) = -hki * s + hki1 * c;
      }
    }
    for (std::size_t i = l; i < m; ++i) h(i, i) += sigma;
  }
  return evals;
}

// LU with partial pivoting; near-zero pivots are clamped so that inverse
// iteration with a singular shift stays usable.
struct ClampedLU {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  double min_pivot = 1e300;

  ClampedLU(ComplexMatrix a, double clamp) : lu(std::move(a)) {
    const std::size_t n = lu.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
        std::swap(perm[k], perm[piv]);
      }
      min_pivot = std::min(min_pivot, std::abs(lu(k, k)));
      if (std::abs(lu(k, k)) < clamp) lu(k, k) = clamp;
      for (std::size_t i = k + 1; i < n; ++i) {
        lu(i, k) /= lu(k, k);
        for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
      }
    }
  }

  CVector solve(const CVector& b) const {
    const std::size_t n = lu.rows();
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    return x;
  }
};

ComplexMatrix inverse_iteration_vectors(const ComplexMatrix& a, const CVector& sorted_evals) {
  const std::size_t n = a.rows();
  const double scale = std::max(a.max_norm(), 1.0);
  ComplexMatrix vecs(n, n);
  std::vector<CVector> cluster;  // vectors of the current near-degenerate cluster
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && std::abs(sorted_evals[j] - sorted_evals[j - 1]) > 1e-8 * scale)
      cluster.clear();
    ComplexMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= sorted_evals[j];
    ClampedLU lu(std::move(shifted), 1e-14 * scale);
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Complex{1.0 / double(i + 1), 0.3 / double(i + 2)};
    for (int it = 0; it < 4; ++it) {
      for (const auto& prev : cluster) {
        const Complex proj = inner(prev, x);
        for (std::size_t i = 0; i < n; ++i) x[i] -= proj * prev[i];
      }
      x = lu.solve(x);
      const double nrm = vector_norm(x);
      if (nrm < 1e-300) break;
      for (auto& xi : x) xi /= nrm;
    }
    for (const auto& prev : cluster) {
      const Complex proj = inner(prev, x);
      for (std::size_t i = 0; i < n; ++i) x[i] -= proj * prev[i];
    }
    const double nrm = vector_norm(x);
    if (nrm > 1e-300)
      for (auto& xi : x) xi /= nrm;
    cluster.push_back(x);
    for (std::size_t i = 0; i < n; ++i) vecs(i, j) = x[i];
  }
  return vecs;
}

}  // namespace

EigenResult general_eigen(const ComplexMatrix& a, double tol, bool want_vectors) {
  if (!a.square()) throw InvalidDimension("general_eigen: matrix must be square");
  (void)tol;
  const std::size_t n = a.rows();
  EigenResult res;
  if (n == 0) return res;

  ComplexMatrix h = a;
  hessenberg(h);
  CVector evals = hessenberg_qr_eigenvalues(std::move(h));
  res.eigenvalues = sorted_order(evals).values;

  if (want_vectors) {
    ComplexMatrix vecs = inverse_iteration_vectors(a, res.eigenvalues);
    res.residual = pair_residual(a, res.eigenvalues, vecs);
    res.eigenvectors = std::move(vecs);
  }
  return res;
}

CVector lu_solve(ComplexMatrix a, CVector b) {
  const double scale = std::max(a.max_norm(), 1e-300);
  ClampedLU lu(std::move(a), 1e-300);
  if (lu.min_pivot < 1e-14 * scale)
    throw NumericalError("lu_solve: numerically singular matrix");
  return lu.solve(std::move(b));
}

}  // namespace bhmetric
