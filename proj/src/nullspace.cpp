#include "bhmetric/nullspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bhmetric/errors.hpp"

namespace bhmetric {

SvdResult jacobi_svd(const RealMatrix& a) {
  const std::size_t m = a.rows, n = a.cols;
  RealMatrix u = a;
  RealMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          app += u(i, p) * u(i, p);
          aqq += u(i, q) * u(i, q);
          apq += u(i, p) * u(i, q);
        }
        if (std::abs(apq) <= 1e-16 * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double sgn = zeta >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += u(i, j) * u(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult res;
  res.singular_values.reserve(n);
  res.right_vectors.reserve(n);
  for (auto j : order) {
    res.singular_values.push_back(sigma[j]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, j);
    res.right_vectors.push_back(std::move(col));
  }
  return res;
}

NullspaceBasis nullspace(const RealMatrix& a, double tol, double safety_factor) {
  SvdResult svd = jacobi_svd(a);
  const std::size_t n = a.cols;
  const double sigma_max = svd.singular_values.empty() ? 0.0 : svd.singular_values.front();
  const double cutoff = tol * sigma_max;

  NullspaceBasis ns;
  double largest_kept = 0.0;
  double smallest_rejected = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (sigma_max == 0.0 || svd.singular_values[j] <= cutoff) {
      largest_kept = std::max(largest_kept, svd.singular_values[j]);
      ComplexMatrix col(n, 1);
      for (std::size_t i = 0; i < n; ++i) col(i, 0) = svd.right_vectors[j][i];
      ns.basis.push_back(std::move(col));
    } else {
      smallest_rejected = std::min(smallest_rejected, svd.singular_values[j]);
    }
  }
  ns.dimension = ns.basis.size();
  if (ns.dimension == 0 || ns.dimension == n || largest_kept == 0.0) {
    ns.singular_value_gap = std::numeric_limits<double>::infinity();
  } else {
    ns.singular_value_gap = smallest_rejected / largest_kept;
    if (ns.singular_value_gap < safety_factor)
      throw AmbiguousRank("nullspace: singular-value gap below the safety factor");
  }
  return ns;
}

std::vector<double> least_squares_columns(const std::vector<std::vector<double>>& cols,
                                          const std::vector<double>& rhs) {
  const std::size_t k = cols.size();
  const std::size_t m = rhs.size();
  std::vector<std::vector<double>> q = cols;
  std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
  double scale = 0.0;
  for (const auto& c : cols)
    for (double x : c) scale = std::max(scale, std::abs(x));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t a = 0; a < p; ++a) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += q[a][i] * q[p][i];
      r[a][p] = dot;
      for (std::size_t i = 0; i < m; ++i) q[p][i] -= dot * q[a][i];
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm += q[p][i] * q[p][i];
    nrm = std::sqrt(nrm);
    if (nrm <= 1e-13 * std::max(scale, 1e-300))
      throw NumericalError("least_squares_columns: rank-deficient system");
    r[p][p] = nrm;
    for (std::size_t i = 0; i < m; ++i) q[p][i] /= nrm;
  }
  std::vector<double> x(k, 0.0);
  for (std::size_t p = k; p-- > 0;) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += q[p][i] * rhs[i];
    for (std::size_t j = p + 1; j < k; ++j) acc -= r[p][j] * x[j];
    x[p] = acc / r[p][p];
  }
  return x;
}

}  // namespace bhmetric
