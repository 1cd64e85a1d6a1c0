#include "bhmetric/expm.hpp"

#include <cmath>

#include "bhmetric/errors.hpp"

namespace bhmetric {

CVector matrix_exponential_apply(const ComplexMatrix& a, const CVector& v, double tol) {
  if (!a.square()) throw InvalidDimension("matrix_exponential_apply: matrix must be square");
  if (a.cols() != v.size())
    throw InvalidDimension("matrix_exponential_apply: vector length mismatch");
  const std::size_t n = a.rows();

  // Scale so that ||A / 2^s||_max * n is of order one.
  double norm_est = a.max_norm() * double(n);
  int s = 0;
  while (norm_est > 0.5 && s < 64) {
    norm_est *= 0.5;
    ++s;
  }
  const double inv_scale = std::ldexp(1.0, -s);
  ComplexMatrix b = a;
  b *= Complex{inv_scale, 0.0};

  // Taylor series of exp(B); terms decay fast after the scaling.
  ComplexMatrix e = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  bool converged = false;
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= Complex{1.0 / double(k), 0.0};
    e += term;
    if (term.max_norm() <= tol * 1e-4) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("matrix_exponential_apply: Taylor series did not converge", 40);

  for (int k = 0; k < s; ++k) e = e * e;
  return e.apply(v);
}

}  // namespace bhmetric
