#pragma once

#include "bhmetric/matrix.hpp"

namespace bhmetric {

// exp(A) * v by scaling-and-squaring of a truncated Taylor series. The scaling
// power and truncation order are chosen from ||A|| and tol, so the result is
// deterministic for fixed inputs.
CVector matrix_exponential_apply(const ComplexMatrix& a, const CVector& v,
                                 double tol = 1e-12);

}  // namespace bhmetric
