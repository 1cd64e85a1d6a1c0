#pragma once

#include <optional>

#include "bhmetric/matrix.hpp"

namespace bhmetric {

inline constexpr double kDefaultTol = 1e-12;

// Eigenvalues sorted by real part, then imaginary part, ascending. Eigenvector
// columns follow the same ordering. residual = max over pairs of ||A v - lambda v||.
struct EigenResult {
  CVector eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;
  double residual = 0.0;
};

// Cyclic Jacobi rotations on a complex Hermitian matrix. Eigenvalues come out
// exactly real, eigenvectors orthonormal. Throws NonHermitianInput if
// ||A - A^dagger||_max > tol, NoConvergence if the sweeps stall.
EigenResult hermitian_eigen(const ComplexMatrix& a, double tol = kDefaultTol,
                            bool want_vectors = true);

// Eigenvalues of a general square complex matrix: Hessenberg reduction followed
// by shifted QR; eigenvectors (when requested) by inverse iteration.
EigenResult general_eigen(const ComplexMatrix& a, double tol = kDefaultTol,
                          bool want_vectors = true);

// Solves A x = b by LU with partial pivoting. Throws NumericalError on a
// numerically singular pivot.
CVector lu_solve(ComplexMatrix a, CVector b);

}  // namespace bhmetric
