#pragma once

#include <vector>

#include "bhmetric/matrix.hpp"

namespace bhmetric {

// Minimal dense real matrix, used for the vectorized linear systems whose
// unknowns are real (Hermitian matrices split into real components).
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct SvdResult {
  std::vector<double> singular_values;        // descending
  std::vector<std::vector<double>> right_vectors;  // matching right-singular vectors
};

// One-sided Jacobi SVD; returns singular values and right-singular vectors.
SvdResult jacobi_svd(const RealMatrix& a);

struct NullspaceBasis {
  std::size_t dimension = 0;
  // Basis vectors as n x 1 column matrices (real-valued entries); consumers
  // reshape them into Hermitian matrices where appropriate.
  std::vector<ComplexMatrix> basis;
  // Ratio between the smallest rejected and the largest kept singular value;
  // infinity when one of the two sets is empty.
  double singular_value_gap = 0.0;
};

// Right-singular directions with singular value <= tol * sigma_max. Raises
// AmbiguousRank when the kept/rejected gap falls under safety_factor.
NullspaceBasis nullspace(const RealMatrix& a, double tol = 1e-10,
                         double safety_factor = 1e3);

// Least-squares solution of the overdetermined system whose columns are given;
// modified Gram-Schmidt QR. Throws NumericalError on rank deficiency.
std::vector<double> least_squares_columns(const std::vector<std::vector<double>>& cols,
                                          const std::vector<double>& rhs);

}  // namespace bhmetric
