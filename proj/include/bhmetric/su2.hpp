#pragma once

#include "bhmetric/matrix.hpp"

namespace bhmetric {

// Spin-j angular momentum generators in the descending-m basis: Lz(0,0) = +j.
struct Generators {
  std::size_t N = 0;
  double j = 0.0;  // (N - 1) / 2
  ComplexMatrix Lx;
  ComplexMatrix Ly;
  ComplexMatrix Lz;
};

// Builds (Lx, Ly, Lz) for dimension N >= 2. Ladder coefficients follow
// (2 Lx)_{k,k+1} = sqrt(j(j+1) - m_k (m_k - 1)) with m_k = j - k + 1.
Generators build_generators(std::size_t N);

}  // namespace bhmetric
