#include "bhmetric/su2.hpp"

#include <cmath>

#include "bhmetric/errors.hpp"

namespace bhmetric {

Generators build_generators(std::size_t N) {
  if (N < 2) throw InvalidDimension("build_generators: dimension must be at least 2");
  Generators g;
  g.N = N;
  g.j = 0.5 * double(N - 1);
  g.Lx = ComplexMatrix(N, N);
  g.Ly = ComplexMatrix(N, N);
  g.Lz = ComplexMatrix(N, N);

  for (std::size_t k = 0; k < N; ++k) g.Lz(k, k) = g.j - double(k);

  // L+ couples |m+1><m|; in the descending basis that is entry (k, k+1).
  for (std::size_t k = 0; k + 1 < N; ++k) {
    const double m_upper = g.j - double(k);        // m_k
    const double c = std::sqrt(g.j * (g.j + 1.0) - m_upper * (m_upper - 1.0));
    g.Lx(k, k + 1) = 0.5 * c;
    g.Lx(k + 1, k) = 0.5 * c;
    g.Ly(k, k + 1) = Complex{0.0, -0.5 * c};
    g.Ly(k + 1, k) = Complex{0.0, 0.5 * c};
  }
  return g;
}

}  // namespace bhmetric
