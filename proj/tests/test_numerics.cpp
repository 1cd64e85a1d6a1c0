#include <cmath>
#include <random>

#include "bhmetric/eigen.hpp"
#include "bhmetric/errors.hpp"
#include "bhmetric/expm.hpp"
#include "bhmetric/hamiltonian.hpp"
#include "bhmetric/nullspace.hpp"
#include "doctest.h"

using namespace bhmetric;

namespace {

ComplexMatrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = Complex{dist(rng), dist(rng)};
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

}  // namespace

TEST_CASE("hermitian_eigen on identity and diagonal matrices") {
  const EigenResult id = hermitian_eigen(ComplexMatrix::identity(3));
  for (const auto& e : id.eigenvalues) {
    CHECK(e.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.imag() == 0.0);
  }

  ComplexMatrix d(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 0.0;
  d(2, 2) = -1.0;
  const EigenResult res = hermitian_eigen(d);
  CHECK(res.eigenvalues[0].real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(res.eigenvalues[1].real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(res.eigenvalues[2].real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen on the two-level metric with beta=0.3, gamma=0.4") {
  // Eigenvalues 1 +- sqrt(beta^2 + gamma^2) = {0.5, 1.5}.
  ComplexMatrix theta(2, 2);
  theta(0, 0) = theta(1, 1) = 1.0;
  theta(0, 1) = Complex{0.3, 0.4};
  theta(1, 0) = Complex{0.3, -0.4};
  const EigenResult res = hermitian_eigen(theta);
  CHECK(res.eigenvalues[0].real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(res.eigenvalues[1].real() == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  ComplexMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(a), NonHermitianInput);
}

TEST_CASE("hermitian_eigen reconstruction and orthonormality up to dimension 12") {
  for (std::size_t n : {3u, 6u, 12u}) {
    const ComplexMatrix a = random_hermitian(n, 17u + unsigned(n));
    const EigenResult res = hermitian_eigen(a);
    REQUIRE(res.eigenvectors.has_value());
    const ComplexMatrix& v = *res.eigenvectors;
    ComplexMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = res.eigenvalues[i];
    CHECK((a - v * lam * v.adjoint()).max_norm() <= 1e-10);
    CHECK((v.adjoint() * v - ComplexMatrix::identity(n)).max_norm() <= 1e-12);
  }
}

TEST_CASE("general_eigen matches hermitian_eigen on Hermitian input") {
  const ComplexMatrix a = random_hermitian(7, 5);
  const EigenResult he = hermitian_eigen(a, kDefaultTol, false);
  const EigenResult ge = general_eigen(a, kDefaultTol, false);
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(std::abs(ge.eigenvalues[k].real() - he.eigenvalues[k].real()) <= 1e-10);
    CHECK(std::abs(ge.eigenvalues[k].imag()) <= 1e-10);
  }
}

TEST_CASE("general_eigen beyond the reality boundary: two-level, gamma=2") {
  const ComplexMatrix h = build_cbh({.N = 2, .gamma = 2.0});
  const EigenResult res = general_eigen(h, kDefaultTol, false);
  const double root = std::sqrt(3.0);
  CHECK(std::abs(res.eigenvalues[0] - Complex{0.0, -root}) <= 1e-10);
  CHECK(std::abs(res.eigenvalues[1] - Complex{0.0, root}) <= 1e-10);
}

TEST_CASE("general_eigen two-level real spectrum at gamma=0.6") {
  const ComplexMatrix h = build_cbh({.N = 2, .gamma = 0.6});
  const EigenResult res = general_eigen(h, kDefaultTol, false);
  CHECK(std::abs(res.eigenvalues[0] - Complex{-0.8, 0.0}) <= 1e-10);
  CHECK(std::abs(res.eigenvalues[1] - Complex{0.8, 0.0}) <= 1e-10);
}

TEST_CASE("general_eigen on the zero matrix") {
  const EigenResult res = general_eigen(ComplexMatrix(4, 4), kDefaultTol, false);
  for (const auto& e : res.eigenvalues) CHECK(std::abs(e) <= 1e-14);
}

TEST_CASE("general_eigen eigenvectors have a small pair residual") {
  const ComplexMatrix h = build_cbh({.N = 5, .gamma = 0.4});
  const EigenResult res = general_eigen(h);
  CHECK(res.residual <= 1e-9);
}

TEST_CASE("nullspace of the zero and identity matrices") {
  const NullspaceBasis zero = nullspace(RealMatrix(2, 2));
  CHECK(zero.dimension == 2);
  RealMatrix id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1.0;
  CHECK(nullspace(id).dimension == 0);
}

TEST_CASE("nullspace vectors actually annihilate the matrix") {
  // Rank-1 3x4 matrix: nullspace dimension 3.
  RealMatrix a(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = double(i + 1) * double(j + 1);
  const NullspaceBasis ns = nullspace(a);
  CHECK(ns.dimension == 3);
  double amax = 0.0;
  for (double x : a.data) amax = std::max(amax, std::abs(x));
  for (const auto& v : ns.basis) {
    for (std::size_t i = 0; i < a.rows; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j < a.cols; ++j) acc += a(i, j) * v(j, 0);
      CHECK(std::abs(acc) <= 1e-10 * amax);
    }
  }
}

TEST_CASE("jacobi_svd reproduces known singular values") {
  RealMatrix a(2, 3);
  a(0, 0) = 3.0;
  a(1, 1) = -2.0;
  const SvdResult svd = jacobi_svd(a);
  CHECK(svd.singular_values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(svd.singular_values[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(svd.singular_values[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("matrix_exponential_apply identities") {
  const CVector v{Complex{0.3, 0.1}, Complex{-1.0, 0.5}};
  const CVector same = matrix_exponential_apply(ComplexMatrix(2, 2), v);
  CHECK(std::abs(same[0] - v[0]) <= 1e-14);
  CHECK(std::abs(same[1] - v[1]) <= 1e-14);

  ComplexMatrix d(2, 2);
  d(0, 0) = Complex{0.0, std::acos(-1.0)};
  const CVector w = matrix_exponential_apply(d, {1.0, 1.0});
  CHECK(std::abs(w[0] - Complex{-1.0, 0.0}) <= 1e-12);
  CHECK(std::abs(w[1] - Complex{1.0, 0.0}) <= 1e-12);
}

TEST_CASE("matrix_exponential_apply agrees with eigendecomposition propagation") {
  const ComplexMatrix h = build_cbh({.N = 2, .gamma = 0.5});
  ComplexMatrix gen = h;
  gen *= Complex{0.0, -1.0};  // t = 1
  const CVector psi0{1.0, 0.0};
  const CVector taylor = matrix_exponential_apply(gen, psi0);

  const EigenResult eig = general_eigen(h);
  REQUIRE(eig.eigenvectors.has_value());
  const ComplexMatrix& v = *eig.eigenvectors;
  const CVector coeff = lu_solve(v, psi0);
  CVector spectral(2, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < 2; ++j) {
    const Complex phase = std::exp(Complex{0.0, -1.0} * eig.eigenvalues[j]);
    for (std::size_t i = 0; i < 2; ++i) spectral[i] += phase * coeff[j] * v(i, j);
  }
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(taylor[i] - spectral[i]) <= 1e-10);
}

TEST_CASE("lu_solve flags numerically singular systems") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(lu_solve(a, {1.0, 0.0}), NumericalError);
}

TEST_CASE("least_squares_columns recovers exact coefficients") {
  // rhs = 2*c0 - 3*c1 with independent columns.
  std::vector<std::vector<double>> cols{{1.0, 0.0, 1.0, 2.0}, {0.0, 1.0, 1.0, -1.0}};
  std::vector<double> rhs(4);
  for (std::size_t i = 0; i < 4; ++i) rhs[i] = 2.0 * cols[0][i] - 3.0 * cols[1][i];
  const std::vector<double> x = least_squares_columns(cols, rhs);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-3.0).epsilon(1e-12));
}
