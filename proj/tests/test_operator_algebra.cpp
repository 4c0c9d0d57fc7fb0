#include <doctest.h>

#include <cmath>

#include "sea/operator_algebra.hpp"
#include "test_util.hpp"

using namespace sea;
using namespace sea::test;

TEST_CASE("eig_hermitian on diagonal matrix") {
  const double eps = 1.7;
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = eps;
  const EigenSystem es = eig_hermitian(h);
  CHECK(es.values(0) == doctest::Approx(0.0));
  CHECK(es.values(1) == doctest::Approx(eps));
  CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian coupling matrix has eigenvalues +-Omega") {
  const double omega = 0.8;
  const Matrix h = omega * pauli_x();
  const EigenSystem es = eig_hermitian(h);
  CHECK(es.values(0) == doctest::Approx(-omega).epsilon(1e-12));
  CHECK(es.values(1) == doctest::Approx(omega).epsilon(1e-12));
}

TEST_CASE("eig_hermitian reconstruction residual, random 4x4") {
  std::mt19937 rng(1);
  const Matrix m = random_hermitian(rng, 4);
  const EigenSystem es = eig_hermitian(m);
  const Matrix rebuilt = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
  CHECK(max_norm(Matrix(rebuilt - m)) <= 1e-10 * max_norm(m));
}

TEST_CASE("eig_hermitian property suite: 1000 random matrices dims 2-6") {
  std::mt19937 rng(2);
  double worst_residual = 0.0, worst_gram = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = 2 + trial % 5;
    const Matrix m = random_hermitian(rng, dim);
    const EigenSystem es = eig_hermitian(m);
    for (Eigen::Index k = 1; k < dim; ++k) CHECK(es.values(k) >= es.values(k - 1));
    const Matrix rebuilt = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
    worst_residual = std::max(worst_residual, max_norm(Matrix(rebuilt - m)) / max_norm(m));
    const Matrix gram = es.vectors.adjoint() * es.vectors;
    worst_gram = std::max(worst_gram,
                          max_norm(Matrix(gram - Matrix::Identity(dim, dim))));
  }
  CHECK(worst_residual <= 1e-10);
  CHECK(worst_gram <= 1e-10);
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_hermitian(rng, 4);
    Eigen::HouseholderQR<Matrix> qr(random_hermitian(rng, 4) +
                                    kI * random_hermitian(rng, 4));
    const Matrix u = qr.householderQ();
    const EigenSystem a = eig_hermitian(m);
    const EigenSystem b = eig_hermitian(Matrix(u * m * u.adjoint()));
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-10 * max_norm(m));
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 1.0, Complex(0.5, 0.5), Complex(0.5, -0.4), 2.0;
  CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
}

TEST_CASE("rho_log_rho is null on pure states") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector psi = random_pure(rng, 3);
    const Matrix rho = psi * psi.adjoint();
    CHECK(max_norm(rho_log_rho(rho)) <= 1e-12);
  }
}

TEST_CASE("rho_log_rho on maximally mixed two-state") {
  const Matrix rho = 0.5 * Matrix::Identity(2, 2);
  const Matrix expected = -0.5 * std::log(2.0) * Matrix::Identity(2, 2);
  CHECK(max_norm(Matrix(rho_log_rho(rho) - expected)) <= 1e-14);
}

TEST_CASE("rho_log_rho on diag(0.7, 0.3)") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const Matrix g = rho_log_rho(rho);
  CHECK(g(0, 0).real() == doctest::Approx(0.7 * std::log(0.7)).epsilon(1e-14));
  CHECK(g(1, 1).real() == doctest::Approx(0.3 * std::log(0.3)).epsilon(1e-14));
  CHECK(std::abs(g(0, 1)) <= 1e-15);
}

TEST_CASE("rho_log_rho clamps tiny negative eigenvalues and logs the event") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0 + 1e-10;
  rho(1, 1) = -1e-10;
  long clamps = 0;
  const Matrix g = rho_log_rho(rho, &clamps);
  CHECK(clamps == 1);
  CHECK(std::isfinite(g(1, 1).real()));
}

TEST_CASE("rho_log_rho rejects genuine positivity loss") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0 + 1e-5;
  rho(1, 1) = -1e-5;
  CHECK_THROWS_AS(rho_log_rho(rho), std::invalid_argument);
}

TEST_CASE("rho_log_rho commutes with rho on random full-rank states") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix rho = random_density(rng, 2 + trial % 3);
    CHECK(max_norm(commutator(rho, rho_log_rho(rho))) <= 1e-10);
  }
}

TEST_CASE("real scalar product basics") {
  const Matrix eye = Matrix::Identity(2, 2);
  CHECK(real_scalar_product(eye, eye) == doctest::Approx(2.0));
  CHECK(real_scalar_product(pauli_x(), pauli_z()) == doctest::Approx(0.0));
}

TEST_CASE("real scalar product matches elementwise brute force") {
  std::mt19937 rng(6);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(3, 3), b(3, 3);
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 3; ++c) {
        a(r, c) = Complex(gauss(rng), gauss(rng));
        b(r, c) = Complex(gauss(rng), gauss(rng));
      }
    // Independent oracle: tr(A B^dag) = sum_ij A_ij conj(B_ij).
    Complex sum = 0.0;
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 3; ++c)
        sum += a(r, c) * std::conj(b(r, c));
    CHECK(real_scalar_product(a, b) == doctest::Approx(sum.real()).epsilon(1e-12));
  }
}

TEST_CASE("real scalar product is the Frobenius norm squared for Hermitian input") {
  std::mt19937 rng(7);
  const Matrix a = random_hermitian(rng, 4);
  CHECK(real_scalar_product(a, a) ==
        doctest::Approx(a.squaredNorm()).epsilon(1e-12));
  CHECK(real_scalar_product(a, a) >= 0.0);
}

TEST_CASE("real scalar product rejects dimension mismatch") {
  CHECK_THROWS_AS(real_scalar_product(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("commutator and anticommutator identities") {
  CHECK(max_norm(commutator(pauli_x(), pauli_x())) == 0.0);

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 2.0; a(1, 1) = -1.0;
  b(0, 0) = 3.0; b(1, 1) = 5.0;
  const Matrix anti = anticommutator(a, b);
  CHECK(anti(0, 0).real() == doctest::Approx(12.0));
  CHECK(anti(1, 1).real() == doctest::Approx(-10.0));

  const Matrix expected = 2.0 * kI * pauli_z();
  CHECK(max_norm(Matrix(commutator(pauli_x(), pauli_y()) - expected)) <= 1e-15);
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(require_density_matrix(0.5 * Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(require_density_matrix(Matrix::Identity(2, 2)), std::invalid_argument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(require_density_matrix(neg), std::invalid_argument);
}
