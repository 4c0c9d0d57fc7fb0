#include <doctest.h>

#include <cmath>

#include "sea/thermo.hpp"
#include "test_util.hpp"

using namespace sea;
using namespace sea::test;

namespace {

Matrix tss_hamiltonian(double eps) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = eps;
  return h;
}

}  // namespace

TEST_CASE("observables on the perturbed pure state") {
  const HamiltonianModel model(StaticTssParams{1.0});
  Vector psi(2);
  psi << std::sqrt(0.7), std::sqrt(0.3);
  const double lambda = 1e-2;
  const Matrix rho = (1.0 - lambda) * (psi * psi.adjoint()) +
                     (lambda / 2.0) * Matrix::Identity(2, 2);
  const ObservableRow row = observables(rho, model, 0.0, psi);
  CHECK(row.fidelity == doctest::Approx(1.0 - lambda / 2.0).epsilon(1e-12));
  CHECK(row.trace == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(row.p0 + row.p1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(row.abs_rho01 * row.abs_rho01 <= row.p0 * row.p1 + 1e-9);
}

TEST_CASE("observables on the maximally mixed state") {
  const HamiltonianModel model(StaticTssParams{1.0});
  Vector psi(2);
  psi << 1.0, 0.0;
  const ObservableRow row =
      observables(0.5 * Matrix::Identity(2, 2), model, 0.0, psi);
  CHECK(row.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(row.p0 == doctest::Approx(0.5));
  CHECK(row.p1 == doctest::Approx(0.5));
  CHECK(row.abs_rho01 <= 1e-12);
  CHECK(row.adiab_metric == 0.0);
}

TEST_CASE("entropy of diag(0.7, 0.3)") {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const double expected = -(0.7 * std::log(0.7) + 0.3 * std::log(0.3));
  CHECK(von_neumann_entropy(rho) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.6109).epsilon(1e-4));
}

TEST_CASE("canonical state at beta = 0 is maximally mixed") {
  std::mt19937 rng(51);
  for (const Eigen::Index dim : {2, 3, 4}) {
    const Matrix h = random_hermitian(rng, dim);
    const Matrix omega = canonical_state(h, 0.0).omega;
    CHECK(max_norm(Matrix(omega - Matrix::Identity(dim, dim) / double(dim))) <= 1e-12);
  }
}

TEST_CASE("two-level Gibbs ratio") {
  const double beta = std::log(0.3 / 0.7);  // ~ -0.8473
  const Matrix omega = canonical_state(tss_hamiltonian(1.0), beta).omega;
  CHECK(omega(0, 0).real() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(omega(1, 1).real() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("large positive beta approaches the ground state") {
  const Matrix omega = canonical_state(tss_hamiltonian(1.0), 500.0).omega;
  CHECK(omega(1, 1).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("canonical state refuses overflow-scale beta") {
  CHECK_THROWS_AS(canonical_state(tss_hamiltonian(1.0), 1e4), std::invalid_argument);
}

TEST_CASE("canonical reconstruction and stationarity invariant") {
  std::mt19937 rng(52);
  const Matrix h = random_hermitian(rng, 3);
  const CanonicalState cs = canonical_state(h, 0.9);
  // omega = e^{-beta H}/Z reconstructed through an independent scaling route.
  const EigenSystem es = eig_hermitian(h);
  RealVector w(3);
  for (int k = 0; k < 3; ++k) w(k) = std::exp(-0.9 * es.values(k));
  w /= w.sum();
  const Matrix rebuilt = es.vectors * w.asDiagonal() * es.vectors.adjoint();
  CHECK(max_norm(Matrix(cs.omega - rebuilt)) <= 1e-12);
  CHECK(stationarity_residual(cs.omega, h, 2.0) <= 1e-10 * 2.0);
}

TEST_CASE("restricted canonical states") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 2.0;
  h(1, 1) = 1.0;

  SUBCASE("identity projector gives the ordinary canonical state") {
    const Matrix omega = canonical_state(h, 1.0).omega;
    const Matrix omega_p = restricted_canonical(h, Matrix::Identity(3, 3), 1.0).omega;
    CHECK(max_norm(Matrix(omega - omega_p)) <= 1e-12);
  }

  SUBCASE("projector onto the top two eigenstates") {
    Matrix proj = Matrix::Zero(3, 3);
    proj(0, 0) = 1.0;
    proj(1, 1) = 1.0;
    const CanonicalState cs = restricted_canonical(h, proj, 1.0);
    const double z = std::exp(-2.0) + std::exp(-1.0);
    CHECK(cs.omega(0, 0).real() == doctest::Approx(std::exp(-2.0) / z).epsilon(1e-12));
    CHECK(cs.omega(1, 1).real() == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    CHECK(std::abs(cs.omega(2, 2)) <= 1e-15);
    CHECK(cs.rank_deficient);
  }

  SUBCASE("rank-1 projector gives the pure eigenstate for any beta") {
    Matrix proj = Matrix::Zero(3, 3);
    proj(1, 1) = 1.0;
    for (const double beta : {-3.0, 0.0, 4.0}) {
      const Matrix omega_p = restricted_canonical(h, proj, beta).omega;
      CHECK(omega_p(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("rejects non-commuting or non-idempotent projectors") {
    Matrix bad = Matrix::Zero(3, 3);
    bad(0, 1) = 1.0;
    bad(1, 0) = 1.0;  // swaps eigenstates of H: does not commute
    CHECK_THROWS_AS(restricted_canonical(h, bad, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(restricted_canonical(h, 0.5 * Matrix::Identity(3, 3), 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("effective beta closed form and signs") {
  const Matrix h = tss_hamiltonian(1.0);
  CHECK(effective_beta(h, 0.5) == doctest::Approx(0.0));
  CHECK(effective_beta(h, 0.7) == doctest::Approx(std::log(0.3 / 0.7)).epsilon(1e-8));
  CHECK(effective_beta(h, 0.3) == doctest::Approx(std::log(0.7 / 0.3)).epsilon(1e-8));
  CHECK(effective_beta(h, 0.7) < 0.0);
  CHECK(effective_beta(h, 0.3) > 0.0);
  CHECK_THROWS_AS(effective_beta(h, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(effective_beta(h, 0.0), std::invalid_argument);
}

TEST_CASE("effective beta round trip on random spectra") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index dim = 2 + trial % 3;
    const Matrix h = random_hermitian(rng, dim);
    const EigenSystem es = eig_hermitian(h);
    const double spread = es.values(dim - 1) - es.values(0);
    const double beta = uni(rng) / spread;
    const double u = (canonical_state(h, beta).omega * h).trace().real();
    REQUIRE(std::abs(effective_beta(h, u) - beta) <= 1e-8 * std::max(1.0, std::abs(beta)));
  }
}

TEST_CASE("mean canonical energy is strictly decreasing in beta") {
  std::mt19937 rng(54);
  const Matrix h = random_hermitian(rng, 3);
  const EigenSystem es = eig_hermitian(h);
  const double spread = es.values(2) - es.values(0);
  double prev = std::numeric_limits<double>::infinity();
  for (double b = -4.0; b <= 4.0; b += 0.25) {
    const double u = (canonical_state(h, b / spread).omega * h).trace().real();
    REQUIRE(u < prev);
    prev = u;
  }
}

TEST_CASE("stationarity residual classifies states") {
  const Matrix h = tss_hamiltonian(1.0);
  const double gamma = 0.25;
  CHECK(stationarity_residual(canonical_state(h, -0.8).omega, h, gamma) <= 1e-10 * gamma);
  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(stationarity_residual(pure, h, gamma) <= 1e-12);
  Vector psi(2);
  psi << std::sqrt(0.7), std::sqrt(0.3);
  const Matrix fig1 = (1.0 - 1e-4) * (psi * psi.adjoint()) +
                      0.5e-4 * Matrix::Identity(2, 2);
  CHECK(stationarity_residual(fig1, h, gamma) > 1e-3 * gamma);
}
