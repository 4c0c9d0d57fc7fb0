#pragma once

#include <stdexcept>

#include "sea/types.hpp"

namespace sea {

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Hermiticity check used by all entry points: ||M - M^dag||_max <= tol * ||M||_max.
bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);

/// Throws std::invalid_argument naming the violating norm if M is not Hermitian.
void require_hermitian(const Matrix& m, const char* what, double rel_tol = 1e-12);

/// Eigendecomposition of a Hermitian matrix, values ascending.
/// Reconstruction residual is bounded by 1e-10 * ||M||_max.
EigenSystem eig_hermitian(const Matrix& m);

/// Density-matrix validity: Hermitian, unit trace, positive semidefinite
/// within the stated tolerances. Throws on violation.
void require_density_matrix(const Matrix& rho, double trace_tol = 1e-9,
                            double eig_tol = 1e-9);

/// Spectral evaluation of rho*log(rho) with f(x) = x ln x continuously
/// extended by f(x) = 0 for x <= 0. Eigenvalues in (-positivity_tol, 0) are
/// clamped to zero; more negative ones are a positivity violation. Integrators
/// may pass a large positivity_tol for Runge-Kutta stage states, whose small
/// transient negatives are handled by step-error control rather than here.
/// clamp_events, when non-null, is incremented once per clamped eigenvalue.
Matrix rho_log_rho(const Matrix& rho, long* clamp_events = nullptr,
                   double positivity_tol = 1e-9);

/// The real scalar product (A|B) = tr(A B^dag + A^dag B) / 2.
double real_scalar_product(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

}  // namespace sea
