#pragma once

#include "sea/operator_algebra.hpp"
#include "sea/types.hpp"

namespace sea {

/// Scalar functionals of the entropy-gradient projection at a state.
/// s is tr(rho ln rho), the negative of the von Neumann entropy.
struct SeaCoefficients {
  double s = 0.0;
  double mu = 0.0;
  double nu = 0.0;          // units 1/energy
  double sigma2 = 0.0;      // energy variance
  double mean_H = 0.0;
  double mean_H2 = 0.0;
  double mean_logrho_H = 0.0;
  bool degenerate = false;  // sigma2 below tolerance, mu/nu not meaningful
};

struct GeneratorOutput {
  Matrix rhs;
  Matrix unitary_part;
  Matrix dissipator_part;
  SeaCoefficients coeffs;
  bool degenerate_constraint_flag = false;
};

/// sigma2 < kDegenerateTol * max(1, <H^2>) selects the energy-degenerate branch.
inline constexpr double kDegenerateTol = 1e-12;

/// positivity_tol is forwarded to rho_log_rho (see operator_algebra.hpp).
SeaCoefficients sea_coefficients(const Matrix& rho, const Matrix& h,
                                 double positivity_tol = 1e-9);

/// The non-unitary generator D(rho) = -gamma (rho ln rho - mu rho + nu {rho, H}).
/// Traceless and energy-conserving by construction of mu and nu.
/// On the degenerate branch D = -gamma (rho ln rho - s rho), flag reported
/// through sea_coefficients.
Matrix dissipator(const Matrix& rho, const Matrix& h, double gamma,
                  long* clamp_events = nullptr, double positivity_tol = 1e-9);

/// Full master-equation right-hand side -i[H, rho] + D(rho) at the
/// instantaneous Hamiltonian.
GeneratorOutput master_rhs(const Matrix& rho, const Matrix& h_t, double gamma,
                           long* clamp_events = nullptr,
                           double positivity_tol = 1e-9);

/// Independent route to the dissipator through the constrained-projection
/// determinant (3x3 over 2x2 Gram expansion), valid for full-rank states
/// away from energy degeneracy. Throws on rank deficiency or degeneracy.
Matrix generator_via_gram(const Matrix& rho, const Matrix& h, double gamma);

/// ||D(rho, sigma*H) - D(rho, H)||_max; the dissipator is invariant under
/// Hamiltonian rescaling so this is numerical noise.
double rescaling_residual(const Matrix& rho, const Matrix& h, double sigma,
                          double gamma);

}  // namespace sea
