#pragma once

#include "sea/dissipator.hpp"
#include "sea/hamiltonian.hpp"
#include "sea/types.hpp"

namespace sea {

/// One row of recorded trajectory observables. Populations and coherence are
/// taken in the instantaneous Hamiltonian eigenbasis, p1 for the higher
/// eigenvalue. Entropy is the (positive) von Neumann entropy in nats.
struct ObservableRow {
  double t = 0.0;
  double p1 = 0.0;
  double p0 = 0.0;
  double re_rho01 = 0.0;
  double im_rho01 = 0.0;
  double abs_rho01 = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  double fidelity = 0.0;
  double sigma_x = 0.0;
  double trace = 0.0;
  double min_eig = 0.0;
  double adiab_metric = 0.0;
};

struct CanonicalState {
  double beta = 0.0;  // 1/energy, sign unrestricted
  Matrix omega;
  bool rank_deficient = false;
};

ObservableRow observables(const Matrix& rho, const HamiltonianModel& model,
                          double t, const Vector& psi0);

/// Von Neumann entropy -tr(rho ln rho), clamped extension at zero eigenvalues.
double von_neumann_entropy(const Matrix& rho);

/// Gibbs state e^{-beta H} / tr(e^{-beta H}), spectrum shifted before
/// exponentiation. Refuses |beta| * spectral spread > 700.
CanonicalState canonical_state(const Matrix& h, double beta);

/// Restriction P e^{-beta H} P / tr(P e^{-beta H}) for a projector commuting
/// with H.
CanonicalState restricted_canonical(const Matrix& h, const Matrix& projector,
                                    double beta);

/// The unique beta with tr(omega(beta) H) = u, by bisection on the strictly
/// decreasing energy map. u must lie strictly inside the spectral interval.
double effective_beta(const Matrix& h, double u);

/// ||master_rhs(rho, H, gamma)||_max.
double stationarity_residual(const Matrix& rho, const Matrix& h, double gamma);

}  // namespace sea
