#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sea/operator_algebra.hpp"
#include "sea/types.hpp"

namespace sea {

/// Two-state Hamiltonian diag(epsilon, 0) in its own eigenbasis {|1>, |0>}.
struct StaticTssParams {
  double epsilon = 1.0;
};

/// Off-diagonal coupling Omega e^{+i omega t} between the bare states.
struct RotatingFieldParams {
  double coupling = 1.0;   // Omega
  double frequency = 0.1;  // omega
};

/// Avoided crossing kappa*t sigma_z + xi sigma_x on t in [-T, T].
struct LandauZenerParams {
  double sweep_rate = 0.1;   // kappa
  double gap = 1.0;          // xi
  double half_window = 500;  // T
};

/// Piecewise-linear interpolation of user-supplied (t, H) samples.
struct CustomTableParams {
  std::vector<double> times;    // strictly increasing
  std::vector<Matrix> matrices; // Hermitian, one per sample time
};

class HamiltonianModel {
 public:
  using Params = std::variant<StaticTssParams, RotatingFieldParams,
                              LandauZenerParams, CustomTableParams>;

  explicit HamiltonianModel(Params params);

  Matrix evaluate(double t) const;
  Matrix derivative(double t) const;

  /// Analytic eigensystem where the model has one, numeric otherwise.
  /// Eigenvector global phase fixed: first nonzero component real positive.
  EigenSystem instantaneous_eigensystem(double t) const;

  Eigen::Index dim() const;
  const Params& params() const { return params_; }

  bool is_static() const;
  /// Natural time unit of the model (1/epsilon, 1/Omega, 1/xi, or 1).
  double natural_energy_scale() const;

 private:
  Params params_;
};

/// Rotates eigenvector columns so the first component above tol is real positive.
void fix_eigenvector_phases(Matrix& vectors, double tol = 1e-12);

struct AdiabaticDiagnostics {
  Eigen::MatrixXd metric_per_pair;  // |<phi_n|Hdot|phi_m>| / (e_n - e_m)^2, zero diagonal
  double max_metric = 0.0;
};

/// The adiabaticity measure at time t. Throws on spectral degeneracy.
AdiabaticDiagnostics adiabaticity_metric(const HamiltonianModel& model, double t);

/// State of the instantaneous-eigenbasis coefficient ODE: amplitudes a_n and
/// the accumulated dynamical phases theta_n = int_0^t eps_n(s) ds.
struct AdiabaticCoefficients {
  Vector amplitudes;
  RealVector phases;
};

/// One RK4 step of the exact coefficient ODE
///   da_n/dt = -a_n <phi_n|dphi_n/dt>
///             + sum_{k != n} a_k e^{-i (theta_k - theta_n)}
///               <phi_n|Hdot|phi_k> / (eps_n - eps_k),
/// with <phi_n|dphi_n/dt> from centered differencing of phase-fixed
/// eigenvectors. Norm-preserving up to integrator error.
AdiabaticCoefficients adiabatic_coefficient_step(const HamiltonianModel& model,
                                                 double t,
                                                 const AdiabaticCoefficients& coeffs,
                                                 double dt);

}  // namespace sea
