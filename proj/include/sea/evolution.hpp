#pragma once

#include <functional>
#include <vector>

#include "sea/dissipator.hpp"
#include "sea/hamiltonian.hpp"
#include "sea/types.hpp"

namespace sea {

enum class Method { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
  Method method = Method::rk45_adaptive;
  double dt = 1e-2;          // initial (adaptive) or fixed step
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_dt = 1.0;
  double min_dt = 1e-12;
  int resym_every = 1;       // steps between re-Hermitization
};

struct MonitorReport {
  double trace_drift = 0.0;
  double energy_drift = 0.0;      // static H only
  double min_eigenvalue_seen = 1.0;
  long entropy_dips = 0;          // S decreases beyond 1e-9
  long clamp_events = 0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<double> entropies;  // von Neumann S at each output point
};

/// Called after each accepted step; returning true stops the run early.
using StopPredicate = std::function<bool(double t, const Matrix& rho)>;

/// Integrate the SEA master equation from t_span.first to t_span.second.
/// States are recorded every `stride` accepted steps (and at both endpoints).
/// Throws std::runtime_error on positivity loss below -1e-6, step underflow,
/// or NaN in the state.
std::pair<TrajectoryRecord, MonitorReport> evolve(
    const Matrix& rho0, const HamiltonianModel& model, double gamma,
    std::pair<double, double> t_span, const IntegratorConfig& cfg,
    int stride = 1, const StopPredicate& stop = {});

/// gamma = 0 reference evolution; purity is conserved.
std::pair<TrajectoryRecord, MonitorReport> evolve_unitary(
    const Matrix& rho0, const HamiltonianModel& model,
    std::pair<double, double> t_span, const IntegratorConfig& cfg,
    int stride = 1, const StopPredicate& stop = {});

}  // namespace sea
