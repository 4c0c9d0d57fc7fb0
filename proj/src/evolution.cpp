#include "sea/evolution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sea {

namespace {

constexpr double kAbortEig = -1e-6;    // positivity loss threshold
constexpr double kClampEig = 0.0;      // negatives above abort threshold clamp to 0
constexpr double kPureGuardEig = 1e-10;

struct StepContext {
  const HamiltonianModel& model;
  double gamma;
  bool unitary_only;
  MonitorReport& report;
  // Pure states stay pure under the flow and evolve exactly unitarily, so for
  // a pure initial state the dissipator is switched off for the whole run.
  // Evaluating it anyway would feed spurious x ln x noise from off-manifold
  // Runge-Kutta stage states into the step-error estimate, and any eigenvalue
  // leakage sits on an unstable direction the generator amplifies.
  bool pure_run = false;
};

double entropy_of(const RealVector& eigvals) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eigvals.size(); ++k)
    if (eigvals(k) > 0.0) s -= eigvals(k) * std::log(eigvals(k));
  return s;
}

/// Hermitize and clamp small negative eigenvalues at accepted steps so the
/// nonlinear log stays evaluable. Aborts on genuine positivity loss.
Matrix sanitize(const Matrix& m, double t, MonitorReport* report) {
  Matrix sym = 0.5 * (m + m.adjoint());
  if (!sym.allFinite()) {
    std::ostringstream os;
    os << "evolve: NaN/Inf in state at t = " << t;
    throw std::runtime_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  RealVector vals = solver.eigenvalues();
  const double min_eig = vals(0);
  if (report) report->min_eigenvalue_seen = std::min(report->min_eigenvalue_seen, min_eig);
  if (min_eig < kAbortEig) {
    std::ostringstream os;
    os << "evolve: positivity violated at t = " << t << ", min eigenvalue " << min_eig;
    throw std::runtime_error(os.str());
  }
  if (min_eig >= 0.0) return sym;
  const double tr_before = vals.sum();
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    if (vals(k) < kClampEig) {
      if (vals(k) < 0.0 && report) ++report->clamp_events;
      vals(k) = 0.0;
    }
  const double tr_after = vals.sum();
  Matrix out = solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
  if (tr_after > 0.0 && tr_before > 0.0) out *= tr_before / tr_after;
  return out;
}

Matrix rhs(const StepContext& ctx, double t, const Matrix& state) {
  const Matrix h = ctx.model.evaluate(t);
  if (ctx.unitary_only || ctx.gamma == 0.0 || ctx.pure_run)
    return -kI * commutator(h, state);
  // Stage states may transiently dip negative; the continuous x ln x -> 0
  // extension keeps the generator defined there and the error control decides.
  const Matrix sym = 0.5 * (state + state.adjoint());
  constexpr double stage_tol = std::numeric_limits<double>::infinity();
  return master_rhs(sym, h, ctx.gamma, nullptr, stage_tol).rhs;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct Dopri5Result {
  Matrix y;
  double error;
};

Dopri5Result dopri5_step(const StepContext& ctx, double t, const Matrix& y, double dt) {
  const Matrix k1 = rhs(ctx, t, y);
  const Matrix k2 = rhs(ctx, t + c2 * dt, y + dt * (a21 * k1));
  const Matrix k3 = rhs(ctx, t + c3 * dt, y + dt * (a31 * k1 + a32 * k2));
  const Matrix k4 = rhs(ctx, t + c4 * dt, y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
  const Matrix k5 = rhs(ctx, t + c5 * dt, y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Matrix k6 =
      rhs(ctx, t + dt, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  Matrix y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const Matrix k7 = rhs(ctx, t + dt, y5);
  const Matrix err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return {std::move(y5), max_norm(err)};
}

Matrix rk4_step(const StepContext& ctx, double t, const Matrix& y, double dt) {
  const Matrix k1 = rhs(ctx, t, y);
  const Matrix k2 = rhs(ctx, t + 0.5 * dt, y + 0.5 * dt * k1);
  const Matrix k3 = rhs(ctx, t + 0.5 * dt, y + 0.5 * dt * k2);
  const Matrix k4 = rhs(ctx, t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::pair<TrajectoryRecord, MonitorReport> integrate(
    const Matrix& rho0, const HamiltonianModel& model, double gamma,
    std::pair<double, double> t_span, const IntegratorConfig& cfg, int stride,
    const StopPredicate& stop, bool unitary_only) {
  if (cfg.dt <= 0.0 || cfg.min_dt > cfg.max_dt || cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0)
    throw std::invalid_argument("evolve: invalid integrator configuration");
  require_density_matrix(rho0);
  if (stride < 1) stride = 1;

  MonitorReport report;
  StepContext ctx{model, gamma, unitary_only, report};
  TrajectoryRecord record;

  double t = t_span.first;
  const double t_end = t_span.second;
  Matrix state = sanitize(rho0, t, &report);
  if (!unitary_only && gamma > 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> probe0(state);
    ctx.pure_run = probe0.eigenvalues()(0) < 1e-12 &&
                   probe0.eigenvalues().squaredNorm() > 1.0 - 1e-12;
  }
  const bool static_h = model.is_static();
  const Matrix h0 = model.evaluate(t);
  const double energy0 = (state * h0).trace().real();
  const double energy_scale = std::max(1.0, max_norm(h0));

  double last_entropy = -1.0;
  auto observe = [&](bool record_point) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(state);
    const double s_now = entropy_of(solver.eigenvalues());
    report.min_eigenvalue_seen =
        std::min(report.min_eigenvalue_seen, solver.eigenvalues()(0));
    if (last_entropy >= 0.0 && s_now < last_entropy - 1e-9 && !unitary_only &&
        gamma > 0.0 && !ctx.pure_run)
      ++report.entropy_dips;
    last_entropy = s_now;
    report.trace_drift =
        std::max(report.trace_drift, std::abs(state.trace().real() - 1.0));
    if (static_h)
      report.energy_drift = std::max(
          report.energy_drift,
          std::abs((state * h0).trace().real() - energy0));
    if (record_point) {
      record.times.push_back(t);
      record.states.push_back(state);
      record.entropies.push_back(s_now);
    }
    return s_now;
  };
  observe(true);

  double dt = std::min(cfg.dt, cfg.max_dt);
  long steps_since_record = 0;
  long steps_since_resym = 0;

  while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    // Near rank-deficiency the x ln x slope diverges; keep steps short.
    // Pure runs are exempt: they evolve unitarily, see StepContext.
    double dt_cap = cfg.max_dt;
    if (!unitary_only && gamma > 0.0 && !ctx.pure_run) {
      Eigen::SelfAdjointEigenSolver<Matrix> probe(state);
      if (probe.eigenvalues()(0) < kPureGuardEig) dt_cap = std::min(dt_cap, 0.1 / gamma);
    }
    const double dt_try = std::min({dt, dt_cap, t_end - t});

    Matrix next;
    if (cfg.method == Method::rk4_fixed) {
      next = rk4_step(ctx, t, state, dt_try);
    } else {
      const Dopri5Result res = dopri5_step(ctx, t, state, dt_try);
      const double tol = cfg.abs_tol + cfg.rel_tol * std::max(1.0, max_norm(state));
      if (res.error > tol) {
        ++report.rejected_steps;
        dt = dt_try * std::max(0.2, 0.9 * std::pow(tol / res.error, 0.2));
        if (dt < cfg.min_dt) {
          std::ostringstream os;
          os << "evolve: step size underflow at t = " << t << " (dt = " << dt << ")";
          throw std::runtime_error(os.str());
        }
        continue;
      }
      next = res.y;
      const double grow =
          std::min(5.0, 0.9 * std::pow(tol / std::max(res.error, 1e-300), 0.2));
      dt = std::min(dt_try * grow, cfg.max_dt);
    }
    t += dt_try;
    ++report.accepted_steps;
    ++steps_since_resym;
    if (steps_since_resym >= cfg.resym_every) {
      state = sanitize(next, t, &report);
      steps_since_resym = 0;
    } else {
      state = std::move(next);
    }
    ++steps_since_record;
    const bool at_end = t >= t_end - 1e-14 * std::max(1.0, std::abs(t_end));
    const bool stopping = stop && stop(t, state);
    const bool record_point = at_end || stopping || steps_since_record >= stride;
    observe(record_point);
    if (record_point) steps_since_record = 0;
    if (stopping) break;
  }

  return {std::move(record), report};
}

}  // namespace

std::pair<TrajectoryRecord, MonitorReport> evolve(
    const Matrix& rho0, const HamiltonianModel& model, double gamma,
    std::pair<double, double> t_span, const IntegratorConfig& cfg, int stride,
    const StopPredicate& stop) {
  if (gamma < 0.0) throw std::invalid_argument("evolve: gamma must be >= 0");
  return integrate(rho0, model, gamma, t_span, cfg, stride, stop, false);
}

std::pair<TrajectoryRecord, MonitorReport> evolve_unitary(
    const Matrix& rho0, const HamiltonianModel& model,
    std::pair<double, double> t_span, const IntegratorConfig& cfg, int stride,
    const StopPredicate& stop) {
  return integrate(rho0, model, 0.0, t_span, cfg, stride, stop, true);
}

}  // namespace sea
