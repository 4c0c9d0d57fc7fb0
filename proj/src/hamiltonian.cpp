#include "sea/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace sea {

namespace {

// Basis convention for the two-state models: index 0 = |1>, index 1 = |0>,
// matching the matrix forms written in the {|1>, |0>} ordering.

Matrix static_tss_matrix(const StaticTssParams& p) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = p.epsilon;
  return h;
}

Matrix rotating_field_matrix(const RotatingFieldParams& p, double t) {
  Matrix h = Matrix::Zero(2, 2);
  const Complex phase = std::exp(kI * (p.frequency * t));
  h(0, 1) = p.coupling * phase;
  h(1, 0) = p.coupling * std::conj(phase);
  return h;
}

Matrix landau_zener_matrix(const LandauZenerParams& p, double t) {
  Matrix h(2, 2);
  h(0, 0) = p.sweep_rate * t;
  h(0, 1) = p.gap;
  h(1, 0) = p.gap;
  h(1, 1) = -p.sweep_rate * t;
  return h;
}

void check_lz_domain(const LandauZenerParams& p, double t) {
  const double slack = 1e-9 * std::max(1.0, p.half_window);
  if (t < -p.half_window - slack || t > p.half_window + slack) {
    std::ostringstream os;
    os << "landau_zener: t = " << t << " outside [-T, T] with T = " << p.half_window;
    throw std::out_of_range(os.str());
  }
}

struct TableSegment {
  std::size_t lo;
  double frac;
  double inv_span;
};

TableSegment locate_segment(const CustomTableParams& p, double t) {
  if (p.times.size() < 2) throw std::invalid_argument("custom_table: need at least two samples");
  if (t < p.times.front() || t > p.times.back()) {
    std::ostringstream os;
    os << "custom_table: t = " << t << " outside table domain [" << p.times.front()
       << ", " << p.times.back() << "]";
    throw std::out_of_range(os.str());
  }
  std::size_t lo = 0;
  while (lo + 2 < p.times.size() && t >= p.times[lo + 1]) ++lo;
  const double span = p.times[lo + 1] - p.times[lo];
  return {lo, (t - p.times[lo]) / span, 1.0 / span};
}

}  // namespace

HamiltonianModel::HamiltonianModel(Params params) : params_(std::move(params)) {
  if (const auto* tbl = std::get_if<CustomTableParams>(&params_)) {
    if (tbl->times.size() != tbl->matrices.size() || tbl->times.size() < 2)
      throw std::invalid_argument("custom_table: times and matrices must match, >= 2 samples");
    for (std::size_t k = 1; k < tbl->times.size(); ++k)
      if (tbl->times[k] <= tbl->times[k - 1])
        throw std::invalid_argument("custom_table: sample times must be strictly increasing");
    for (const Matrix& m : tbl->matrices) require_hermitian(m, "custom_table sample");
  }
}

Matrix HamiltonianModel::evaluate(double t) const {
  return std::visit(
      [t](const auto& p) -> Matrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticTssParams>) {
          return static_tss_matrix(p);
        } else if constexpr (std::is_same_v<T, RotatingFieldParams>) {
          return rotating_field_matrix(p, t);
        } else if constexpr (std::is_same_v<T, LandauZenerParams>) {
          check_lz_domain(p, t);
          return landau_zener_matrix(p, t);
        } else {
          const TableSegment seg = locate_segment(p, t);
          return (1.0 - seg.frac) * p.matrices[seg.lo] + seg.frac * p.matrices[seg.lo + 1];
        }
      },
      params_);
}

Matrix HamiltonianModel::derivative(double t) const {
  return std::visit(
      [t](const auto& p) -> Matrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticTssParams>) {
          return Matrix::Zero(2, 2);
        } else if constexpr (std::is_same_v<T, RotatingFieldParams>) {
          Matrix hd = Matrix::Zero(2, 2);
          const Complex phase = std::exp(kI * (p.frequency * t));
          hd(0, 1) = kI * p.frequency * p.coupling * phase;
          hd(1, 0) = std::conj(hd(0, 1));
          return hd;
        } else if constexpr (std::is_same_v<T, LandauZenerParams>) {
          check_lz_domain(p, t);
          Matrix hd = Matrix::Zero(2, 2);
          hd(0, 0) = p.sweep_rate;
          hd(1, 1) = -p.sweep_rate;
          return hd;
        } else {
          const TableSegment seg = locate_segment(p, t);
          return seg.inv_span * (p.matrices[seg.lo + 1] - p.matrices[seg.lo]);
        }
      },
      params_);
}

void fix_eigenvector_phases(Matrix& vectors, double tol) {
  for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
    for (Eigen::Index row = 0; row < vectors.rows(); ++row) {
      const Complex v = vectors(row, col);
      if (std::abs(v) > tol) {
        vectors.col(col) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
}

EigenSystem HamiltonianModel::instantaneous_eigensystem(double t) const {
  if (const auto* rot = std::get_if<RotatingFieldParams>(&params_)) {
    EigenSystem es;
    es.values = RealVector(2);
    es.values << -rot->coupling, rot->coupling;
    const Complex phase = std::exp(-kI * (rot->frequency * t));
    es.vectors = Matrix(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    // |-> = (|1> - e^{-i w t}|0>)/sqrt(2), |+> = (|1> + e^{-i w t}|0>)/sqrt(2)
    es.vectors(0, 0) = r;
    es.vectors(1, 0) = -r * phase;
    es.vectors(0, 1) = r;
    es.vectors(1, 1) = r * phase;
    fix_eigenvector_phases(es.vectors);
    return es;
  }
  if (const auto* lz = std::get_if<LandauZenerParams>(&params_)) {
    check_lz_domain(*lz, t);
    const double kt = lz->sweep_rate * t;
    const double ener = std::sqrt(lz->gap * lz->gap + kt * kt);
    const double theta = -std::atan((kt - ener) / lz->gap);
    EigenSystem es;
    es.values = RealVector(2);
    es.values << -ener, ener;
    es.vectors = Matrix(2, 2);
    // |+> = cos(theta)|1> + sin(theta)|0>, |-> = -sin(theta)|1> + cos(theta)|0>
    es.vectors(0, 0) = -std::sin(theta);
    es.vectors(1, 0) = std::cos(theta);
    es.vectors(0, 1) = std::cos(theta);
    es.vectors(1, 1) = std::sin(theta);
    fix_eigenvector_phases(es.vectors);
    return es;
  }
  EigenSystem es = eig_hermitian(evaluate(t));
  fix_eigenvector_phases(es.vectors);
  return es;
}

Eigen::Index HamiltonianModel::dim() const {
  if (const auto* tbl = std::get_if<CustomTableParams>(&params_))
    return tbl->matrices.front().rows();
  return 2;
}

bool HamiltonianModel::is_static() const {
  return std::holds_alternative<StaticTssParams>(params_);
}

double HamiltonianModel::natural_energy_scale() const {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticTssParams>) return p.epsilon;
        else if constexpr (std::is_same_v<T, RotatingFieldParams>) return p.coupling;
        else if constexpr (std::is_same_v<T, LandauZenerParams>) return p.gap;
        else return 1.0;
      },
      params_);
}

AdiabaticDiagnostics adiabaticity_metric(const HamiltonianModel& model, double t) {
  const EigenSystem es = model.instantaneous_eigensystem(t);
  const Matrix hdot = model.derivative(t);
  const Eigen::Index n = es.values.size();
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);

  AdiabaticDiagnostics diag;
  diag.metric_per_pair = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      const double gap = es.values(a) - es.values(b);
      if (std::abs(gap) < 1e-12 * scale) {
        std::ostringstream os;
        os << "adiabaticity_metric: degenerate spectrum at t = " << t
           << " (gap " << gap << ")";
        throw std::invalid_argument(os.str());
      }
      const Complex coupling = (es.vectors.col(a).adjoint() * hdot * es.vectors.col(b))(0);
      const double m = std::abs(coupling) / (gap * gap);
      diag.metric_per_pair(a, b) = m;
      diag.max_metric = std::max(diag.max_metric, m);
    }
  }
  return diag;
}

namespace {

struct CoeffDerivative {
  Vector da;
  RealVector dtheta;
};

CoeffDerivative coefficient_ode_rhs(const HamiltonianModel& model, double t,
                                    const AdiabaticCoefficients& state) {
  const EigenSystem es = model.instantaneous_eigensystem(t);
  const Matrix hdot = model.derivative(t);
  const Eigen::Index n = es.values.size();
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1e-300);

  // <phi_n|dphi_n/dt> by centered difference of the phase-fixed eigenvectors.
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const EigenSystem plus = model.instantaneous_eigensystem(t + h);
  const EigenSystem minus = model.instantaneous_eigensystem(t - h);

  CoeffDerivative out;
  out.da = Vector::Zero(n);
  out.dtheta = es.values;
  for (Eigen::Index idx = 0; idx < n; ++idx) {
    const Vector dvec = (plus.vectors.col(idx) - minus.vectors.col(idx)) / (2.0 * h);
    const Complex self = (es.vectors.col(idx).adjoint() * dvec)(0);
    out.da(idx) = -state.amplitudes(idx) * self;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == idx) continue;
      const double gap = es.values(idx) - es.values(k);
      if (std::abs(gap) < 1e-12 * scale)
        throw std::invalid_argument("adiabatic_coefficient_step: degenerate spectrum");
      const Complex coupling = (es.vectors.col(idx).adjoint() * hdot * es.vectors.col(k))(0);
      const Complex phase = std::exp(-kI * (state.phases(k) - state.phases(idx)));
      out.da(idx) += state.amplitudes(k) * phase * coupling / gap;
    }
  }
  return out;
}

AdiabaticCoefficients advance(const AdiabaticCoefficients& s, const CoeffDerivative& d,
                              double dt) {
  return {s.amplitudes + dt * d.da, s.phases + dt * d.dtheta};
}

}  // namespace

AdiabaticCoefficients adiabatic_coefficient_step(const HamiltonianModel& model,
                                                 double t,
                                                 const AdiabaticCoefficients& coeffs,
                                                 double dt) {
  const CoeffDerivative k1 = coefficient_ode_rhs(model, t, coeffs);
  const CoeffDerivative k2 = coefficient_ode_rhs(model, t + 0.5 * dt, advance(coeffs, k1, 0.5 * dt));
  const CoeffDerivative k3 = coefficient_ode_rhs(model, t + 0.5 * dt, advance(coeffs, k2, 0.5 * dt));
  const CoeffDerivative k4 = coefficient_ode_rhs(model, t + dt, advance(coeffs, k3, dt));
  AdiabaticCoefficients out;
  out.amplitudes = coeffs.amplitudes +
                   (dt / 6.0) * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da);
  out.phases = coeffs.phases +
               (dt / 6.0) * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
  return out;
}

}  // namespace sea
