#include "sea/thermo.hpp"

#include <cmath>
#include <sstream>

namespace sea {

double von_neumann_entropy(const Matrix& rho) {
  const EigenSystem es = eig_hermitian(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > 0.0) s -= es.values(k) * std::log(es.values(k));
  return s;
}

ObservableRow observables(const Matrix& rho, const HamiltonianModel& model,
                          double t, const Vector& psi0) {
  const Matrix h = model.evaluate(t);
  const EigenSystem basis = model.instantaneous_eigensystem(t);
  const Eigen::Index dim = rho.rows();

  ObservableRow row;
  row.t = t;
  // Eigenbasis populations: p1 tracks the highest eigenvalue, p0 the lowest.
  const Vector lo = basis.vectors.col(0);
  const Vector hi = basis.vectors.col(dim - 1);
  row.p0 = (lo.adjoint() * rho * lo)(0).real();
  row.p1 = (hi.adjoint() * rho * hi)(0).real();
  const Complex coh = (lo.adjoint() * rho * hi)(0);
  row.re_rho01 = coh.real();
  row.im_rho01 = coh.imag();
  row.abs_rho01 = std::abs(coh);
  row.entropy = von_neumann_entropy(rho);
  row.energy = (rho * h).trace().real();
  row.fidelity = (psi0.adjoint() * rho * psi0)(0).real();
  // sigma_x = |1><0| + |0><1| on the first two bare basis states.
  if (dim >= 2) row.sigma_x = 2.0 * rho(0, 1).real();
  row.trace = rho.trace().real();
  row.min_eig = eig_hermitian(rho).values(0);
  if (model.is_static()) {
    row.adiab_metric = 0.0;
  } else {
    row.adiab_metric = adiabaticity_metric(model, t).max_metric;
  }
  return row;
}

CanonicalState canonical_state(const Matrix& h, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("canonical_state: beta must be finite");
  const EigenSystem es = eig_hermitian(h);
  const double spread = es.values(es.values.size() - 1) - es.values(0);
  if (std::abs(beta) * spread > 700.0) {
    std::ostringstream os;
    os << "canonical_state: |beta| * spread = " << std::abs(beta) * spread
       << " would overflow the exponential";
    throw std::invalid_argument(os.str());
  }
  // Shift so the largest exponent is zero.
  double shift = beta >= 0.0 ? es.values(0) : es.values(es.values.size() - 1);
  RealVector weights(es.values.size());
  double z = 0.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    weights(k) = std::exp(-beta * (es.values(k) - shift));
    z += weights(k);
  }
  weights /= z;
  CanonicalState out;
  out.beta = beta;
  out.omega = es.vectors * weights.asDiagonal() * es.vectors.adjoint();
  return out;
}

CanonicalState restricted_canonical(const Matrix& h, const Matrix& projector,
                                    double beta) {
  require_hermitian(projector, "restricted_canonical projector");
  const double scale = std::max(1.0, max_norm(h));
  if (max_norm(commutator(h, projector)) > 1e-10 * scale)
    throw std::invalid_argument("restricted_canonical: [H, P] != 0");
  if (max_norm(Matrix(projector * projector - projector)) > 1e-10)
    throw std::invalid_argument("restricted_canonical: P is not idempotent");

  const CanonicalState full = canonical_state(h, beta);
  Matrix restricted = projector * full.omega * projector;
  const double weight = restricted.trace().real();
  if (weight <= 0.0)
    throw std::invalid_argument("restricted_canonical: tr(P e^{-beta H}) vanishes");
  CanonicalState out;
  out.beta = beta;
  out.omega = restricted / weight;
  const Eigen::Index rank =
      static_cast<Eigen::Index>(std::lround(projector.trace().real()));
  out.rank_deficient = rank < h.rows();
  return out;
}

double effective_beta(const Matrix& h, double u) {
  const EigenSystem es = eig_hermitian(h);
  const double e_min = es.values(0);
  const double e_max = es.values(es.values.size() - 1);
  const double spread = e_max - e_min;
  if (spread <= 0.0)
    throw std::invalid_argument("effective_beta: degenerate spectrum, energy fixes no beta");
  if (u <= e_min || u >= e_max) {
    std::ostringstream os;
    os << "effective_beta: target energy " << u << " outside open spectral interval ("
       << e_min << ", " << e_max << ")";
    throw std::invalid_argument(os.str());
  }

  auto mean_energy = [&](double beta) {
    return (canonical_state(h, beta).omega * h).trace().real();
  };
  const double tol = 1e-10 * spread;
  if (std::abs(mean_energy(0.0) - u) <= tol) return 0.0;

  // <H> is strictly decreasing in beta; expand the bracket geometrically.
  double b = 1.0 / spread;
  double lo = -b, hi = b;
  while (mean_energy(hi) > u) { lo = hi; hi *= 2.0; }
  while (mean_energy(lo) < u) { hi = lo; lo *= 2.0; }
  for (int iter = 0; iter < 200; ++iter) {
    const double beta = 0.5 * (lo + hi);
    const double e = mean_energy(beta);
    if (std::abs(e - u) <= tol) return beta;
    if (e > u) lo = beta; else hi = beta;
  }
  return 0.5 * (lo + hi);
}

double stationarity_residual(const Matrix& rho, const Matrix& h, double gamma) {
  return max_norm(master_rhs(rho, h, gamma).rhs);
}

}  // namespace sea
