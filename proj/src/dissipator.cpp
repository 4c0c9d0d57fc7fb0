#include "sea/dissipator.hpp"

#include <cmath>
#include <sstream>

namespace sea {

namespace {

double real_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace

SeaCoefficients sea_coefficients(const Matrix& rho, const Matrix& h,
                                 double positivity_tol) {
  const Matrix g = rho_log_rho(rho, nullptr, positivity_tol);
  SeaCoefficients c;
  c.s = real_trace(g);
  c.mean_H = real_trace(rho * h);
  c.mean_H2 = real_trace(rho * h * h);
  c.mean_logrho_H = real_trace(g * h);
  c.sigma2 = c.mean_H2 - c.mean_H * c.mean_H;
  if (c.sigma2 < kDegenerateTol * std::max(1.0, std::abs(c.mean_H2))) {
    c.degenerate = true;
    return c;
  }
  c.mu = (c.s * c.mean_H2 - c.mean_H * c.mean_logrho_H) / c.sigma2;
  c.nu = (c.s * c.mean_H - c.mean_logrho_H) / (2.0 * c.sigma2);
  return c;
}

Matrix dissipator(const Matrix& rho, const Matrix& h, double gamma,
                  long* clamp_events, double positivity_tol) {
  if (gamma < 0.0) throw std::invalid_argument("dissipator: gamma must be >= 0");
  const Matrix g = rho_log_rho(rho, clamp_events, positivity_tol);
  const SeaCoefficients c = sea_coefficients(rho, h, positivity_tol);
  if (c.degenerate) {
    // Only the normalization constraint survives inside one energy eigenspace.
    return -gamma * (g - c.s * rho);
  }
  return -gamma * (g - c.mu * rho + c.nu * anticommutator(rho, h));
}

GeneratorOutput master_rhs(const Matrix& rho, const Matrix& h_t, double gamma,
                           long* clamp_events, double positivity_tol) {
  GeneratorOutput out;
  out.coeffs = sea_coefficients(rho, h_t, positivity_tol);
  out.degenerate_constraint_flag = out.coeffs.degenerate;
  out.unitary_part = -kI * commutator(h_t, rho);
  out.dissipator_part = dissipator(rho, h_t, gamma, clamp_events, positivity_tol);
  out.rhs = out.unitary_part + out.dissipator_part;
  return out;
}

Matrix generator_via_gram(const Matrix& rho, const Matrix& h, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("generator_via_gram: gamma must be >= 0");
  const EigenSystem es = eig_hermitian(rho);
  const double rank_tol = 1e-12;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > rank_tol) ++rank;
  if (rank < es.values.size()) {
    std::ostringstream os;
    os << "generator_via_gram: rho is rank-deficient (rank " << rank << " of "
       << es.values.size() << "), log(rho) undefined";
    throw std::invalid_argument(os.str());
  }

  RealVector logvals(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    logvals(k) = std::log(es.values(k));
  const Matrix log_rho = es.vectors * logvals.asDiagonal() * es.vectors.adjoint();

  const double s = real_trace(rho * log_rho);
  const double mean_h = real_trace(rho * h);
  const double mean_h2 = real_trace(rho * h * h);
  const double mean_lh = real_trace(rho * log_rho * h);
  const double sigma2 = mean_h2 - mean_h * mean_h;
  if (sigma2 < kDegenerateTol * std::max(1.0, std::abs(mean_h2)))
    throw std::invalid_argument("generator_via_gram: degenerate sigma2_H");

  const Eigen::Index dim = rho.rows();
  const Matrix eye = Matrix::Identity(dim, dim);

  // Cofactor expansion along the operator row of
  //   | -log rho    I       H      |
  //   |   -s        1      <H>     |
  //   | -<lrho H>  <H>     <H^2>   |
  // over the 2x2 Gram determinant sigma2.
  const double m12 = -s * mean_h2 + mean_h * mean_lh;
  const double m13 = -s * mean_h + mean_lh;
  const Matrix e_d = (-log_rho * sigma2 - eye * m12 + h * m13) / sigma2;

  // rho E + E rho carries a factor 2 relative to the dissipator convention.
  return 0.5 * gamma * (rho * e_d + e_d * rho);
}

double rescaling_residual(const Matrix& rho, const Matrix& h, double sigma,
                          double gamma) {
  if (sigma <= 0.0) throw std::invalid_argument("rescaling_residual: sigma must be > 0");
  return max_norm(Matrix(dissipator(rho, sigma * h, gamma) - dissipator(rho, h, gamma)));
}

}  // namespace sea
