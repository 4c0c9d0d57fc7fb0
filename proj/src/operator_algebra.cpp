#include "sea/operator_algebra.hpp"

#include <cmath>
#include <sstream>

namespace sea {

bool is_hermitian(const Matrix& m, double rel_tol) {
  const double scale = std::max(max_norm(m), 1e-300);
  return max_norm(Matrix(m - m.adjoint())) <= rel_tol * scale;
}

void require_hermitian(const Matrix& m, const char* what, double rel_tol) {
  const double dev = max_norm(Matrix(m - m.adjoint()));
  const double scale = std::max(max_norm(m), 1e-300);
  if (dev > rel_tol * scale) {
    std::ostringstream os;
    os << what << ": not Hermitian, ||M - M^dag||_max = " << dev
       << " exceeds " << rel_tol << " * ||M||_max = " << rel_tol * scale;
    throw std::invalid_argument(os.str());
  }
}

EigenSystem eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: non-square matrix");
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void require_density_matrix(const Matrix& rho, double trace_tol, double eig_tol) {
  require_hermitian(rho, "density matrix");
  const double tr_dev = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
  if (tr_dev > trace_tol) {
    std::ostringstream os;
    os << "density matrix: |tr(rho) - 1| = " << tr_dev << " exceeds " << trace_tol;
    throw std::invalid_argument(os.str());
  }
  const EigenSystem es = eig_hermitian(rho);
  if (es.values(0) < -eig_tol) {
    std::ostringstream os;
    os << "density matrix: min eigenvalue " << es.values(0) << " below -" << eig_tol;
    throw std::invalid_argument(os.str());
  }
}

Matrix rho_log_rho(const Matrix& rho, long* clamp_events, double positivity_tol) {
  const EigenSystem es = eig_hermitian(rho);
  RealVector f(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double x = es.values(k);
    if (x > 0.0) {
      f(k) = x * std::log(x);
    } else {
      f(k) = 0.0;
      if (x < 0.0) {
        if (x <= -positivity_tol) {
          std::ostringstream os;
          os << "rho_log_rho: eigenvalue " << x << " violates positivity tolerance -"
             << positivity_tol;
          throw std::invalid_argument(os.str());
        }
        if (clamp_events) ++(*clamp_events);
      }
    }
  }
  return es.vectors * f.asDiagonal() * es.vectors.adjoint();
}

double real_scalar_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("real_scalar_product: dimension mismatch");
  return 0.5 * (a * b.adjoint() + a.adjoint() * b).trace().real();
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("anticommutator: dimension mismatch");
  return a * b + b * a;
}

}  // namespace sea
