#pragma once

#include <complex>
#include <Eigen/Dense>

namespace sea {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest absolute entry, the norm used by all tolerance contracts.
inline double max_norm(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace sea
