#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace phasekit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// Stability threshold: eigenvalues with real part >= -kStabEps count as unstable.
inline constexpr double kStabEps = 1e-9;

/// Relative margin required between a convex hull and a separating half-plane.
inline constexpr double kHalfPlaneEps = 1e-7;

}  // namespace phasekit
