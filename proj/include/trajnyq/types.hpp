#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <vector>

namespace trajnyq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;
using IndexVec = std::vector<long>;

inline constexpr double kPi = std::numbers::pi;

// Absolute half-width of the band in which a geometric slack is treated as zero.
inline constexpr double kBoundaryTol = 1e-9;

}  // namespace trajnyq
