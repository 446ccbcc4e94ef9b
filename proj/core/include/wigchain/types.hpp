#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace wigchain {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

} // namespace wigchain
