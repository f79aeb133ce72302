#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qpt {

using cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cx im{0.0, 1.0};

}  // namespace qpt
