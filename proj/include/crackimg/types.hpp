#pragma once

#include <complex>

#include <Eigen/Dense>

namespace crackimg {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

}  // namespace crackimg
