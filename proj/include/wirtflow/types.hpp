#pragma once

#include <Eigen/Core>
#include <complex>

namespace wirtflow {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

bool all_finite(const ComplexVector& v);
bool all_finite(const RealVector& v);

}  // namespace wirtflow
