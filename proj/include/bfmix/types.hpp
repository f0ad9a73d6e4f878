#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bfmix {

using Real = double;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr Complex I{0.0, 1.0};

}  // namespace bfmix
