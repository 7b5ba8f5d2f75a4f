#pragma once

#include <Eigen/Dense>

namespace ts {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vectord = Vector<double>;
using Matrixd = Matrix<double>;
using Matrixi = Eigen::MatrixXi;

using Index = Eigen::Index;

}  // namespace ts
