#pragma once

#include <Eigen/Dense>

namespace ycalc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace ycalc
