#pragma once

#include <Eigen/Dense>

namespace unmix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace unmix
