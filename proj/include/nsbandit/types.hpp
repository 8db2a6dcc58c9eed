#pragma once

#include <Eigen/Dense>

namespace nsbandit {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace nsbandit
