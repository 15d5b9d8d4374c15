#pragma once

#include <Eigen/Dense>

namespace hs {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// lower Cholesky factor; throws NotPositiveDefinite with the failing pivot
Mat cholesky_lower(const Mat& a);

}  // namespace hs
