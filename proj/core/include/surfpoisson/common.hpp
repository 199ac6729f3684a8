#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace surfpoisson {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using VecX = Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double>;

/// Tool version recorded in every artifact file.
const char* tool_version();

}  // namespace surfpoisson
