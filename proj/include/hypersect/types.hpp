#pragma once

#include <Eigen/Core>

#include <functional>

namespace hypersect {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;

/// Largest ambient-domain dimension supported by the deterministic cubature.
inline constexpr int kMaxDimension = 6;

}  // namespace hypersect
