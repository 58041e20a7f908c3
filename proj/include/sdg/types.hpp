#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <functional>

namespace sdg {

template <typename Scalar>
using Vec3T = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3T = Eigen::Matrix<Scalar, 3, 3>;

using Vec3 = Vec3T<double>;
using Mat3 = Mat3T<double>;
using VectorX = Eigen::VectorXd;

// Scalar field sampled at ambient points.
using ScalarField = std::function<double(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Orthogonal projector I - n n^T onto the plane with unit normal n.
template <typename Derived>
Mat3T<typename Derived::Scalar> tangent_projector(const Eigen::MatrixBase<Derived>& n) {
  using Scalar = typename Derived::Scalar;
  return Mat3T<Scalar>::Identity() - n * n.transpose();
}

}  // namespace sdg
