#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace beval {

// Rigid transform between two frames. Stored as quaternion + translation
// (the on-disk form); the rotation matrix is derived once at construction.
//
// Frame convention used throughout: x forward, y left, z up, ego origin at
// the vehicle center on the ground plane.
class Pose {
 public:
  Pose() : q_(Eigen::Quaterniond::Identity()), t_(Eigen::Vector3d::Zero()), r_(Eigen::Matrix3d::Identity()) {}

  Pose(const Eigen::Quaterniond& q, const Eigen::Vector3d& t)
      : q_(q), t_(t), r_(q.toRotationMatrix()) {}

  static Pose identity() { return Pose(); }

  // Rotation about +z by yaw radians plus a translation.
  static Pose from_yaw(double yaw, const Eigen::Vector3d& t = Eigen::Vector3d::Zero()) {
    return Pose(Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ())), t);
  }

  const Eigen::Quaterniond& quaternion() const { return q_; }
  const Eigen::Vector3d& translation() const { return t_; }
  const Eigen::Matrix3d& rotation() const { return r_; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return r_ * p + t_; }

  Pose inverse() const {
    Eigen::Quaterniond qi = q_.conjugate();
    return Pose(qi, -(qi * t_));
  }

  // Proper orthonormality within tol: R^T R == I and det(R) == +1.
  bool is_valid(double tol = 1e-9) const {
    Eigen::Matrix3d err = r_.transpose() * r_ - Eigen::Matrix3d::Identity();
    return err.cwiseAbs().maxCoeff() <= tol && std::abs(r_.determinant() - 1.0) <= tol;
  }

 private:
  Eigen::Quaterniond q_;
  Eigen::Vector3d t_;
  Eigen::Matrix3d r_;
};

}  // namespace beval
