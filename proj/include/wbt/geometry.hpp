#pragma once

// SE(3) / SO(3) / unit-quaternion helpers. Twists and wrenches are ordered
// (linear, angular) throughout, and all poses map body coordinates into the
// coordinates of the reference frame.

#include <Eigen/Dense>

namespace wbt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat4 = Eigen::Matrix4d;

/// 3x3 rotation matrix. Kept as an alias; use is_rotation() to check the invariants.
using Rotation = Mat3;

enum class FrameTag { body, spatial };

struct Pose {
  Rotation R = Rotation::Identity();
  Vec3 p = Vec3::Zero();

  static Pose identity() { return {}; }
  static Pose translation(const Vec3& p) { return {Rotation::Identity(), p}; }
  static Pose rotation(const Rotation& R) { return {R, Vec3::Zero()}; }

  Pose operator*(const Pose& rhs) const { return {R * rhs.R, R * rhs.p + p}; }
  Vec3 operator*(const Vec3& point) const { return R * point + p; }
  Pose inverse() const { return {R.transpose(), -(R.transpose() * p)}; }
  Mat4 matrix() const;
};

struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();
  FrameTag frame = FrameTag::body;

  static Twist zero() { return {}; }
  static Twist from_vector(const Vec6& v, FrameTag frame = FrameTag::body) {
    return {v.head<3>(), v.tail<3>(), frame};
  }
  Vec6 vector() const {
    Vec6 v;
    v << linear, angular;
    return v;
  }
};

/// Body wrench (force, torque) as a plain 6-vector.
using Wrench = Vec6;

struct UnitQuaternion {
  double eta = 1.0;
  Vec3 eps = Vec3::Zero();

  static UnitQuaternion identity() { return {}; }
  /// Canonical quaternion of R: eta >= 0; for eta == 0 the first nonzero
  /// component of eps is positive.
  static UnitQuaternion from_rotation(const Rotation& R);
  Rotation to_rotation() const;
  double norm_defect() const { return eta * eta + eps.squaredNorm() - 1.0; }
};

Mat3 hat(const Vec3& w);
/// Throws PreconditionError if ||S + S^T|| > 1e-9.
Vec3 vee(const Mat3& S);

/// 4x4 matrix [hat(w) v; 0 0].
Mat4 hat(const Twist& V);

Rotation exp_so3(const Vec3& rotation_vector);
/// Rotation vector (axis * angle), angle in [0, pi].
Vec3 log_so3(const Rotation& R);

/// expE(hat(V) * dt) for a body twist.
Pose exp_se3(const Twist& V, double dt);
/// Inverse of exp_se3(., 1) for rotation angles below pi.
Vec6 log_se3(const Pose& g);

/// g(k) = g(k-1) * expE(hat(V) dt), followed by re-orthonormalisation.
Pose integrate_pose(const Pose& g, const Twist& V, double dt);

struct PoseError {
  Pose g;
  UnitQuaternion q;
};

/// g_E = g_des^{-1} g together with the canonical quaternion of R_E.
PoseError pose_error(const Pose& g_des, const Pose& g);

/// E(eta, eps) = eta I - hat(eps).
Mat3 e_matrix(const UnitQuaternion& q);

/// Ad_g acting on (v, w) twists.
Mat6 adjoint(const Pose& g);
/// ad_V acting on (v, w) twists.
Mat6 ad(const Vec6& V);

/// Nearest rotation in the Frobenius sense (polar decomposition).
Rotation orthonormalize(const Mat3& M);
bool is_rotation(const Mat3& R, double tol = 1e-9);

}  // namespace wbt
