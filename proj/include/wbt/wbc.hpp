#pragma once

// Two-level hierarchical whole-body controller: end-effector pose as the
// primary task, base pose in its null space.

#include <optional>
#include <string>
#include <vector>

#include "wbt/geometry.hpp"
#include "wbt/robot.hpp"

namespace wbt {

struct PdGains {
  Mat3 position = Mat3::Identity();
  Mat3 orientation = Mat3::Identity();
  Mat6 damping = Mat6::Identity();

  static PdGains isotropic(double kp, double ko, double kd);
  static PdGains isotropic(double kp, double ko, double kd_linear, double kd_angular);
  /// Throws ConfigError unless every block is symmetric positive definite.
  void validate(const char* what) const;
};

struct ControllerGains {
  PdGains ee = PdGains::isotropic(500.0, 50.0, 50.0);
  PdGains base = PdGains::isotropic(200.0, 20.0, 200.0, 40.0);
  /// Scales the base stiffness in the wrench fed back to the operator only.
  double wall_scale = 1.0;
  /// Damping -N^T d V_n on the null-space velocity; 0 disables it.
  double null_space_damping = 0.0;

  void validate() const;
};

/// Rows of Z are an orthonormal basis of the null space of J (J Z^T = 0).
/// With `previous`, the basis is rotated (orthogonal Procrustes) to be closest
/// to it. Throws SingularityError when the smallest singular value of J is
/// below `min_singular_value`.
MatrixXd null_space_base(const MatrixXd& J, const MatrixXd* previous = nullptr,
                         double min_singular_value = 1e-6);

/// Q Z with Q orthogonal minimising ||Q Z - reference||_F.
MatrixXd align_basis(const MatrixXd& Z, const MatrixXd& reference);

/// N = (Z M Z^T)^{-1} Z M. Throws ConditioningError if cond(Z M Z^T) > 1e10.
MatrixXd null_space_velocity_map(const MatrixXd& Z, const MatrixXd& M);

struct TaskDecomposition {
  MatrixXd J;     ///< 6 x n end-effector body Jacobian
  MatrixXd Jb;    ///< 6 x n base body Jacobian
  MatrixXd Z;     ///< (n-m) x n
  MatrixXd N;     ///< (n-m) x n
  MatrixXd Jbar;  ///< [J; N]
  MatrixXd M;
  MatrixXd Lambda;  ///< full J̄^{-T} M J̄^{-1}
  MatrixXd Lambda_x, Lambda_n;
  MatrixXd mu;  ///< full Cartesian Coriolis matrix
  MatrixXd mu_x, mu_xn, mu_nx, mu_n;
  Vec6 Vx = Vec6::Zero();
  VectorXd Vn;
  double jbar_rcond = 1.0;
  std::vector<std::string> warnings;

  int nullity() const { return static_cast<int>(Z.rows()); }
};

/// Extended task map and block-decoupled Cartesian dynamics at `state`.
/// `previous_Z` keeps the null-space basis continuous between control ticks.
TaskDecomposition decompose(const RobotModel& model, const RobotState& state,
                            const DynamicsQuantities& dq, const MatrixXd* previous_Z = nullptr);
TaskDecomposition decompose(const RobotModel& model, const RobotState& state,
                            const MatrixXd* previous_Z = nullptr);

/// Body velocity of g_E = g_des^{-1} g given the body velocities of g and g_des.
Twist error_twist(const Pose& g_E, const Twist& V, const Twist& V_des);

/// Body PD wrench [-R_E^T K_P p_E ; -2 R_E^T E(eta,eps)^T K_O eps] - K_D V_E.
/// The damping term opposes the error velocity.
Wrench wrench_pd(const Pose& g_des, const Pose& g, const Twist& V_E, const PdGains& gains);

struct ControlTorques {
  VectorXd tau, tau_x, tau_n, tau_mu;
};

/// -N^T d V_n. Invisible to the end effector like tau_n.
VectorXd null_space_damping_torque(const TaskDecomposition& td, double d);

/// tau = J^T F_x + N^T Z J_b^T F_b + J̄^T [0 mu_xn; mu_nx 0] [Vx; Vn] + G.
ControlTorques control_torques(const TaskDecomposition& td, const Wrench& F_x, const Wrench& F_b,
                               const VectorXd& G);

/// ||J M^{-1} tau_n|| for tau_n = N^T Z J_b^T F_b: the end-effector acceleration
/// the secondary task induces (zero for exact decoupling).
double decoupling_residual(const TaskDecomposition& td, const Wrench& F_b);

}  // namespace wbt
