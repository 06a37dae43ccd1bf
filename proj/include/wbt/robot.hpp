#pragma once

// Floating-base serial/tree robot: a free 6-DOF base followed by revolute or
// prismatic joints.
//
// Generalized velocity layout (n = 6 + number of joints):
//   qdot = [ V_b (body twist of the base frame, linear then angular) ; joint rates ]
// The configuration is the base pose (a rotation matrix chart, kept on SO(3) by
// exponential integration) plus the joint coordinates. With this choice every
// body Jacobian, and therefore M(q), depends on the joint coordinates only;
// the base pose enters through gravity alone.

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "wbt/geometry.hpp"

namespace wbt {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class JointType { revolute, prismatic };

struct RigidBodyInertia {
  double mass = 0.0;
  Vec3 com = Vec3::Zero();         ///< centre of mass in the body frame [m]
  Mat3 inertia = Mat3::Identity();  ///< about the centre of mass, body axes [kg m^2]

  /// diag(m I, I_c) expressed in the centre-of-mass frame.
  Mat6 spatial() const;
};

struct Link {
  std::string name;
  int parent = -1;  ///< -1 is the floating base
  Pose origin;      ///< parent link frame -> joint frame at zero joint value
  Vec3 axis = Vec3::UnitZ();
  JointType type = JointType::revolute;
  RigidBodyInertia inertia;
};

struct FrameSpec {
  std::string name;
  int link = -1;  ///< -1 is the floating base
  Pose offset;
};

using FrameId = std::size_t;

struct RobotModel {
  std::string name;
  RigidBodyInertia base;
  std::vector<Link> links;
  std::vector<FrameSpec> frames;  ///< frames[0] is always the base frame
  Vec3 gravity{0.0, 0.0, -9.81};
  VectorXd home;  ///< documented home joint configuration
  FrameId end_effector_frame = 0;
  FrameId camera_frame = 0;

  static constexpr FrameId base_frame = 0;
  static constexpr int task_dim = 6;

  int joint_count() const { return static_cast<int>(links.size()); }
  int dof() const { return 6 + joint_count(); }

  /// Throws std::out_of_range for unknown names.
  FrameId frame(std::string_view name) const;
  /// Throws ConfigError listing the first violated invariant.
  void validate() const;
};

struct RobotState {
  Pose base;
  VectorXd joints;
  VectorXd velocity;  ///< n-vector, layout above
  VectorXd tau_ext;   ///< n-vector

  static RobotState at_rest(const RobotModel& model, const Pose& base, const VectorXd& joints);
  static RobotState at_home(const RobotModel& model, const Pose& base = Pose::identity());
  Twist base_twist() const { return Twist::from_vector(velocity.head<6>()); }
};

struct DynamicsQuantities {
  MatrixXd M;
  MatrixXd C;
  VectorXd Cqdot;
  VectorXd G;
};

/// Link frames relative to the base frame.
std::vector<Pose> link_poses(const RobotModel& model, const VectorXd& joints);
/// Pose of a frame relative to the base frame.
Pose frame_in_base(const RobotModel& model, const VectorXd& joints, FrameId frame);
/// Pose of a frame in inertial coordinates. Throws std::out_of_range for bad ids.
Pose forward_kinematics(const RobotModel& model, const RobotState& state, FrameId frame);

/// 6 x n body Jacobian: body_jacobian(...) * qdot is the body twist of the frame.
MatrixXd body_jacobian(const RobotModel& model, const VectorXd& joints, FrameId frame);

MatrixXd mass_matrix(const RobotModel& model, const VectorXd& joints);
VectorXd gravity_torque(const RobotModel& model, const RobotState& state);
double potential_energy(const RobotModel& model, const RobotState& state);
double kinetic_energy(const RobotModel& model, const RobotState& state);

/// Joint-coordinate step used for the central differences behind C(q, qdot).
inline constexpr double kDerivativeStep = 1e-6;

DynamicsQuantities dynamics_quantities(const RobotModel& model, const RobotState& state);

/// Generalized acceleration M^{-1}(tau + tau_ext - C qdot - G).
VectorXd forward_dynamics(const RobotModel& model, const RobotState& state, const VectorXd& tau);

/// Semi-implicit Euler: qdot first, then the base pose by exponential
/// integration and the joints linearly. The base rows are advanced in momentum
/// form so a free system conserves its spatial momentum to rounding.
/// Throws DynamicsError if M cannot be factored.
RobotState step_dynamics(const RobotModel& model, const RobotState& state, const VectorXd& tau,
                         double dt);
/// Same, reusing dynamics quantities already evaluated at `state`.
RobotState step_dynamics(const RobotModel& model, const RobotState& state,
                         const DynamicsQuantities& dq, const VectorXd& tau, double dt);

/// Reference configuration of the aerial manipulator used by the experiments:
/// 80 kg floating base (1.5 m cube) with a hanging three-link pitch arm.
RobotModel default_aerial_manipulator();

// ---------------------------------------------------------------- master device

struct MasterParams {
  double mass = 2.0;
  Vec3 inertia{0.1, 0.1, 0.1};
  double linear_damping = 5.0;
  double angular_damping = 0.2;
};

/// Non-redundant 6-DOF master: a single rigid body, gravity compensated, with
/// viscous damping.
struct MasterDevice {
  RobotModel model;
  Mat6 damping = Mat6::Zero();

  static MasterDevice from_params(const MasterParams& params);
};

struct MasterStep {
  RobotState state;
  Twist velocity;  ///< body twist V_m after the step
};

/// Advances the master under operator_force + applied_wrench (both body wrenches).
MasterStep master_device_step(const MasterDevice& master, const RobotState& state,
                              const Wrench& operator_force, const Wrench& applied_wrench,
                              double dt);

}  // namespace wbt
