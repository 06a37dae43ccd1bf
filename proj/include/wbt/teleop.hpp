#pragma once

// Whole-body bilateral teleoperation loop: one master device, a delayed
// two-port channel guarded by the passivity observers/controllers, and the
// hierarchical whole-body controller on the slave. The operator steers either
// the end effector (NS = false) or the base in the end effector's null space
// (NS = true).
//
// Per tick k, in order:
//   1. master step under the operator wrench and last tick's F_m -> V_m(k)
//   2. master books (V_m(k), F̂_m) and sends {V_m, NS, E^M_in} forward
//   3. slave receives V̂_sd, books (V̂_sd, last sent F_s) to the sample's task,
//      runs the admittance PC and the drift compensator -> V_sd
//   4. V_sd is routed to the selected desired pose, which is integrated
//   5. decomposition, F_x and F_b; a task driven through the channel is damped
//      on its absolute velocity
//   6. torques
//   7. slave step
//   8. F_s (F_x, or the pre-projection F_b for NS) is sent backward with E^S_in
//   9. master observer with the newest E^S_in; impedance PC on F̂_m -> F_m;
//      the received force becomes next tick's F̂_m
// The one-sample hold in step 9 makes both ports book the same (V, F) pair
// when the channel has no delay, so the controllers stay idle in that case.

#include <optional>
#include <string>
#include <vector>

#include "wbt/channel.hpp"
#include "wbt/robot.hpp"
#include "wbt/tdpa.hpp"
#include "wbt/wbc.hpp"

namespace wbt {

enum class InputMode { twist, force };

struct OperatorInput {
  InputMode mode = InputMode::twist;
  Vec6 value = Vec6::Zero();  ///< hand reference twist [m/s, rad/s] or wrench [N, Nm]

  static OperatorInput hold() { return {}; }
};

/// Operator hand: a stiff PD coupling between the master and a reference
/// pose that integrates the commanded twist.
struct HandParams {
  double kp = 2000.0;  ///< [N/m]
  double kd = 90.0;    ///< [N s/m]
  double ko = 20.0;
  double kdo = 2.0;

  PdGains gains() const;
};

struct TeleopConfig {
  double dt = 1e-3;
  ControllerGains gains;
  PcWeights weights;
  bool pc_enabled = true;
  bool drift_enabled = false;
  double drift_gain = 5.0;
  double velocity_scale = 1.0;  ///< slave command = velocity_scale * V_sd
  double force_scale = 1.0;     ///< channel force = force_scale * slave wrench
  MasterParams master;
  HandParams hand;
  DelayProfile forward;
  DelayProfile backward;
  bool trace_channel = false;

  /// Throws ConfigError.
  void validate() const;
};

struct TeleopEvent {
  Tick k = 0;
  std::string kind;
  std::string message;
};

struct TeleopState {
  Tick k = 0;
  bool ns = false;        ///< operator's task switch
  int ns_writes = 0;      ///< switch writes since the last tick
  bool slave_ns = false;  ///< task flag of the last forward sample the slave routed
  double wall_scale = 1.0;  ///< live multiplier on the configured wall_scale
  Pose g_x_des, g_b_des;
  Twist V_m;
  Wrench F_m = Wrench::Zero();      ///< force applied to the master on the next step
  Wrench F_hat_m = Wrench::Zero();  ///< delayed reaction waiting for the next PC call
  Wrench F_s = Wrench::Zero();      ///< last wrench sent backward
  RobotState slave;
  RobotState master;
  Pose hand_reference;
  EnergyLedger ledger;
  DriftCompensator drift;
  Channel channel;
  MatrixXd Z;  ///< previous null-space basis
  std::vector<TeleopEvent> events;
};

struct TickLog {
  Tick k = 0;
  double t = 0.0;
  bool ns = false;
  bool slave_ns = false;
  double P_M = 0.0, P_S = 0.0;
  EnergyLedger ledger;  ///< after this tick's bookings and PCs
  double d_f = 0.0, d_v = 0.0;
  double dissipated_M = 0.0, dissipated_S = 0.0;
  double drift_energy = 0.0;
  Pose g_x, g_b, g_x_des, g_b_des, g_m;
  Vec6 V_m = Vec6::Zero(), V_hat_sd = Vec6::Zero(), V_sd = Vec6::Zero(), V_ad = Vec6::Zero();
  Wrench F_x = Wrench::Zero(), F_b = Wrench::Zero(), F_s = Wrench::Zero();
  Wrench F_hat_m = Wrench::Zero(), F_m = Wrench::Zero(), F_hand = Wrench::Zero();
  double decoupling = 0.0;
  double ee_position_error = 0.0;     ///< |p| of g_x,des^{-1} g_x [m]
  double ee_orientation_error = 0.0;  ///< rotation angle of the same [rad]
  bool fallback = false;              ///< gravity compensation only
  Tick forward_age = 0, backward_age = 0;
};

struct PowerVariables {
  double master = 0.0;  ///< P^M = V_m . F̂_m
  double slave = 0.0;   ///< P^S = V̂_sd . F_s
};

PowerVariables power_variables(const Vec6& V_m, const Wrench& F_hat_m, const Vec6& V_hat_sd,
                               const Wrench& F_s);

/// Operator's task switch. Takes effect on the next tick; several writes in
/// one tick keep the last and are logged as an event.
void set_task_switch(TeleopState& state, bool ns);

class TeleopSystem {
 public:
  TeleopSystem(RobotModel model, TeleopConfig config);

  /// Slave must be at rest. Desired poses start at the current poses, NS = 0.
  TeleopState initialize(const RobotState& slave) const;

  /// One control period. `autonomous` is the end-effector twist applied while
  /// the base is teleoperated (zero for a held end effector).
  TickLog tick(TeleopState& state, const OperatorInput& input,
               const Twist& autonomous = Twist::zero()) const;

  const RobotModel& model() const { return model_; }
  const MasterDevice& master() const { return master_; }
  const TeleopConfig& config() const { return config_; }

 private:
  RobotModel model_;
  TeleopConfig config_;
  MasterDevice master_;
  PdGains hand_gains_;
  PdGains feedback_base_gains_;
};

// ------------------------------------------------------------------ timelines

/// Operator command held over [t_start, t_end); the value ramps linearly to
/// value_end when given. `ns` sets the task switch at segment start.
struct TimelineSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::optional<bool> ns;
  InputMode mode = InputMode::twist;
  Vec6 value = Vec6::Zero();
  std::optional<Vec6> value_end;
};

/// Autonomous end-effector twist: offset + amplitude * 2 pi f cos(2 pi f (t - t_start)),
/// i.e. the velocity of a sinusoidal displacement with the given amplitude.
struct AutonomousSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  Vec6 twist = Vec6::Zero();
  Vec6 amplitude = Vec6::Zero();
  double frequency_hz = 0.0;
};

struct TimelineSample {
  OperatorInput input;
  std::optional<bool> ns;  ///< switch requested at this time
};

/// Segment boundaries are rounded to ticks; a segment covers ticks
/// [round(t_start/dt), round(t_end/dt)). Outside every segment the hand holds
/// still. The switch is reported on the segment's first tick only.
TimelineSample sample_timeline(const std::vector<TimelineSegment>& timeline, Tick k, double dt);
Twist sample_autonomous(const std::vector<AutonomousSegment>& segments, double t);

}  // namespace wbt
