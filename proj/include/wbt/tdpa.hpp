#pragma once

// Time-domain passivity bookkeeping for the two-port channel: per-task energy
// ledgers, passivity observers, admittance/impedance passivity controllers and
// a drift compensator.
//
// Power convention: accumulate_energy() takes the power flowing INTO the
// channel at a port. Positive power adds to that port's "in" energy, negative
// power to its "out" energy. With P^M = V_m.F̂_m and P^S = V̂_sd.F_s (F̂_m being
// the force applied to the master), the ports receive -P^M and -P^S.

#include <array>

#include "wbt/geometry.hpp"

namespace wbt {

/// Which task a ledger entry belongs to: end effector (x) or base (b).
enum class TaskId : int { x = 0, b = 1 };

constexpr TaskId task_for(bool ns) { return ns ? TaskId::b : TaskId::x; }
constexpr int index(TaskId t) { return static_cast<int>(t); }

enum class Side { master, slave };

struct PortEnergy {
  double in = 0.0;
  double out = 0.0;
  double pc = 0.0;  ///< cumulative dissipation of this port's passivity controller
};

struct EnergyLedger {
  std::array<PortEnergy, 2> master{};  ///< indexed by TaskId
  std::array<PortEnergy, 2> slave{};
  std::array<double, 2> W_M{0.0, 0.0};  ///< last post-controller observer values
  std::array<double, 2> W_S{0.0, 0.0};

  PortEnergy& port(Side side, TaskId task) {
    return side == Side::master ? master[index(task)] : slave[index(task)];
  }
  const PortEnergy& port(Side side, TaskId task) const {
    return side == Side::master ? master[index(task)] : slave[index(task)];
  }
  /// Cumulative "in" energies of one side, as transmitted in-band.
  std::array<double, 2> in_energies(Side side) const {
    const auto& p = side == Side::master ? master : slave;
    return {p[0].in, p[1].in};
  }
};

/// Books power_in * dt to the task selected by `ns` (false: x, true: b).
/// Energies of the other task are left untouched.
void accumulate_energy(EnergyLedger& ledger, Side side, bool ns, double power_in, double dt);

/// W_M = E^S_in(delayed) - E^M_out + E^M_PC, using the master's own ledger.
double observe_master(const EnergyLedger& ledger, TaskId task, double delayed_slave_in);
/// W_S = E^M_in(delayed) - E^S_out + E^S_PC.
double observe_slave(const EnergyLedger& ledger, TaskId task, double delayed_master_in);

struct Observation {
  double W_M = 0.0;
  double W_S = 0.0;
};
Observation observe(const EnergyLedger& ledger, TaskId task, double delayed_master_in,
                    double delayed_slave_in);

struct PcWeights {
  Mat6 gamma = Mat6::Identity();  ///< admittance side
  Mat6 psi = Mat6::Identity();    ///< impedance side
  /// Throws ConfigError unless both are symmetric positive definite.
  void validate() const;
};

struct PcResult {
  Vec6 output = Vec6::Zero();  ///< corrected velocity (admittance) or force (impedance)
  double gain = 0.0;           ///< d_f or d_v
  double dissipated = 0.0;     ///< energy removed this tick [J]
};

/// V_sd = V̂_sd - d_f Γ F_s with d_f = -W_S / (dt |F_s|²_Γ) when W_S < 0.
/// With F_s = 0 the output is unchanged and the deficit is left for later ticks.
PcResult admittance_pc(double W_S, const Wrench& F_s, const Vec6& V_hat, const Mat6& gamma,
                       double dt);

/// F_m = F̂_m - d_v Ψ V_m with d_v = -W_M / (dt |V_m|²_Ψ) when W_M < 0.
PcResult impedance_pc(double W_M, const Wrench& F_hat, const Vec6& V_m, const Mat6& psi,
                      double dt);

/// Proportional recovery of the slave-side displacement removed by the
/// admittance PC. Variant law: V_ad = gain * displacement, scaled down so the
/// energy dt V_ad.F_s it would release never exceeds `budget`; zero when
/// budget <= 0.
Vec6 drift_compensation(const Vec6& displacement, const Wrench& F_s, double budget, double gain,
                        double dt);

struct DriftCompensator {
  bool enabled = false;
  double gain = 5.0;  ///< [1/s]
  std::array<Vec6, 2> displacement{Vec6::Zero(), Vec6::Zero()};

  /// Adds the velocity removed by the admittance PC, V̂_sd - V_sd.
  void record_removed(TaskId task, const Vec6& removed, double dt) {
    displacement[index(task)] += removed * dt;
  }
  /// Recovery velocity for this tick; records it against the displacement.
  Vec6 step(TaskId task, const Wrench& F_s, double budget, double dt);
};

}  // namespace wbt
