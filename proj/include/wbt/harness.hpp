#pragma once

// Scenario documents, the batch runner and report files.
//
// Scenario document (JSON, schema "wbteleop.scenario/1"); every field except
// "schema" and "duration" has a default:
// {
//   "schema": "wbteleop.scenario/1",
//   "name": "wall_no_delay",
//   "robot": "../models/aerial_manipulator.json",   // relative to the document
//   "dt": 0.001, "duration": 25.0, "seed": 1,
//   "initial": { "base": { "xyz": [0,0,2], "rpy": [0,0,0] }, "joints": [0.7,-1.4,0.7] },
//   "gains": { "ee":   { "kp": 500, "ko": 50, "kd": 50 },
//              "base": { "kp": 200, "ko": 20, "kd_linear": 200, "kd_angular": 40 },
//              "wall_scale": 1, "null_space_damping": 0 },
//   "channel": { "forward":  { "mode": "constant", "delay_ms": 0, "jitter_ms": 0, "loss": 0 },
//                "backward": { ... } },
//   "tdpa": { "enabled": true, "gamma": 1, "psi": 1,
//             "drift_compensation": { "enabled": false, "gain": 5 } },
//   "scaling": { "velocity": 1, "force": 1 },
//   "master": { "mass": 2, "inertia": [0.1,0.1,0.1], "linear_damping": 5, "angular_damping": 0.2 },
//   "hand": { "kp": 2000, "kd": 90, "ko": 20, "kdo": 2 },
//   "timeline": [ { "t_start": 0, "t_end": 2, "ns": true, "twist": [0,0,0,0,0,0],
//                   "twist_end": [0,0,0.04,0,0,0] },
//                 { "t_start": 2, "t_end": 3, "force": [0,0,5,0,0,0] } ],
//   "autonomous": [ { "t_start": 8, "t_end": 20, "amplitude": [0.05,0,0,0,0,0], "frequency_hz": 0.5 } ],
//   "output": { "dir": "out/wall_no_delay", "channel_trace": false, "plot_decimation": 10 },
//   "mode": "batch",
//   "serve": { "host": "127.0.0.1", "port": 8765, "telemetry_hz": 50 }
// }
// Gains accept a scalar (isotropic) or a full matrix. gamma/psi accept a
// scalar or a 6x6 matrix. Timeline entries carry either "twist" or "force".

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wbt/teleop.hpp"

namespace wbt {

inline constexpr const char* kScenarioSchema = "wbteleop.scenario/1";

enum class RunMode { batch, serve };

struct ServeSettings {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8765;
  double telemetry_hz = 50.0;
  bool realtime = true;  ///< pace the loop to wall-clock time
};

struct OutputSettings {
  std::filesystem::path dir = "out";
  bool channel_trace = false;
  int plot_decimation = 10;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::filesystem::path source;      ///< document path, empty when built in code
  std::filesystem::path robot_path;  ///< empty: built-in aerial manipulator
  RobotModel model;
  TeleopConfig teleop;
  double duration = 0.0;
  std::uint64_t seed = 0;
  Pose initial_base = Pose::translation(Vec3(0.0, 0.0, 2.0));
  VectorXd initial_joints;  ///< empty: model home
  std::vector<TimelineSegment> timeline;
  std::vector<AutonomousSegment> autonomous;
  OutputSettings output;
  RunMode mode = RunMode::batch;
  ServeSettings serve;

  Tick ticks() const;
  RobotState initial_state() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Throws ConfigError (with the path) on I/O, schema or validation errors.
ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> round_trip_ms;  ///< split evenly over both directions
  std::optional<std::filesystem::path> output_dir;
};
void apply_overrides(ScenarioConfig& config, const ScenarioOverrides& overrides);

struct ReportSummary {
  Tick ticks = 0;
  double duration = 0.0;
  std::array<double, 4> min_W{0.0, 0.0, 0.0, 0.0};  ///< W_M,x W_S,x W_M,b W_S,b
  double min_W_all = 0.0;
  double max_feedback_force = 0.0;  ///< max |F_m| linear part [N]
  double max_ee_position_error_ns = 0.0;
  double max_ee_orientation_error_ns = 0.0;
  double max_decoupling = 0.0;
  EnergyLedger final_ledger;
  double pc_dissipation_total = 0.0;
  std::int64_t fallback_ticks = 0;
  std::int64_t events = 0;
  ChannelStats forward, backward;
  double runtime_s = 0.0;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<TickLog> logs;
  std::vector<TeleopEvent> events;
  std::vector<TraceRecord> channel_trace;
  ReportSummary summary;
};

ReportSummary summarize(const std::vector<TickLog>& logs);

/// Drives the tick loop for the whole duration from the scripted timeline.
ExperimentReport run_scenario(const ScenarioConfig& config);

/// Input source for a run: called before every tick with the tick index; may
/// toggle the switch on the state and returns the operator input.
using InputSource = std::function<OperatorInput(Tick k, TeleopState& state)>;
ExperimentReport run_with_input(const ScenarioConfig& config, const InputSource& source,
                                Tick ticks);

/// Assembles the report of a finished loop (summary, events, channel trace).
ExperimentReport make_report(const ScenarioConfig& config, const TeleopState& state,
                             std::vector<TickLog> logs, double runtime_s);

struct ReportFiles {
  std::filesystem::path trajectory, audit, summary, plot_table, events, channel_trace;
};

/// Writes trajectory.csv, audit.csv, summary.json, plot_table.csv, events.csv
/// and (if traced) channel_trace.csv under `dir`. Throws std::runtime_error
/// naming the path on I/O failure.
ReportFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                        int plot_decimation = 10);

nlohmann::json summary_to_json(const ExperimentReport& report);

/// Shortest round-trip decimal text of a double.
std::string format_number(double v);

}  // namespace wbt
