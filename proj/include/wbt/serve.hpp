#pragma once

// Streaming session: a live operator drives the same tick pipeline over a
// websocket. Messages are JSON text frames, schema "wbteleop.msg/1".
//
// Client -> server
//   {"v":1, "type":"twist", "twist":[vx,vy,vz,wx,wy,wz]}   hand twist [m/s, rad/s]
//   {"v":1, "type":"ns", "ns":true}                         task switch
//   {"v":1, "type":"gains", "wall_scale":0.5}              feedback stiffness multiplier
// Server -> client
//   {"v":1, "type":"hello", "schema":..., "dt":..., "telemetry_hz":..., "units":{...}}
//   {"v":1, "type":"telemetry", "k":..., "t":..., "ns":..., "slave_ns":...,
//    "ee":{"p":[3],"q":[w,x,y,z]}, "ee_des":..., "base":..., "base_des":..., "master":...,
//    "F_m":[6], "wall_force":..., "W":{"M_x":..,"S_x":..,"M_b":..,"S_b":..}}
//   {"v":1, "type":"reject", "reason":"...", "received":"..."}
// Lengths in m, forces in N, torques in Nm, energies in J, time in s.
//
// Inbound commands are hold-last: the newest twist and switch value are
// applied at the next tick boundary. Losing the client reverts to a zero
// twist. Every applied command is logged with its tick for exact replay.

#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wbt/harness.hpp"

namespace wbt {

inline constexpr const char* kMessageSchema = "wbteleop.msg/1";

struct InboundRecord {
  enum class Kind { twist, ns, wall_scale };
  Tick k = 0;
  Kind kind = Kind::twist;
  Vec6 twist = Vec6::Zero();
  bool ns = false;
  double wall_scale = 1.0;
};

nlohmann::json record_to_json(const InboundRecord& r);
InboundRecord record_from_json(const nlohmann::json& j);

/// Recorded command stream of a session (one JSON object per line) plus the
/// number of ticks it ran.
struct SessionLog {
  std::vector<InboundRecord> records;
  Tick ticks = 0;
};
void write_session_log(const SessionLog& log, const std::filesystem::path& path);
SessionLog read_session_log(const std::filesystem::path& path);

/// Parses one inbound text frame. Returns the reject frame on error.
struct ParsedMessage {
  std::optional<InboundRecord> record;
  std::optional<std::string> reject;
};
ParsedMessage parse_message(std::string_view text);

/// Simulation side of a session, independent of the transport. submit() and
/// disconnect() may be called from any thread; step() from one thread only.
class SessionCore {
 public:
  explicit SessionCore(const ScenarioConfig& config);

  /// Queues a command (hold-last per kind). Returns a reject frame for
  /// malformed input; the session carries on.
  std::optional<std::string> submit(std::string_view text);
  /// Safety hold: the twist reverts to zero at the next tick.
  void disconnect();

  /// Applies pending commands, runs one tick and returns its log.
  const TickLog& step();
  /// Telemetry frame for the last tick if it falls on the decimation grid.
  std::optional<std::string> telemetry() const;
  std::string hello() const;

  Tick tick() const { return state_.k; }
  Tick decimation() const { return decimation_; }
  const TeleopState& state() const { return state_; }
  const SessionLog& log() const { return log_; }

  /// Report of everything run so far.
  ExperimentReport report() const;

 private:
  ScenarioConfig config_;
  TeleopSystem system_;
  TeleopState state_;
  OperatorInput input_;
  Tick decimation_ = 20;
  std::vector<TickLog> logs_;
  SessionLog log_;
  std::chrono::steady_clock::time_point started_;

  std::mutex mutex_;
  std::optional<Vec6> pending_twist_;
  std::vector<bool> pending_ns_;
  std::optional<double> pending_wall_scale_;
};

std::string telemetry_frame(const TickLog& log);

/// Applies a logged command to the loop exactly as the live session did.
void apply_record(const InboundRecord& r, TeleopState& state, OperatorInput& input);

/// Re-runs a recorded session in batch mode.
ExperimentReport replay_session(const ScenarioConfig& config, const SessionLog& log);
ExperimentReport replay_session(const ScenarioConfig& config, const std::filesystem::path& path);

/// Bounded queue that drops the oldest entry when full.
class DropOldestQueue {
 public:
  explicit DropOldestQueue(std::size_t capacity) : capacity_(capacity) {}
  void push(std::string s);
  std::optional<std::string> pop();
  std::size_t dropped() const;

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::deque<std::string> items_;
  std::size_t dropped_ = 0;
};

struct ServeOptions {
  Tick max_ticks = -1;                  ///< -1: until stop is set
  std::atomic<bool>* stop = nullptr;    ///< external stop request
  std::ostream* log = nullptr;          ///< status lines
  std::function<void(std::uint16_t)> on_listen;  ///< called with the bound port
};

/// Runs a websocket session on config.serve.host:port (port 0 picks a free
/// one). One simulation thread, one transport thread. Writes the session log
/// to <output dir>/session.jsonl and returns the report.
ExperimentReport serve(const ScenarioConfig& config, const ServeOptions& options = {});

}  // namespace wbt
