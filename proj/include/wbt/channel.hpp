#pragma once

// Delayed, optionally lossy sample streams standing in for the communication
// channel between master and slave. One stream per direction; each is
// single-producer / single-consumer and may be used from two threads.

#include <array>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "wbt/geometry.hpp"

namespace wbt {

using Tick = std::int64_t;

enum class DelayMode { constant, variable, lossy };

const char* to_string(DelayMode mode);
/// Throws ConfigError for unknown names.
DelayMode delay_mode_from_string(const std::string& name);

struct DelayProfile {
  DelayMode mode = DelayMode::constant;
  double delay_ms = 0.0;
  double jitter_ms = 0.0;  ///< realized delay is delay_ms + U[-jitter, jitter], clipped at 0
  double loss_probability = 0.0;
  std::uint64_t seed = 0;

  static DelayProfile constant(double delay_ms) { return {DelayMode::constant, delay_ms}; }
  /// Throws ConfigError on negative delays or a loss probability outside [0, 1].
  void validate() const;
};

struct ChannelSample {
  Vec6 payload = Vec6::Zero();
  Tick send_index = -1;
  bool ns = false;  ///< task flag at send time
  /// Sender's cumulative "in" energies for the x and b tasks [J].
  std::array<double, 2> energy_in{0.0, 0.0};
};

struct Reception {
  ChannelSample sample;
  Tick age = 0;        ///< now - sample.send_index
  bool fresh = false;  ///< a newer sample arrived this call
};

struct ChannelStats {
  std::int64_t sent = 0;
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;  ///< lost in transit or superseded by a newer sample
  std::int64_t in_flight = 0;
};

struct TraceRecord {
  Tick tick = 0;  ///< tick at which the sample's fate was decided
  int stream = 0;
  Tick send_index = 0;
  Tick delay = 0;  ///< realized delay in ticks, -1 if lost
  bool dropped = false;
};

/// Counter-based generator: splitmix64 over a key mixed from (seed, stream, index).
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                           std::uint64_t draw);
/// Uniform double in [0, 1) from counter_hash.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                       std::uint64_t draw);

class DelayedStream {
 public:
  /// `dt` is the sample period in seconds; delays are rounded to whole ticks.
  DelayedStream(int stream_id, DelayProfile profile, double dt, ChannelSample initial = {},
                bool trace = false);
  /// Copies snapshot the stream (for checkpoints); each copy has its own lock.
  DelayedStream(const DelayedStream& other);
  DelayedStream& operator=(const DelayedStream& other);

  /// Enqueues a sample. Its send_index must be exactly one past the previous
  /// one (the first may start anywhere >= 0); otherwise ProtocolError.
  void send(const ChannelSample& sample);

  /// Newest sample with arrival <= now, or the last delivered one (hold-last).
  /// `now` must not decrease between calls; otherwise ProtocolError.
  Reception receive(Tick now);

  /// Delay in ticks realized for `send_index`, or -1 if that sample is lost.
  Tick realized_delay(Tick send_index) const;

  ChannelStats stats() const;
  std::vector<TraceRecord> trace() const;
  const DelayProfile& profile() const { return profile_; }
  int id() const { return id_; }

 private:
  struct Pending {
    Tick arrival;
    ChannelSample sample;
  };

  int id_ = 0;
  DelayProfile profile_;
  double dt_ = 1e-3;
  bool tracing_ = false;
  mutable std::mutex mutex_;
  std::deque<Pending> pending_;  ///< sorted by (arrival, send_index)
  ChannelSample last_;
  Tick last_sent_ = -1;
  Tick last_now_ = -1;
  ChannelStats stats_;
  std::vector<TraceRecord> trace_;
};

/// Forward (velocity, master to slave) and backward (force, slave to master) streams.
struct Channel {
  static constexpr int kForward = 0;
  static constexpr int kBackward = 1;

  DelayedStream forward;
  DelayedStream backward;

  Channel() : Channel(DelayProfile{}, DelayProfile{}, 1e-3) {}
  Channel(const DelayProfile& forward_profile, const DelayProfile& backward_profile, double dt,
          bool trace = false);
};

}  // namespace wbt
