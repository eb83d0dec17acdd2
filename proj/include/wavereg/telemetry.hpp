// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_TELEMETRY_HPP
#define WAVEREG_TELEMETRY_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavereg {

using SwitchId = std::uint32_t;
using PortId = std::uint32_t;

struct PortKey {
  SwitchId switch_id = 0;
  PortId port = 0;

  auto operator<=>(const PortKey&) const = default;
};

std::string to_string(const PortKey& key);

/// Cumulative interface statistics, as carried in a stats reply.
struct PortCounters {
  std::uint64_t rx_packets = 0;
  std::uint64_t tx_packets = 0;
  std::uint64_t rx_bytes = 0;
  std::uint64_t tx_bytes = 0;
  std::uint64_t rx_drops = 0;
  std::uint64_t tx_drops = 0;
  std::uint64_t rx_errors = 0;
  std::uint64_t tx_errors = 0;

  bool operator==(const PortCounters&) const = default;
};

enum class Counter { RxPackets, TxPackets, RxBytes, TxBytes, RxDrops, TxDrops, RxErrors, TxErrors };

inline constexpr Counter kAllCounters[] = {
    Counter::RxPackets, Counter::TxPackets, Counter::RxBytes,  Counter::TxBytes,
    Counter::RxDrops,   Counter::TxDrops,   Counter::RxErrors, Counter::TxErrors};

std::string_view counter_name(Counter counter);
Counter counter_from_name(std::string_view name);
std::uint64_t counter_value(const PortCounters& counters, Counter counter);

enum class Direction { Rx, Tx, Both };

struct Burst {
  double t_start = 0.0;
  double duration = 0.0;
  double multiplier = 1.0;
};

/// Normal-condition traffic of one port. Rates are bytes per second.
struct TrafficProfile {
  double rx_rate = 1.0;
  double tx_rate = 1.0;
  double jitter = 0.0;  // relative standard deviation of each interval's volume
  double packet_size = 1000.0;
  double error_rate = 0.0;  // errored fraction of packets
  std::vector<Burst> bursts;
};

enum class AnomalyKind { Spike, Dropout, Drift };

std::string_view anomaly_kind_name(AnomalyKind kind);

/// Spike and dropout scale the rate by `magnitude` while active; drift ramps
/// the scale linearly from 1 at t0 to `magnitude` at t0 + duration.
struct AnomalyScenario {
  AnomalyKind kind = AnomalyKind::Spike;
  PortId port = 0;
  Direction direction = Direction::Both;
  double t0 = 0.0;
  double duration = 0.0;
  double magnitude = 1.0;
};

/// Throws Error(Data) when profile or scenario invariants do not hold.
void validate(const TrafficProfile& profile);
void validate(const AnomalyScenario& scenario);

/// Ticks at which a switch misbehaves, for exercising the collector.
struct FaultPlan {
  std::vector<std::uint64_t> silent_ticks;      // no reply: recorded as timeout
  std::vector<std::uint64_t> mismatched_ticks;  // reply carries a wrong request id
};

struct PortConfig {
  PortId id = 0;
  TrafficProfile profile;
};

struct SwitchConfig {
  SwitchId id = 0;
  std::vector<PortConfig> ports;
  std::vector<PortId> server_ports;
  std::vector<AnomalyScenario> anomalies;
  FaultPlan faults;
};

struct StatsRequest {
  std::uint64_t request_id = 0;
  SwitchId switch_id = 0;
  double issued_at = 0.0;
};

struct StatsReply {
  std::uint64_t request_id = 0;
  SwitchId switch_id = 0;
  std::map<PortId, PortCounters> ports;
  double replied_at = 0.0;
};

/// Request ids are unique per (tick, switch) within one collector run.
std::uint64_t make_request_id(std::uint64_t tick, SwitchId switch_id) noexcept;

/// Simulated switch: port counters driven by profiles and anomalies on a
/// simulated clock. Its random stream depends only on (seed, switch id).
class SwitchSim {
 public:
  SwitchSim(SwitchConfig config, std::uint64_t seed);

  SwitchId id() const noexcept { return config_.id; }
  const SwitchConfig& config() const noexcept { return config_; }
  double now() const noexcept { return now_; }

  /// Moves the clock forward by dt > 0 seconds and updates every counter.
  void advance(double dt);

  const PortCounters& counters(PortId port) const;

  /// Reply for `request` at the current clock, or nullopt when the fault
  /// plan silences the switch at `tick`.
  std::optional<StatsReply> handle(const StatsRequest& request, std::uint64_t tick) const;

 private:
  struct Flow {
    std::uint64_t bytes = 0;
    double dropped_bytes = 0.0;
  };
  struct PortState {
    PortConfig config;
    Flow rx;
    Flow tx;
    PortCounters counters;
  };

  void advance_flow(const PortState& port, Direction dir, double rate, double dt, Flow& flow);
  static void refresh(PortState& port);

  SwitchConfig config_;
  std::vector<PortState> ports_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double now_ = 0.0;
};

enum class GapReason { Timeout, Protocol };

struct Snapshot {
  std::uint64_t tick = 0;
  double timestamp = 0.0;
  std::uint64_t request_id = 0;
  PortCounters counters;
};

struct Gap {
  std::uint64_t tick = 0;
  double timestamp = 0.0;
  GapReason reason = GapReason::Timeout;
  std::string message;
};

/// Snapshots per (switch, port). Keys must be added before polling; after
/// that, appends to distinct keys may run concurrently.
class RegisterStore {
 public:
  void add_key(const PortKey& key);
  bool contains(const PortKey& key) const;

  void append(const PortKey& key, Snapshot snapshot);
  void record_gap(const PortKey& key, Gap gap);

  std::vector<PortKey> keys() const;
  const std::vector<Snapshot>& series(const PortKey& key) const;
  const std::vector<Gap>& gaps(const PortKey& key) const;
  std::size_t gap_count() const;

  bool empty() const noexcept { return entries_.empty(); }

  bool operator==(const RegisterStore& other) const;

 private:
  struct Entry {
    std::vector<Snapshot> snapshots;
    std::vector<Gap> gaps;
  };
  const Entry& entry(const PortKey& key) const;

  std::map<PortKey, Entry> entries_;
};

struct PollConfig {
  double interval = 10.0;
  double duration = 0.0;
};

/// Controller loop: every tick advances all switches by one interval, sends
/// one stats request per switch and stores the replies. Switches are
/// processed concurrently within a tick; tick k completes before k + 1.
RegisterStore poll(std::span<SwitchSim> switches, const PollConfig& config);

/// Per-interval increments of a cumulative counter.
std::vector<double> deltas(std::span<const std::uint64_t> counters);

/// One counter of one key, in tick order.
std::vector<std::uint64_t> counter_series(const RegisterStore& store, const PortKey& key,
                                          Counter counter);

/// Store restricted to the given keys. Throws Error(Lookup) on unknown keys.
RegisterStore select_server_ports(const RegisterStore& store, std::span<const PortKey> keys);

}  // namespace wavereg

#endif  // WAVEREG_TELEMETRY_HPP
