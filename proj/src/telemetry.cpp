// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "wavereg/error.hpp"

namespace wavereg {

std::string to_string(const PortKey& key) {
  return "s" + std::to_string(key.switch_id) + "-p" + std::to_string(key.port);
}

std::string_view counter_name(Counter counter) {
  switch (counter) {
    case Counter::RxPackets: return "rx_packets";
    case Counter::TxPackets: return "tx_packets";
    case Counter::RxBytes: return "rx_bytes";
    case Counter::TxBytes: return "tx_bytes";
    case Counter::RxDrops: return "rx_drops";
    case Counter::TxDrops: return "tx_drops";
    case Counter::RxErrors: return "rx_errors";
    case Counter::TxErrors: return "tx_errors";
  }
  return "unknown";
}

Counter counter_from_name(std::string_view name) {
  for (const Counter c : kAllCounters) {
    if (counter_name(c) == name) return c;
  }
  throw Error(ErrorKind::Lookup, "unknown counter '" + std::string(name) + "'");
}

std::uint64_t counter_value(const PortCounters& counters, Counter counter) {
  switch (counter) {
    case Counter::RxPackets: return counters.rx_packets;
    case Counter::TxPackets: return counters.tx_packets;
    case Counter::RxBytes: return counters.rx_bytes;
    case Counter::TxBytes: return counters.tx_bytes;
    case Counter::RxDrops: return counters.rx_drops;
    case Counter::TxDrops: return counters.tx_drops;
    case Counter::RxErrors: return counters.rx_errors;
    case Counter::TxErrors: return counters.tx_errors;
  }
  return 0;
}

std::string_view anomaly_kind_name(AnomalyKind kind) {
  switch (kind) {
    case AnomalyKind::Spike: return "spike";
    case AnomalyKind::Dropout: return "dropout";
    case AnomalyKind::Drift: return "drift";
  }
  return "unknown";
}

void validate(const TrafficProfile& profile) {
  if (!(profile.rx_rate > 0.0) || !(profile.tx_rate > 0.0)) {
    throw Error(ErrorKind::Data, "traffic base rates must be positive");
  }
  if (!(profile.jitter >= 0.0)) throw Error(ErrorKind::Data, "jitter must be non-negative");
  if (!(profile.packet_size > 0.0)) throw Error(ErrorKind::Data, "packet size must be positive");
  if (!(profile.error_rate >= 0.0 && profile.error_rate <= 1.0)) {
    throw Error(ErrorKind::Data, "error rate must lie in [0, 1]");
  }
  for (const auto& burst : profile.bursts) {
    if (!(burst.multiplier > 0.0)) throw Error(ErrorKind::Data, "burst multiplier must be positive");
    if (!(burst.duration > 0.0)) throw Error(ErrorKind::Data, "burst duration must be positive");
  }
}

void validate(const AnomalyScenario& scenario) {
  if (!(scenario.duration > 0.0)) {
    throw Error(ErrorKind::Data, "anomaly duration must be positive");
  }
  if (scenario.kind == AnomalyKind::Dropout) {
    if (!(scenario.magnitude >= 0.0 && scenario.magnitude < 1.0)) {
      throw Error(ErrorKind::Data, "dropout magnitude must lie in [0, 1)");
    }
  } else if (!(scenario.magnitude > 1.0)) {
    throw Error(ErrorKind::Data,
                std::string(anomaly_kind_name(scenario.kind)) + " magnitude must exceed 1");
  }
}

std::uint64_t make_request_id(std::uint64_t tick, SwitchId switch_id) noexcept {
  return (tick << 32) | switch_id;
}

namespace {

bool applies(const AnomalyScenario& a, PortId port, Direction dir) {
  return a.port == port && (a.direction == Direction::Both || a.direction == dir);
}

bool active(double start, double duration, double t) { return t >= start && t < start + duration; }

// Rate multiplier at instant t. With include_dropouts false the result is
// what the port would have carried without any dropout.
double multiplier_at(const TrafficProfile& profile, std::span<const AnomalyScenario> anomalies,
                     PortId port, Direction dir, double t, bool include_dropouts) {
  double m = 1.0;
  for (const auto& b : profile.bursts) {
    if (active(b.t_start, b.duration, t)) m *= b.multiplier;
  }
  for (const auto& a : anomalies) {
    if (!applies(a, port, dir) || !active(a.t0, a.duration, t)) continue;
    switch (a.kind) {
      case AnomalyKind::Spike:
        m *= a.magnitude;
        break;
      case AnomalyKind::Dropout:
        if (include_dropouts) m *= a.magnitude;
        break;
      case AnomalyKind::Drift:
        m *= 1.0 + (a.magnitude - 1.0) * (t - a.t0) / a.duration;
        break;
    }
  }
  return m;
}

std::uint64_t floor_count(double v) {
  return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(v));
}

}  // namespace

SwitchSim::SwitchSim(SwitchConfig config, std::uint64_t seed) : config_(std::move(config)) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(config_.id)};
  rng_.seed(seq);
  for (const auto& p : config_.ports) {
    validate(p.profile);
    ports_.push_back(PortState{p, {}, {}, {}});
  }
  for (const auto& a : config_.anomalies) {
    validate(a);
    if (std::none_of(config_.ports.begin(), config_.ports.end(),
                     [&](const PortConfig& p) { return p.id == a.port; })) {
      throw Error(ErrorKind::Lookup, "anomaly targets unknown port " + std::to_string(a.port) +
                                         " on switch " + std::to_string(config_.id));
    }
  }
}

void SwitchSim::advance_flow(const PortState& port, Direction dir, double rate, double dt,
                             Flow& flow) {
  const auto& profile = port.config.profile;
  const PortId id = port.config.id;
  const double begin = now_;
  const double end = now_ + dt;

  std::vector<double> cuts{begin, end};
  auto add_cut = [&](double t) {
    if (t > begin && t < end) cuts.push_back(t);
  };
  for (const auto& b : profile.bursts) {
    add_cut(b.t_start);
    add_cut(b.t_start + b.duration);
  }
  for (const auto& a : config_.anomalies) {
    if (!applies(a, id, dir)) continue;
    add_cut(a.t0);
    add_cut(a.t0 + a.duration);
  }
  std::sort(cuts.begin(), cuts.end());

  // Multipliers are piecewise linear between cuts, so the midpoint value
  // integrates each piece exactly.
  double volume = 0.0;
  double undisturbed = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    volume += len * multiplier_at(profile, config_.anomalies, id, dir, mid, true);
    undisturbed += len * multiplier_at(profile, config_.anomalies, id, dir, mid, false);
  }

  const double noise = std::max(0.0, 1.0 + profile.jitter * normal_(rng_));
  const double raw = rate * volume * noise;
  if (raw >= 0x1p62) {
    throw Error(ErrorKind::Data, "interval volume of " + to_string(PortKey{config_.id, id}) +
                                     " exceeds the counter range");
  }
  const auto bytes = static_cast<std::uint64_t>(std::llround(raw));
  if (flow.bytes > std::numeric_limits<std::uint64_t>::max() - bytes) {
    throw Error(ErrorKind::Monotonicity,
                "byte counter of " + to_string(PortKey{config_.id, id}) + " would wrap");
  }
  flow.bytes += bytes;
  flow.dropped_bytes += rate * (undisturbed - volume) * noise;
}

void SwitchSim::refresh(PortState& port) {
  const auto& profile = port.config.profile;
  auto& c = port.counters;
  c.rx_bytes = port.rx.bytes;
  c.tx_bytes = port.tx.bytes;
  c.rx_packets = floor_count(static_cast<double>(port.rx.bytes) / profile.packet_size);
  c.tx_packets = floor_count(static_cast<double>(port.tx.bytes) / profile.packet_size);
  c.rx_drops = floor_count(port.rx.dropped_bytes / profile.packet_size);
  c.tx_drops = floor_count(port.tx.dropped_bytes / profile.packet_size);
  c.rx_errors = floor_count(static_cast<double>(c.rx_packets) * profile.error_rate);
  c.tx_errors = floor_count(static_cast<double>(c.tx_packets) * profile.error_rate);
}

void SwitchSim::advance(double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::Data, "advance needs dt > 0");
  for (auto& port : ports_) {
    advance_flow(port, Direction::Rx, port.config.profile.rx_rate, dt, port.rx);
    advance_flow(port, Direction::Tx, port.config.profile.tx_rate, dt, port.tx);
    refresh(port);
  }
  now_ += dt;
}

const PortCounters& SwitchSim::counters(PortId port) const {
  for (const auto& p : ports_) {
    if (p.config.id == port) return p.counters;
  }
  throw Error(ErrorKind::Lookup, "switch " + std::to_string(config_.id) + " has no port " +
                                     std::to_string(port));
}

std::optional<StatsReply> SwitchSim::handle(const StatsRequest& request,
                                            std::uint64_t tick) const {
  const auto& faults = config_.faults;
  if (std::find(faults.silent_ticks.begin(), faults.silent_ticks.end(), tick) !=
      faults.silent_ticks.end()) {
    return std::nullopt;
  }
  StatsReply reply;
  reply.request_id = request.request_id;
  if (std::find(faults.mismatched_ticks.begin(), faults.mismatched_ticks.end(), tick) !=
      faults.mismatched_ticks.end()) {
    reply.request_id = request.request_id + 1;
  }
  reply.switch_id = config_.id;
  reply.replied_at = now_;
  for (const auto& p : ports_) reply.ports.emplace(p.config.id, p.counters);
  return reply;
}

void RegisterStore::add_key(const PortKey& key) { entries_.try_emplace(key); }

bool RegisterStore::contains(const PortKey& key) const { return entries_.count(key) != 0; }

RegisterStore::Entry const& RegisterStore::entry(const PortKey& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorKind::Lookup, "register store has no series for " + to_string(key));
  }
  return it->second;
}

void RegisterStore::append(const PortKey& key, Snapshot snapshot) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorKind::Lookup, "register store has no series for " + to_string(key));
  }
  auto& snaps = it->second.snapshots;
  if (!snaps.empty() && snaps.back().tick >= snapshot.tick) {
    throw Error(ErrorKind::Monotonicity, "snapshot for " + to_string(key) + " out of tick order");
  }
  snaps.push_back(std::move(snapshot));
}

void RegisterStore::record_gap(const PortKey& key, Gap gap) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorKind::Lookup, "register store has no series for " + to_string(key));
  }
  it->second.gaps.push_back(std::move(gap));
}

std::vector<PortKey> RegisterStore::keys() const {
  std::vector<PortKey> out;
  out.reserve(entries_.size());
  for (const auto& [key, _] : entries_) out.push_back(key);
  return out;
}

const std::vector<Snapshot>& RegisterStore::series(const PortKey& key) const {
  return entry(key).snapshots;
}

const std::vector<Gap>& RegisterStore::gaps(const PortKey& key) const { return entry(key).gaps; }

std::size_t RegisterStore::gap_count() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) n += e.gaps.size();
  return n;
}

bool RegisterStore::operator==(const RegisterStore& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto same_snapshot = [](const Snapshot& a, const Snapshot& b) {
    return a.tick == b.tick && a.timestamp == b.timestamp && a.request_id == b.request_id &&
           a.counters == b.counters;
  };
  auto same_gap = [](const Gap& a, const Gap& b) {
    return a.tick == b.tick && a.timestamp == b.timestamp && a.reason == b.reason;
  };
  for (auto a = entries_.begin(), b = other.entries_.begin(); a != entries_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
    if (!std::equal(a->second.snapshots.begin(), a->second.snapshots.end(),
                    b->second.snapshots.begin(), b->second.snapshots.end(), same_snapshot) ||
        !std::equal(a->second.gaps.begin(), a->second.gaps.end(), b->second.gaps.begin(),
                    b->second.gaps.end(), same_gap)) {
      return false;
    }
  }
  return true;
}

namespace {

void collect(RegisterStore& store, const SwitchSim& sw, std::uint64_t tick, double timestamp) {
  const StatsRequest request{make_request_id(tick, sw.id()), sw.id(), timestamp};
  const auto reply = sw.handle(request, tick);

  auto gap_all = [&](GapReason reason, const std::string& message) {
    for (const auto& p : sw.config().ports) {
      store.record_gap(PortKey{sw.id(), p.id}, Gap{tick, timestamp, reason, message});
    }
  };

  if (!reply) {
    gap_all(GapReason::Timeout, "no reply from switch " + std::to_string(sw.id()));
    return;
  }
  if (reply->request_id != request.request_id || reply->switch_id != request.switch_id) {
    gap_all(GapReason::Protocol, "reply id " + std::to_string(reply->request_id) +
                                     " matches no outstanding request of switch " +
                                     std::to_string(sw.id()));
    return;
  }
  for (const auto& p : sw.config().ports) {
    if (reply->ports.count(p.id) == 0) {
      gap_all(GapReason::Protocol, "reply from switch " + std::to_string(sw.id()) +
                                       " lacks port " + std::to_string(p.id));
      return;
    }
  }
  for (const auto& [port, counters] : reply->ports) {
    store.append(PortKey{sw.id(), port}, Snapshot{tick, timestamp, request.request_id, counters});
  }
}

}  // namespace

RegisterStore poll(std::span<SwitchSim> switches, const PollConfig& config) {
  if (!(config.interval > 0.0)) throw Error(ErrorKind::Data, "polling interval must be positive");
  if (!(config.duration >= 0.0)) throw Error(ErrorKind::Data, "duration must be non-negative");
  const double exact = config.duration / config.interval;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
    throw Error(ErrorKind::Data, "duration must be a multiple of the polling interval");
  }
  const auto ticks = static_cast<std::uint64_t>(rounded);

  RegisterStore store;
  for (const auto& sw : switches) {
    for (const auto& p : sw.config().ports) store.add_key(PortKey{sw.id(), p.id});
  }

  const auto count = static_cast<std::ptrdiff_t>(switches.size());
  for (std::uint64_t tick = 1; tick <= ticks; ++tick) {
    const double timestamp = static_cast<double>(tick) * config.interval;
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (count > 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        auto& sw = switches[static_cast<std::size_t>(i)];
        sw.advance(config.interval);
        collect(store, sw, tick, timestamp);
      } catch (...) {
#pragma omp critical(wavereg_poll_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return store;
}

std::vector<double> deltas(std::span<const std::uint64_t> counters) {
  if (counters.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "deltas need at least 2 snapshots, got " +
                                                 std::to_string(counters.size()));
  }
  std::vector<double> out;
  out.reserve(counters.size() - 1);
  for (std::size_t k = 0; k + 1 < counters.size(); ++k) {
    if (counters[k + 1] < counters[k]) {
      throw Error(ErrorKind::Monotonicity, "counter decreased at snapshot " +
                                               std::to_string(k + 1) + " (" +
                                               std::to_string(counters[k]) + " -> " +
                                               std::to_string(counters[k + 1]) + ")");
    }
    out.push_back(static_cast<double>(counters[k + 1] - counters[k]));
  }
  return out;
}

std::vector<std::uint64_t> counter_series(const RegisterStore& store, const PortKey& key,
                                          Counter counter) {
  std::vector<std::uint64_t> out;
  for (const auto& s : store.series(key)) out.push_back(counter_value(s.counters, counter));
  return out;
}

RegisterStore select_server_ports(const RegisterStore& store, std::span<const PortKey> keys) {
  RegisterStore out;
  for (const auto& key : keys) {
    if (!store.contains(key)) {
      throw Error(ErrorKind::Lookup, "no series for server port " + to_string(key));
    }
    out.add_key(key);
    for (const auto& s : store.series(key)) out.append(key, s);
    for (const auto& g : store.gaps(key)) out.record_gap(key, g);
  }
  return out;
}

}  // namespace wavereg
