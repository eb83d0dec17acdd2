// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include <algorithm>
#include <set>

#include "doctest.h"
#include "wavereg/error.hpp"
#include "wavereg/telemetry.hpp"

using namespace wavereg;

namespace {

PortConfig steady_port(PortId id, double rate, double jitter = 0.0) {
  PortConfig p;
  p.id = id;
  p.profile.rx_rate = rate;
  p.profile.tx_rate = rate;
  p.profile.jitter = jitter;
  return p;
}

SwitchConfig one_switch(SwitchId id, std::size_t ports, double jitter = 0.05) {
  SwitchConfig sw;
  sw.id = id;
  for (std::size_t p = 1; p <= ports; ++p) {
    sw.ports.push_back(steady_port(static_cast<PortId>(p), 1000.0 * static_cast<double>(p + id),
                                   jitter));
  }
  return sw;
}

std::vector<double> tx_deltas(SwitchSim& sim, PortId port, int steps, double dt) {
  std::vector<double> out;
  auto previous = sim.counters(port).tx_bytes;
  for (int i = 0; i < steps; ++i) {
    sim.advance(dt);
    const auto now = sim.counters(port).tx_bytes;
    out.push_back(static_cast<double>(now - previous));
    previous = now;
  }
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Data;
}

}  // namespace

TEST_CASE("steady 1000 B/s over 10 s adds exactly 10 000 bytes") {
  SwitchConfig sw;
  sw.id = 1;
  sw.ports.push_back(steady_port(1, 1000.0));
  SwitchSim sim(sw, 1);
  sim.advance(10.0);
  CHECK(sim.counters(1).tx_bytes == 10000);
  CHECK(sim.counters(1).rx_bytes == 10000);
  CHECK(sim.counters(1).tx_packets == 10);
  sim.advance(10.0);
  CHECK(sim.counters(1).tx_bytes == 20000);
}

TEST_CASE("full dropout carries nothing and counts drops") {
  SwitchConfig sw;
  sw.id = 1;
  sw.ports.push_back(steady_port(1, 1000.0));
  sw.anomalies.push_back({AnomalyKind::Dropout, 1, Direction::Tx, 20.0, 30.0, 0.0});
  SwitchSim sim(sw, 1);
  const auto d = tx_deltas(sim, 1, 7, 10.0);
  CHECK(d == std::vector<double>{10000, 10000, 0, 0, 0, 10000, 10000});
  CHECK(sim.counters(1).tx_drops == 30);
  CHECK(sim.counters(1).rx_drops == 0);
  CHECK(sim.counters(1).rx_bytes == 70000);
}

TEST_CASE("a 10x spike over one interval is 10x the neighbours") {
  SwitchConfig sw;
  sw.id = 1;
  sw.ports.push_back(steady_port(1, 1000.0));
  sw.anomalies.push_back({AnomalyKind::Spike, 1, Direction::Both, 30.0, 10.0, 10.0});
  SwitchSim sim(sw, 1);
  const auto d = tx_deltas(sim, 1, 6, 10.0);
  CHECK(d[3] == 10.0 * d[2]);
  CHECK(d[3] == 10.0 * d[4]);
}

TEST_CASE("a spike straddling a poll boundary splits proportionally") {
  SwitchConfig sw;
  sw.id = 1;
  sw.ports.push_back(steady_port(1, 1000.0));
  sw.anomalies.push_back({AnomalyKind::Spike, 1, Direction::Both, 15.0, 10.0, 3.0});
  SwitchSim sim(sw, 1);
  const auto d = tx_deltas(sim, 1, 3, 10.0);
  CHECK(d == std::vector<double>{10000, 20000, 20000});
}

TEST_CASE("drift ramps linearly and reverts afterwards") {
  SwitchConfig sw;
  sw.id = 1;
  sw.ports.push_back(steady_port(1, 1000.0));
  sw.anomalies.push_back({AnomalyKind::Drift, 1, Direction::Both, 0.0, 40.0, 3.0});
  SwitchSim sim(sw, 1);
  const auto d = tx_deltas(sim, 1, 6, 10.0);
  // multiplier 1 + 2 t / 40 averaged over each 10 s interval
  CHECK(d == std::vector<double>{12500, 17500, 22500, 27500, 10000, 10000});
}

TEST_CASE("bursts scale the rate in both directions") {
  SwitchConfig sw;
  sw.id = 1;
  auto port = steady_port(1, 100.0);
  port.profile.bursts.push_back({10.0, 10.0, 4.0});
  sw.ports.push_back(port);
  SwitchSim sim(sw, 1);
  CHECK(tx_deltas(sim, 1, 3, 10.0) == std::vector<double>{1000, 4000, 1000});
  CHECK(sim.counters(1).rx_bytes == 6000);
}

TEST_CASE("errors follow the packet count") {
  SwitchConfig sw;
  sw.id = 1;
  auto port = steady_port(1, 1000.0);
  port.profile.error_rate = 0.25;
  sw.ports.push_back(port);
  SwitchSim sim(sw, 1);
  sim.advance(10.0);
  CHECK(sim.counters(1).tx_packets == 10);
  CHECK(sim.counters(1).tx_errors == 2);
}

TEST_CASE("advance rejects non-positive steps and unknown ports") {
  SwitchSim sim(one_switch(1, 1), 1);
  CHECK(kind_of([&] { sim.advance(0.0); }) == ErrorKind::Data);
  CHECK(kind_of([&] { sim.advance(-1.0); }) == ErrorKind::Data);
  CHECK(kind_of([&] { (void)sim.counters(9); }) == ErrorKind::Lookup);
}

TEST_CASE("profile and anomaly validation") {
  TrafficProfile bad_rate;
  bad_rate.rx_rate = 0.0;
  CHECK(kind_of([&] { validate(bad_rate); }) == ErrorKind::Data);
  CHECK(kind_of([] { validate(AnomalyScenario{AnomalyKind::Spike, 1, Direction::Both, 0, 10, 1.0}); }) ==
        ErrorKind::Data);
  CHECK(kind_of([] { validate(AnomalyScenario{AnomalyKind::Dropout, 1, Direction::Both, 0, 10, 1.0}); }) ==
        ErrorKind::Data);
  CHECK(kind_of([] { validate(AnomalyScenario{AnomalyKind::Drift, 1, Direction::Both, 0, 0, 2.0}); }) ==
        ErrorKind::Data);
  validate(AnomalyScenario{AnomalyKind::Dropout, 1, Direction::Both, 0, 10, 0.0});
}

TEST_CASE("polling 2560 s at 10 s yields 256 snapshots per port") {
  std::vector<SwitchSim> sims;
  sims.emplace_back(one_switch(1, 2), 7);
  const auto store = poll(sims, {10.0, 2560.0});
  REQUIRE(store.keys().size() == 2);
  for (const auto& key : store.keys()) {
    const auto& series = store.series(key);
    CHECK(series.size() == 256);
    for (std::size_t k = 0; k < series.size(); ++k) {
      CHECK(series[k].tick == k + 1);
      CHECK(series[k].timestamp == 10.0 * static_cast<double>(k + 1));
      CHECK(series[k].request_id == make_request_id(k + 1, 1));
    }
  }
  CHECK(store.gap_count() == 0);
}

TEST_CASE("zero duration polls nothing") {
  std::vector<SwitchSim> sims;
  sims.emplace_back(one_switch(1, 2), 7);
  const auto store = poll(sims, {10.0, 0.0});
  for (const auto& key : store.keys()) CHECK(store.series(key).empty());
}

TEST_CASE("poll rejects durations that are not a multiple of the interval") {
  std::vector<SwitchSim> sims;
  sims.emplace_back(one_switch(1, 1), 7);
  CHECK(kind_of([&] { (void)poll(sims, {10.0, 25.0}); }) == ErrorKind::Data);
  CHECK(kind_of([&] { (void)poll(sims, {0.0, 20.0}); }) == ErrorKind::Data);
}

TEST_CASE("parallel polling of three switches equals sequential single-switch runs") {
  const std::uint64_t seed = 99;
  std::vector<SwitchSim> together;
  for (SwitchId id = 1; id <= 3; ++id) together.emplace_back(one_switch(id, 3, 0.2), seed);
  const auto joint = poll(together, {10.0, 2000.0});

  for (SwitchId id = 1; id <= 3; ++id) {
    std::vector<SwitchSim> alone;
    alone.emplace_back(one_switch(id, 3, 0.2), seed);
    const auto single = poll(alone, {10.0, 2000.0});
    for (const auto& key : single.keys()) {
      const auto& a = joint.series(key);
      const auto& b = single.series(key);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].counters == b[k].counters);
        CHECK(a[k].request_id == b[k].request_id);
      }
    }
  }

  std::vector<SwitchSim> again;
  for (SwitchId id = 1; id <= 3; ++id) again.emplace_back(one_switch(id, 3, 0.2), seed);
  CHECK(poll(again, {10.0, 2000.0}) == joint);
}

TEST_CASE("different seeds give different noise") {
  std::vector<SwitchSim> a;
  a.emplace_back(one_switch(1, 1, 0.1), 1);
  std::vector<SwitchSim> b;
  b.emplace_back(one_switch(1, 1, 0.1), 2);
  CHECK_FALSE(poll(a, {10.0, 100.0}) == poll(b, {10.0, 100.0}));
}

TEST_CASE("counters stay monotone and request ids unique") {
  std::vector<SwitchSim> sims;
  auto sw = one_switch(4, 3, 0.5);
  sw.anomalies.push_back({AnomalyKind::Dropout, 2, Direction::Rx, 300, 200, 0.1});
  sw.anomalies.push_back({AnomalyKind::Spike, 1, Direction::Both, 500, 30, 20});
  sims.emplace_back(sw, 5);
  sims.emplace_back(one_switch(5, 2, 0.5), 5);
  const auto store = poll(sims, {10.0, 1000.0});
  std::set<std::uint64_t> ids;
  for (const auto& key : store.keys()) {
    for (const Counter c : kAllCounters) {
      const auto v = counter_series(store, key, c);
      CHECK(std::is_sorted(v.begin(), v.end()));
    }
    for (const auto& s : store.series(key)) ids.insert(s.request_id);
  }
  // one id per switch per tick
  CHECK(ids.size() == 2 * 100);
}

TEST_CASE("timeouts and mismatched replies become gaps") {
  auto sw = one_switch(1, 2);
  sw.faults.silent_ticks = {3, 4};
  sw.faults.mismatched_ticks = {7};
  std::vector<SwitchSim> sims;
  sims.emplace_back(sw, 1);
  const auto store = poll(sims, {10.0, 100.0});
  const PortKey key{1, 1};
  CHECK(store.series(key).size() == 7);
  const auto& gaps = store.gaps(key);
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[0].tick == 3);
  CHECK(gaps[0].reason == GapReason::Timeout);
  CHECK(gaps[1].tick == 4);
  CHECK(gaps[2].tick == 7);
  CHECK(gaps[2].reason == GapReason::Protocol);
  CHECK(gaps[2].timestamp == 70.0);
  CHECK(store.gap_count() == 6);

  // counters keep running through the gaps
  const auto& s = store.series(key);
  CHECK(s[2].tick == 5);
  CHECK(s[2].counters.tx_bytes > s[1].counters.tx_bytes);
}

TEST_CASE("deltas examples") {
  const std::vector<std::uint64_t> a = {100, 250, 400};
  const std::vector<std::uint64_t> b = {5, 5, 5};
  CHECK(deltas(a) == std::vector<double>{150, 150});
  CHECK(deltas(b) == std::vector<double>{0, 0});
  const std::vector<std::uint64_t> down = {10, 20, 15};
  CHECK(kind_of([&] { (void)deltas(down); }) == ErrorKind::Monotonicity);
  const std::vector<std::uint64_t> one = {10};
  CHECK(kind_of([&] { (void)deltas(one); }) == ErrorKind::InsufficientData);
}

TEST_CASE("a 257-snapshot run gives 256 deltas") {
  std::vector<SwitchSim> sims;
  sims.emplace_back(one_switch(1, 1), 3);
  const auto store = poll(sims, {10.0, 2570.0});
  CHECK(deltas(counter_series(store, {1, 1}, Counter::TxBytes)).size() == 256);
}

TEST_CASE("select_server_ports filters, keeps identity and rejects unknown keys") {
  std::vector<SwitchSim> sims;
  sims.emplace_back(one_switch(1, 3), 3);
  const auto store = poll(sims, {10.0, 50.0});

  const std::vector<PortKey> two = {{1, 2}};
  const auto only = select_server_ports(store, two);
  CHECK(only.keys() == two);
  CHECK(only.series({1, 2}).size() == store.series({1, 2}).size());

  const auto all = store.keys();
  CHECK(select_server_ports(store, all) == store);
  CHECK(select_server_ports(store, std::vector<PortKey>{}).empty());

  const std::vector<PortKey> missing = {{1, 9}};
  CHECK(kind_of([&] { (void)select_server_ports(store, missing); }) == ErrorKind::Lookup);
}

TEST_CASE("store appends must advance in tick order") {
  RegisterStore store;
  store.add_key({1, 1});
  store.append({1, 1}, Snapshot{2, 20.0, 0, {}});
  CHECK(kind_of([&] { store.append({1, 1}, Snapshot{2, 20.0, 0, {}}); }) ==
        ErrorKind::Monotonicity);
  CHECK(kind_of([&] { store.append({2, 1}, Snapshot{3, 30.0, 0, {}}); }) == ErrorKind::Lookup);
}

TEST_CASE("counter names round trip") {
  for (const Counter c : kAllCounters) CHECK(counter_from_name(counter_name(c)) == c);
  CHECK(counter_name(Counter::TxBytes) == "tx_bytes");
  CHECK(kind_of([] { (void)counter_from_name("bogus"); }) == ErrorKind::Lookup);
  CHECK(to_string(PortKey{3, 14}) == "s3-p14");
}

TEST_CASE("request ids encode tick and switch") {
  CHECK(make_request_id(1, 1) != make_request_id(1, 2));
  CHECK(make_request_id(2, 1) != make_request_id(1, 2));
  CHECK(make_request_id(5, 7) == ((std::uint64_t{5} << 32) | 7));
}
