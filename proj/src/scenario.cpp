// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto begin = s.find_first_not_of(" \t,", pos);
    if (begin == std::string_view::npos) break;
    auto end = s.find_first_of(" \t,", begin);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(begin, end - begin));
    pos = end;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message);
}

struct Field {
  std::string_view value;
  std::size_t line = 0;
};

// Key/value pairs of one [section]; repeated keys are kept in order.
struct Section {
  std::string name;
  std::size_t line = 0;
  std::multimap<std::string, Field> fields;

  bool has(const std::string& key) const { return fields.count(key) != 0; }

  Field required(const std::string& key) const {
    const auto it = fields.find(key);
    if (it == fields.end()) fail(line, "[" + name + "] section is missing '" + key + "'");
    return it->second;
  }

  std::vector<Field> all(const std::string& key) const {
    std::vector<Field> out;
    auto [begin, end] = fields.equal_range(key);
    for (auto it = begin; it != end; ++it) out.push_back(it->second);
    return out;
  }
};

double to_double(const Field& f) {
  double v = 0.0;
  const auto* first = f.value.data();
  const auto* last = first + f.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(f.line, "expected a number, got '" + std::string(f.value) + "'");
  return v;
}

std::uint64_t to_uint(const Field& f) {
  std::uint64_t v = 0;
  const auto* first = f.value.data();
  const auto* last = first + f.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    fail(f.line, "expected a non-negative integer, got '" + std::string(f.value) + "'");
  }
  return v;
}

std::uint32_t to_id(const Field& f) {
  const auto v = to_uint(f);
  if (v > 0xffffffffULL) fail(f.line, "identifier out of range");
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint64_t> to_uint_list(const Field& f) {
  std::vector<std::uint64_t> out;
  for (const auto w : words(f.value)) out.push_back(to_uint(Field{w, f.line}));
  return out;
}

std::vector<double> to_double_list(const Field& f) {
  std::vector<double> out;
  for (const auto w : words(f.value)) out.push_back(to_double(Field{w, f.line}));
  return out;
}

void reject_unknown(const Section& s, std::initializer_list<std::string_view> known) {
  for (const auto& [key, field] : s.fields) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(field.line, "unknown key '" + key + "' in [" + s.name + "]");
    }
  }
}

Direction to_direction(const Field& f) {
  if (f.value == "rx") return Direction::Rx;
  if (f.value == "tx") return Direction::Tx;
  if (f.value == "both") return Direction::Both;
  fail(f.line, "direction must be rx, tx or both");
}

AnomalyKind to_kind(const Field& f) {
  if (f.value == "spike") return AnomalyKind::Spike;
  if (f.value == "dropout") return AnomalyKind::Dropout;
  if (f.value == "drift") return AnomalyKind::Drift;
  fail(f.line, "anomaly kind must be spike, dropout or drift");
}

template <typename Fn>
void checked(std::size_t line, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(line, e.what());
  }
}

}  // namespace

std::vector<PortKey> Scenario::server_ports() const {
  std::vector<PortKey> out;
  for (const auto& sw : switches) {
    if (!sw.server_ports.empty()) {
      for (const auto p : sw.server_ports) out.push_back(PortKey{sw.id, p});
    }
  }
  if (!out.empty()) return out;
  for (const auto& sw : switches) {
    for (const auto& p : sw.ports) out.push_back(PortKey{sw.id, p.id});
  }
  return out;
}

std::vector<SwitchSim> Scenario::build(std::uint64_t seed_value) const {
  std::vector<SwitchSim> sims;
  sims.reserve(switches.size());
  for (const auto& sw : switches) sims.emplace_back(sw, seed_value);
  return sims;
}

Scenario parse_scenario(std::string_view text) {
  Section globals{"global", 1, {}};
  std::vector<Section> sections;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name != "switch" && name != "port" && name != "anomaly" && name != "fault") {
        fail(line_no, "unknown section [" + std::string(name) + "]");
      }
      sections.push_back(Section{std::string(name), line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for '" + std::string(key) + "'");
    Section& target = sections.empty() ? globals : sections.back();
    target.fields.emplace(std::string(key), Field{value, line_no});
  }

  Scenario scenario;
  reject_unknown(globals, {"name", "duration", "interval", "seed"});
  if (globals.has("name")) scenario.name = std::string(globals.required("name").value);
  if (globals.has("duration")) scenario.duration = to_double(globals.required("duration"));
  if (globals.has("interval")) scenario.interval = to_double(globals.required("interval"));
  if (globals.has("seed")) scenario.seed = to_uint(globals.required("seed"));
  if (!(scenario.duration >= 0.0)) fail(globals.required("duration").line, "duration must be >= 0");
  if (!(scenario.interval > 0.0)) fail(globals.required("interval").line, "interval must be > 0");

  auto find_switch = [&](SwitchId id, std::size_t line) -> SwitchConfig& {
    for (auto& sw : scenario.switches) {
      if (sw.id == id) return sw;
    }
    fail(line, "switch " + std::to_string(id) + " is not declared");
  };

  for (const auto& s : sections) {
    if (s.name != "switch") continue;
    reject_unknown(s, {"id", "server_ports"});
    SwitchConfig sw;
    sw.id = to_id(s.required("id"));
    for (const auto& other : scenario.switches) {
      if (other.id == sw.id) fail(s.line, "switch " + std::to_string(sw.id) + " declared twice");
    }
    if (s.has("server_ports")) {
      for (const auto p : to_uint_list(s.required("server_ports"))) {
        sw.server_ports.push_back(static_cast<PortId>(p));
      }
    }
    scenario.switches.push_back(std::move(sw));
  }

  for (const auto& s : sections) {
    if (s.name != "port") continue;
    reject_unknown(s, {"switch", "id", "rx_rate", "tx_rate", "rate", "jitter", "packet_size",
                       "error_rate", "burst"});
    auto& sw = find_switch(to_id(s.required("switch")), s.required("switch").line);
    PortConfig port;
    port.id = to_id(s.required("id"));
    for (const auto& other : sw.ports) {
      if (other.id == port.id) fail(s.line, "port " + std::to_string(port.id) + " declared twice");
    }
    auto& prof = port.profile;
    if (s.has("rate")) prof.rx_rate = prof.tx_rate = to_double(s.required("rate"));
    if (s.has("rx_rate")) prof.rx_rate = to_double(s.required("rx_rate"));
    if (s.has("tx_rate")) prof.tx_rate = to_double(s.required("tx_rate"));
    if (!s.has("rate") && !(s.has("rx_rate") && s.has("tx_rate"))) {
      fail(s.line, "[port] needs 'rate' or both 'rx_rate' and 'tx_rate'");
    }
    if (s.has("jitter")) prof.jitter = to_double(s.required("jitter"));
    if (s.has("packet_size")) prof.packet_size = to_double(s.required("packet_size"));
    if (s.has("error_rate")) prof.error_rate = to_double(s.required("error_rate"));
    for (const auto& f : s.all("burst")) {
      const auto v = to_double_list(f);
      if (v.size() != 3) fail(f.line, "burst takes 't_start duration multiplier'");
      prof.bursts.push_back(Burst{v[0], v[1], v[2]});
    }
    checked(s.line, [&] { validate(prof); });
    sw.ports.push_back(std::move(port));
  }

  for (const auto& s : sections) {
    if (s.name == "anomaly") {
      reject_unknown(s, {"switch", "port", "kind", "direction", "t0", "duration", "magnitude"});
      auto& sw = find_switch(to_id(s.required("switch")), s.required("switch").line);
      AnomalyScenario a;
      a.kind = to_kind(s.required("kind"));
      a.port = to_id(s.required("port"));
      if (s.has("direction")) a.direction = to_direction(s.required("direction"));
      a.t0 = to_double(s.required("t0"));
      a.duration = to_double(s.required("duration"));
      a.magnitude = to_double(s.required("magnitude"));
      checked(s.line, [&] { validate(a); });
      if (std::none_of(sw.ports.begin(), sw.ports.end(),
                       [&](const PortConfig& p) { return p.id == a.port; })) {
        fail(s.required("port").line, "port " + std::to_string(a.port) +
                                          " is not declared on switch " + std::to_string(sw.id));
      }
      sw.anomalies.push_back(a);
    } else if (s.name == "fault") {
      reject_unknown(s, {"switch", "silent_ticks", "mismatched_ticks"});
      auto& sw = find_switch(to_id(s.required("switch")), s.required("switch").line);
      if (s.has("silent_ticks")) {
        auto t = to_uint_list(s.required("silent_ticks"));
        sw.faults.silent_ticks.insert(sw.faults.silent_ticks.end(), t.begin(), t.end());
      }
      if (s.has("mismatched_ticks")) {
        auto t = to_uint_list(s.required("mismatched_ticks"));
        sw.faults.mismatched_ticks.insert(sw.faults.mismatched_ticks.end(), t.begin(), t.end());
      }
    }
  }

  for (const auto& sw : scenario.switches) {
    for (const auto p : sw.server_ports) {
      if (std::none_of(sw.ports.begin(), sw.ports.end(),
                       [&](const PortConfig& c) { return c.id == p; })) {
        throw Error(ErrorKind::Parse, "server port " + std::to_string(p) +
                                          " is not declared on switch " + std::to_string(sw.id));
      }
    }
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace wavereg
