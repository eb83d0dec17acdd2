// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_SCENARIO_HPP
#define WAVEREG_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavereg/telemetry.hpp"

namespace wavereg {

/// Declarative simulation setup. See docs/scenario-format.md for the file
/// syntax.
struct Scenario {
  std::string name;
  double duration = 0.0;
  double interval = 10.0;
  std::optional<std::uint64_t> seed;
  std::vector<SwitchConfig> switches;

  /// Declared server ports, or every port when none are declared.
  std::vector<PortKey> server_ports() const;

  std::vector<SwitchSim> build(std::uint64_t seed) const;
};

/// Throws Error(Parse) with the offending line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace wavereg

#endif  // WAVEREG_SCENARIO_HPP
