// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/packet.hpp"

#include <bit>

#include "wavereg/error.hpp"

namespace wavereg {

std::string path_to_string(const BranchPath& path) {
  std::string text;
  text.reserve(path.size());
  for (const Branch b : path) text.push_back(static_cast<char>(b));
  return text;
}

BranchPath path_from_string(std::string_view text) {
  BranchPath path;
  path.reserve(text.size());
  for (const char c : text) {
    if (c == 'L') {
      path.push_back(Branch::LP);
    } else if (c == 'H') {
      path.push_back(Branch::HP);
    } else {
      throw Error(ErrorKind::Parse, "path '" + std::string(text) + "' contains '" +
                                        std::string(1, c) + "', expected only L or H");
    }
  }
  return path;
}

PacketNode make_root(std::span<const double> signal) {
  PacketNode root;
  root.coeffs.values.assign(signal.begin(), signal.end());
  root.energy = energy(signal);
  return root;
}

std::pair<PacketNode, PacketNode> split(const PacketNode& node, const FilterPair& filters) {
  auto bands = analysis_step(node.coeffs.values, filters);

  PacketNode low;
  low.path = node.path;
  low.path.push_back(Branch::LP);
  low.energy = energy(bands.approx.values);
  low.coeffs = std::move(bands.approx);

  PacketNode high;
  high.path = node.path;
  high.path.push_back(Branch::HP);
  high.energy = energy(bands.detail.values);
  high.coeffs = std::move(bands.detail);

  return {std::move(low), std::move(high)};
}

ReducedRegister decompose(std::span<const double> signal, const FilterPair& filters,
                          const ReductionPolicy& policy) {
  const std::size_t n = signal.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw Error(ErrorKind::Length,
                "register length " + std::to_string(n) + " is not a power of two >= 2");
  }
  const auto levels = static_cast<std::size_t>(std::countr_zero(n));
  if (policy.max_depth < 1 || policy.max_depth > levels) {
    throw Error(ErrorKind::Policy, "max depth " + std::to_string(policy.max_depth) +
                                       " outside [1, " + std::to_string(levels) +
                                       "] for a register of " + std::to_string(n) + " samples");
  }
  if (!(policy.min_energy_ratio >= 0.0 && policy.min_energy_ratio <= 1.0)) {
    throw Error(ErrorKind::Policy, "min energy ratio must lie in [0, 1]");
  }

  ReducedRegister reduced;
  reduced.original_length = n;
  reduced.family = filters.family;

  PacketNode current = make_root(signal);
  for (std::size_t depth = 0; depth < policy.max_depth; ++depth) {
    auto [low, high] = split(current, filters);
    const bool keep_low = low.energy >= high.energy;
    PacketNode& kept = keep_low ? low : high;
    const PacketNode& dropped = keep_low ? high : low;

    // A zero-energy parent loses nothing by descending.
    const double ratio = current.energy > 0.0 ? kept.energy / current.energy : 1.0;
    if (depth > 0 && ratio < policy.min_energy_ratio) break;

    reduced.sibling_energies.push_back({kept.energy, dropped.energy});
    current = std::move(kept);
  }

  reduced.path = std::move(current.path);
  reduced.coeffs = std::move(current.coeffs.values);
  return reduced;
}

std::vector<double> synthesize(const ReducedRegister& reduced, const FilterPair& filters) {
  if (filters.family != reduced.family) {
    throw Error(ErrorKind::Configuration, "record was reduced with '" + reduced.family +
                                              "' but synthesis was given '" + filters.family +
                                              "'");
  }
  const std::size_t depth = reduced.path.size();
  if (depth == 0 || depth >= 64 || (reduced.original_length >> depth) != reduced.coeffs.size() ||
      (reduced.coeffs.size() << depth) != reduced.original_length) {
    throw Error(ErrorKind::Length, "record holds " + std::to_string(reduced.coeffs.size()) +
                                       " coefficients, inconsistent with original length " +
                                       std::to_string(reduced.original_length) + " and path '" +
                                       path_to_string(reduced.path) + "'");
  }

  CoefficientBlock current{reduced.coeffs};
  for (auto it = reduced.path.rbegin(); it != reduced.path.rend(); ++it) {
    CoefficientBlock zeros{std::vector<double>(current.length(), 0.0)};
    current.values = (*it == Branch::LP) ? synthesis_step(current, zeros, filters)
                                         : synthesis_step(zeros, current, filters);
  }
  return std::move(current.values);
}

double compression_ratio(const ReducedRegister& reduced) {
  if (reduced.original_length == 0) return 0.0;
  return 1.0 - static_cast<double>(reduced.coeffs.size()) /
                   static_cast<double>(reduced.original_length);
}

}  // namespace wavereg
