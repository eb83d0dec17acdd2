// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_PACKET_HPP
#define WAVEREG_PACKET_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavereg/wavelet.hpp"

namespace wavereg {

enum class Branch : char { LP = 'L', HP = 'H' };

using BranchPath = std::vector<Branch>;

/// "LLH" style rendering of a path, and the reverse. Throws Error(Parse) on
/// characters other than L and H.
std::string path_to_string(const BranchPath& path);
BranchPath path_from_string(std::string_view text);

/// Node of the packet tree: the subband reached by following `path` from the
/// root signal.
struct PacketNode {
  BranchPath path;
  CoefficientBlock coeffs;
  double energy = 0.0;
};

PacketNode make_root(std::span<const double> signal);

/// Both children of `node` (LP first).
std::pair<PacketNode, PacketNode> split(const PacketNode& node, const FilterPair& filters);

struct LevelEnergy {
  double kept = 0.0;
  double discarded = 0.0;
};

/// Descent stops after max_depth stages, or earlier once the winning child
/// keeps less than min_energy_ratio of its parent's energy. The first stage
/// always runs.
struct ReductionPolicy {
  std::size_t max_depth = 1;
  double min_energy_ratio = 0.0;
};

/// Compressed record: coefficients of the surviving node and how to find it.
struct ReducedRegister {
  std::size_t original_length = 0;
  std::string family;
  BranchPath path;
  std::vector<double> coeffs;
  std::vector<LevelEnergy> sibling_energies;  // one entry per path element
};

/// Energy-driven single-branch wavelet-packet descent. At every stage the
/// child with strictly greater energy is kept; ties keep LP.
ReducedRegister decompose(std::span<const double> signal, const FilterPair& filters,
                          const ReductionPolicy& policy);

/// Rebuilds an original_length signal, zero-filling every discarded sibling.
std::vector<double> synthesize(const ReducedRegister& reduced, const FilterPair& filters);

/// 1 - coeffs / original_length.
double compression_ratio(const ReducedRegister& reduced);

}  // namespace wavereg

#endif  // WAVEREG_PACKET_HPP
