// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_METRICS_HPP
#define WAVEREG_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace wavereg {

double rmse(std::span<const double> a, std::span<const double> b);

/// 100 * sqrt(sum (a - b)^2 / sum a^2); `a` is the reference.
double prd(std::span<const double> a, std::span<const double> b);

/// |A n B| / |A u B|, 1 when both are empty. Inputs are sorted index sets.
double jaccard(std::span<const std::size_t> a, std::span<const std::size_t> b);

std::size_t intersection_size(std::span<const std::size_t> a, std::span<const std::size_t> b);

struct ComparisonReport {
  double compression_ratio = 0.0;
  double rmse = 0.0;
  double prd = 0.0;
  double error_energy = 0.0;      // sum (original - synthesized)^2
  double discarded_energy = 0.0;  // sum of discarded sibling energies
  std::size_t samples = 0;
  std::vector<std::size_t> flags_original;
  std::vector<std::size_t> flags_synthesized;
  double jaccard = 1.0;
  double preserved_precision = 1.0;  // share of synthesized flags also raised on the original
  double preserved_recall = 1.0;     // share of original flags also raised on the synthesized
};

/// Fills the flag-derived fields of `report` from the two sorted flag sets.
void score_flags(ComparisonReport& report, std::vector<std::size_t> original,
                 std::vector<std::size_t> synthesized);

}  // namespace wavereg

#endif  // WAVEREG_METRICS_HPP
