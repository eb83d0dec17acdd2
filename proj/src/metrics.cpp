// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/metrics.hpp"

#include <cmath>
#include <string>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Length, "metric inputs differ in length (" + std::to_string(a.size()) +
                                       " vs " + std::to_string(b.size()) + ")");
  }
}

double squared_error(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

}  // namespace

double rmse(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  if (a.empty()) throw Error(ErrorKind::UndefinedMetric, "rmse of empty series");
  return std::sqrt(squared_error(a, b) / static_cast<double>(a.size()));
}

double prd(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  double ref = 0.0;
  for (const double v : a) ref += v * v;
  if (!(ref > 0.0)) throw Error(ErrorKind::UndefinedMetric, "prd against a zero-energy reference");
  return 100.0 * std::sqrt(squared_error(a, b) / ref);
}

std::size_t intersection_size(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double jaccard(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  const std::size_t common = intersection_size(a, b);
  const std::size_t total = a.size() + b.size() - common;
  return total == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(total);
}

void score_flags(ComparisonReport& report, std::vector<std::size_t> original,
                 std::vector<std::size_t> synthesized) {
  const std::size_t common = intersection_size(original, synthesized);
  report.jaccard = jaccard(original, synthesized);
  report.preserved_precision =
      synthesized.empty() ? 1.0
                          : static_cast<double>(common) / static_cast<double>(synthesized.size());
  report.preserved_recall =
      original.empty() ? 1.0 : static_cast<double>(common) / static_cast<double>(original.size());
  report.flags_original = std::move(original);
  report.flags_synthesized = std::move(synthesized);
}

}  // namespace wavereg
