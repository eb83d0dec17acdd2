// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_PIPELINE_HPP
#define WAVEREG_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavereg/detector.hpp"
#include "wavereg/metrics.hpp"
#include "wavereg/packet.hpp"
#include "wavereg/record_io.hpp"
#include "wavereg/scenario.hpp"
#include "wavereg/telemetry.hpp"

namespace wavereg {

/// Per-interval deltas of a polled counter. A delta exists only between
/// snapshots of consecutive ticks, so timeouts leave holes rather than
/// merged intervals.
struct DeltaSeries {
  std::vector<double> values;
  std::vector<std::uint64_t> end_ticks;  // tick closing each interval
};

DeltaSeries delta_series(std::span<const std::uint64_t> ticks,
                         std::span<const std::uint64_t> counters);
DeltaSeries delta_series(const CounterCsv& csv);

struct Window {
  std::size_t index = 0;
  std::size_t first_sample = 0;
  std::uint64_t first_tick = 0;
  std::span<const double> samples;
};

struct Windowing {
  std::vector<Window> windows;
  std::size_t dropped = 0;  // samples not covered by any window
};

/// Non-overlapping windows of `size` samples that do not straddle a hole.
/// `size` must be a power of two >= 2.
Windowing make_windows(const DeltaSeries& series, std::size_t size);

enum class Execution { Serial, Parallel };

/// Reduces every window; output order follows window index either way.
std::vector<ReducedWindow> reduce_windows(std::span<const Window> windows,
                                          const FilterPair& filters, const ReductionPolicy& policy,
                                          Execution execution = Execution::Parallel);

/// One feature of a comparison: the original deltas and their reduced file.
struct FeatureInput {
  std::string name;
  DeltaSeries original;
  ReducedFile reduced;
};

struct CompareOptions {
  std::size_t train = 0;  // training prefix in samples; 0 picks half the samples
  double quantile = 0.01;
  std::optional<GaussianModel> model;  // used as-is when set
};

struct ComparisonResult {
  ComparisonReport report;
  GaussianModel model;
  FeatureTable original;
  FeatureTable synthesized;
  AnomalyReport original_detection;
  AnomalyReport synthesized_detection;
};

/// Synthesizes every reduced window, runs the detector with one model and
/// one threshold on both series, and scores the agreement. Throws
/// Error(Alignment) when reduced windows do not line up with the originals
/// or with each other across features.
ComparisonResult compare(std::span<const FeatureInput> features, const CompareOptions& options);

/// Everything the pipeline needs to turn a scenario into a comparison.
struct PipelineOptions {
  std::string family = "db2";
  std::size_t depth = 1;
  double min_energy_ratio = 0.0;
  std::size_t window = 256;
  std::size_t train = 0;
  double quantile = 0.01;
  std::vector<Counter> features = {Counter::RxBytes, Counter::TxBytes};
};

struct PortEvaluation {
  PortKey key;
  std::size_t windows = 0;
  std::size_t dropped = 0;
  ComparisonResult result;
};

/// In-process simulate -> window -> reduce -> synthesize -> detect ->
/// compare over the server ports of `store`.
std::vector<PortEvaluation> evaluate_store(const RegisterStore& store,
                                           std::span<const PortKey> ports,
                                           const PipelineOptions& options);

}  // namespace wavereg

#endif  // WAVEREG_PIPELINE_HPP
