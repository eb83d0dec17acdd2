// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/pipeline.hpp"

#include <bit>
#include <exception>
#include <map>

#include "wavereg/error.hpp"

namespace wavereg {

DeltaSeries delta_series(std::span<const std::uint64_t> ticks,
                         std::span<const std::uint64_t> counters) {
  if (ticks.size() != counters.size()) {
    throw Error(ErrorKind::Length, "tick and counter columns differ in length");
  }
  DeltaSeries out;
  for (std::size_t k = 0; k + 1 < counters.size(); ++k) {
    if (counters[k + 1] < counters[k]) {
      throw Error(ErrorKind::Monotonicity,
                  "counter decreased between ticks " + std::to_string(ticks[k]) + " and " +
                      std::to_string(ticks[k + 1]) + " (" + std::to_string(counters[k]) + " -> " +
                      std::to_string(counters[k + 1]) + ")");
    }
    if (ticks[k + 1] != ticks[k] + 1) continue;
    out.values.push_back(static_cast<double>(counters[k + 1] - counters[k]));
    out.end_ticks.push_back(ticks[k + 1]);
  }
  return out;
}

DeltaSeries delta_series(const CounterCsv& csv) { return delta_series(csv.ticks, csv.values); }

Windowing make_windows(const DeltaSeries& series, std::size_t size) {
  if (size < 2 || !std::has_single_bit(size)) {
    throw Error(ErrorKind::Length, "window size " + std::to_string(size) +
                                       " is not a power of two >= 2");
  }
  Windowing out;
  const std::size_t n = series.values.size();
  std::size_t start = 0;
  while (start + size <= n) {
    std::size_t hole = start;
    while (hole + 1 < start + size && series.end_ticks[hole + 1] == series.end_ticks[hole] + 1) {
      ++hole;
    }
    if (hole + 1 == start + size) {
      out.windows.push_back(Window{out.windows.size(), start, series.end_ticks[start],
                                   std::span<const double>(series.values).subspan(start, size)});
      start += size;
    } else {
      out.dropped += hole + 1 - start;
      start = hole + 1;
    }
  }
  out.dropped += n - start;
  return out;
}

std::vector<ReducedWindow> reduce_windows(std::span<const Window> windows,
                                          const FilterPair& filters, const ReductionPolicy& policy,
                                          Execution execution) {
  std::vector<ReducedWindow> out(windows.size());
  auto one = [&](std::size_t i) {
    const Window& w = windows[i];
    out[i] = ReducedWindow{w.index, w.first_sample, w.first_tick, policy,
                           decompose(w.samples, filters, policy)};
  };

  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < windows.size(); ++i) one(i);
    return out;
  }

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(windows.size());
#pragma omp parallel for schedule(static) if (count > 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      one(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(wavereg_reduce_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

const FilterPair& filters_for(std::map<std::string, FilterPair>& cache, const std::string& family) {
  auto it = cache.find(family);
  if (it == cache.end()) it = cache.emplace(family, make_filter_pair(family)).first;
  return it->second;
}

[[noreturn]] void misaligned(const std::string& feature, const ReducedWindow& w,
                             const std::string& why) {
  throw Error(ErrorKind::Alignment, "feature '" + feature + "', window " +
                                        std::to_string(w.window) + " (first sample " +
                                        std::to_string(w.first_sample) + "): " + why);
}

}  // namespace

ComparisonResult compare(std::span<const FeatureInput> features, const CompareOptions& options) {
  if (features.empty()) throw Error(ErrorKind::InsufficientData, "nothing to compare");

  const auto& reference = features.front().reduced.windows;
  ComparisonResult result;
  std::map<std::string, FilterPair> filter_cache;
  std::size_t kept_coeffs = 0;
  std::size_t covered = 0;

  for (const auto& feature : features) {
    const auto& windows = feature.reduced.windows;
    if (windows.size() != reference.size()) {
      throw Error(ErrorKind::Alignment, "feature '" + feature.name + "' has " +
                                            std::to_string(windows.size()) + " windows, '" +
                                            features.front().name + "' has " +
                                            std::to_string(reference.size()));
    }

    std::vector<double> original;
    std::vector<double> synthesized;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const auto& w = windows[i];
      const auto& r = w.reduced;
      const std::size_t len = r.original_length;
      if (w.first_sample != reference[i].first_sample ||
          len != reference[i].reduced.original_length || w.first_tick != reference[i].first_tick) {
        misaligned(feature.name, w, "does not line up with feature '" + features.front().name + "'");
      }
      const auto& series = feature.original;
      if (w.first_sample + len > series.values.size()) {
        misaligned(feature.name, w, "extends past the " + std::to_string(series.values.size()) +
                                        " original samples");
      }
      if (series.end_ticks[w.first_sample] != w.first_tick ||
          series.end_ticks[w.first_sample + len - 1] != w.first_tick + len - 1) {
        misaligned(feature.name, w, "ticks differ from the original series");
      }

      const auto block = std::span<const double>(series.values).subspan(w.first_sample, len);
      const auto rebuilt = synthesize(r, filters_for(filter_cache, r.family));
      for (std::size_t k = 0; k < len; ++k) {
        const double d = block[k] - rebuilt[k];
        result.report.error_energy += d * d;
      }
      for (const auto& e : r.sibling_energies) result.report.discarded_energy += e.discarded;
      kept_coeffs += r.coeffs.size();
      covered += len;
      original.insert(original.end(), block.begin(), block.end());
      synthesized.insert(synthesized.end(), rebuilt.begin(), rebuilt.end());
    }
    result.original.names.push_back(feature.name);
    result.original.columns.push_back(std::move(original));
    result.synthesized.names.push_back(feature.name);
    result.synthesized.columns.push_back(std::move(synthesized));
  }

  const std::size_t samples = result.original.samples();
  result.report.samples = samples;
  if (samples == 0) throw Error(ErrorKind::InsufficientData, "no complete windows to compare");

  std::vector<double> flat_original;
  std::vector<double> flat_synthesized;
  for (std::size_t f = 0; f < result.original.features(); ++f) {
    flat_original.insert(flat_original.end(), result.original.columns[f].begin(),
                         result.original.columns[f].end());
    flat_synthesized.insert(flat_synthesized.end(), result.synthesized.columns[f].begin(),
                            result.synthesized.columns[f].end());
  }
  result.report.compression_ratio =
      1.0 - static_cast<double>(kept_coeffs) / static_cast<double>(covered);
  result.report.rmse = rmse(flat_original, flat_synthesized);
  result.report.prd = prd(flat_original, flat_synthesized);

  if (options.model) {
    result.model = *options.model;
  } else {
    const std::size_t train = options.train == 0 ? samples / 2 : options.train;
    if (train > samples) {
      throw Error(ErrorKind::InsufficientData, "training prefix of " + std::to_string(train) +
                                                   " samples exceeds the " +
                                                   std::to_string(samples) + " available");
    }
    result.model = wavereg::train(result.original.slice(0, train), options.quantile,
                                  "samples[0," + std::to_string(train) + ")");
  }

  result.original_detection = detect(result.model, result.original);
  result.synthesized_detection = detect(result.model, result.synthesized);
  score_flags(result.report, result.original_detection.flagged_indices(),
              result.synthesized_detection.flagged_indices());
  return result;
}

std::vector<PortEvaluation> evaluate_store(const RegisterStore& store,
                                           std::span<const PortKey> ports,
                                           const PipelineOptions& options) {
  const FilterPair filters = make_filter_pair(options.family);
  const ReductionPolicy policy{options.depth, options.min_energy_ratio};

  std::vector<PortEvaluation> out;
  for (const auto& key : ports) {
    PortEvaluation eval;
    eval.key = key;
    std::vector<std::uint64_t> ticks;
    for (const auto& s : store.series(key)) ticks.push_back(s.tick);

    std::vector<FeatureInput> inputs;
    for (const Counter c : options.features) {
      FeatureInput input;
      input.name = std::string(counter_name(c));
      input.original = delta_series(ticks, counter_series(store, key, c));
      const Windowing windowing = make_windows(input.original, options.window);
      input.reduced.source = to_string(key) + "-" + input.name;
      input.reduced.window_size = options.window;
      input.reduced.windows = reduce_windows(windowing.windows, filters, policy);
      eval.windows = windowing.windows.size();
      eval.dropped = windowing.dropped;
      inputs.push_back(std::move(input));
    }
    eval.result = compare(inputs, CompareOptions{options.train, options.quantile, std::nullopt});
    out.push_back(std::move(eval));
  }
  return out;
}

}  // namespace wavereg
