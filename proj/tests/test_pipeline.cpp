// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wavereg/error.hpp"
#include "wavereg/kernels.hpp"
#include "wavereg/metrics.hpp"
#include "wavereg/pipeline.hpp"

using namespace wavereg;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Data;
}

DeltaSeries contiguous(std::vector<double> values, std::uint64_t first_tick = 2) {
  DeltaSeries s;
  for (std::size_t k = 0; k < values.size(); ++k) s.end_ticks.push_back(first_tick + k);
  s.values = std::move(values);
  return s;
}

FeatureInput reduce_feature(const std::string& name, DeltaSeries series, std::size_t window,
                            const std::string& family, std::size_t depth) {
  FeatureInput input;
  input.name = name;
  input.original = std::move(series);
  const auto w = make_windows(input.original, window);
  input.reduced.source = name;
  input.reduced.window_size = window;
  input.reduced.windows = reduce_windows(w.windows, make_filter_pair(family), {depth, 0.0});
  return input;
}

}  // namespace

TEST_CASE("metric examples") {
  const std::vector<double> x = {1, -2, 3, 4};
  CHECK(rmse(x, x) == 0.0);
  const std::vector<double> half = {0.5, -1, 1.5, 2};
  CHECK(prd(x, half) == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(rmse(std::vector<double>{0, 0}, std::vector<double>{3, 4}) ==
        doctest::Approx(std::sqrt(12.5)));
  const std::vector<std::size_t> a = {1, 2};
  const std::vector<std::size_t> b = {2, 3};
  CHECK(jaccard(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard(std::vector<std::size_t>{}, std::vector<std::size_t>{}) == 1.0);
  CHECK(intersection_size(a, b) == 1);
}

TEST_CASE("metric errors") {
  const std::vector<double> zeros(4, 0.0);
  const std::vector<double> ones(4, 1.0);
  const std::vector<double> three(3, 1.0);
  CHECK(kind_of([&] { (void)prd(zeros, ones); }) == ErrorKind::UndefinedMetric);
  CHECK(kind_of([&] { (void)rmse(ones, three); }) == ErrorKind::Length);
  CHECK(kind_of([] { (void)rmse(std::vector<double>{}, std::vector<double>{}); }) ==
        ErrorKind::UndefinedMetric);
}

TEST_CASE("score_flags fills the agreement fields") {
  ComparisonReport r;
  score_flags(r, {1, 2, 3, 4}, {3, 4, 5});
  CHECK(r.jaccard == doctest::Approx(2.0 / 5.0));
  CHECK(r.preserved_recall == doctest::Approx(0.5));
  CHECK(r.preserved_precision == doctest::Approx(2.0 / 3.0));
  ComparisonReport empty;
  score_flags(empty, {}, {});
  CHECK(empty.jaccard == 1.0);
  CHECK(empty.preserved_recall == 1.0);
  CHECK(empty.preserved_precision == 1.0);
}

TEST_CASE("delta series skips intervals across holes") {
  const std::vector<std::uint64_t> ticks = {1, 2, 3, 5, 6};
  const std::vector<std::uint64_t> values = {10, 30, 60, 100, 150};
  const auto s = delta_series(ticks, values);
  CHECK(s.values == std::vector<double>{20, 30, 50});
  CHECK(s.end_ticks == std::vector<std::uint64_t>{2, 3, 6});
  const std::vector<std::uint64_t> down = {10, 5, 6, 7, 8};
  CHECK(kind_of([&] { (void)delta_series(ticks, down); }) == ErrorKind::Monotonicity);
}

TEST_CASE("300 samples at window 256 give one window and 44 dropped") {
  const auto s = contiguous(std::vector<double>(300, 1.0));
  const auto w = make_windows(s, 256);
  REQUIRE(w.windows.size() == 1);
  CHECK(w.dropped == 44);
  CHECK(w.windows[0].first_sample == 0);
  CHECK(w.windows[0].first_tick == 2);
  CHECK(w.windows[0].samples.size() == 256);
}

TEST_CASE("windows never straddle a hole") {
  auto s = contiguous(std::vector<double>(40, 1.0));
  // a hole between samples 9 and 10
  for (std::size_t k = 10; k < s.end_ticks.size(); ++k) s.end_ticks[k] += 3;
  const auto w = make_windows(s, 8);
  REQUIRE(w.windows.size() == 4);
  CHECK(w.windows[0].first_sample == 0);
  CHECK(w.windows[1].first_sample == 10);
  CHECK(w.windows[2].first_sample == 18);
  CHECK(w.windows[3].first_sample == 26);
  CHECK(w.dropped == 2 + 6);
  for (const auto& win : w.windows) {
    const auto first = win.first_sample;
    CHECK(s.end_ticks[first + 7] == s.end_ticks[first] + 7);
  }
}

TEST_CASE("window size must be a power of two") {
  const auto s = contiguous(std::vector<double>(64, 1.0));
  CHECK(kind_of([&] { (void)make_windows(s, 48); }) == ErrorKind::Length);
  CHECK(kind_of([&] { (void)make_windows(s, 1); }) == ErrorKind::Length);
}

TEST_CASE("depth 9 on window 256 is a policy error") {
  const auto s = contiguous(std::vector<double>(256, 1.0));
  const auto w = make_windows(s, 256);
  CHECK(kind_of([&] { (void)reduce_windows(w.windows, make_filter_pair("haar"), {9, 0.0}); }) ==
        ErrorKind::Policy);
}

TEST_CASE("serial and parallel batch reduction agree exactly") {
  std::mt19937_64 rng(1);
  const auto s = contiguous(oracle::random_walk(rng, 64 * 256, 1e5, 100.0));
  const auto w = make_windows(s, 256);
  const auto p = make_filter_pair("db2");
  const auto serial = reduce_windows(w.windows, p, {2, 0.0}, Execution::Serial);
  const auto parallel = reduce_windows(w.windows, p, {2, 0.0}, Execution::Parallel);
  REQUIRE(serial.size() == 64);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(parallel[i].window == i);
    CHECK(parallel[i].reduced.coeffs == serial[i].reduced.coeffs);
    CHECK(parallel[i].reduced.path == serial[i].reduced.path);
  }
}

TEST_CASE("lossless comparison has zero rmse and full agreement") {
  // a constant register keeps everything on the LP chain
  const auto input = reduce_feature("x", contiguous(std::vector<double>(512, 7.0)), 256, "haar", 8);
  const std::vector<FeatureInput> features = {input};
  const auto result = compare(features, {});
  CHECK(result.report.rmse < 1e-12);
  CHECK(result.report.discarded_energy < 1e-18);
  CHECK(result.report.jaccard == 1.0);
  CHECK(result.report.compression_ratio == doctest::Approx(1.0 - 1.0 / 256.0));
}

TEST_CASE("white-noise comparison meets the orthonormality identity") {
  std::mt19937_64 rng(2);
  for (const char* family : {"haar", "db2", "db4"}) {
    auto noise = oracle::random_signal(rng, 256 * 4, 50.0);
    for (double& v : noise) v += 1000.0;
    const auto input = reduce_feature("x", contiguous(noise), 256, family, 1);
    const std::vector<FeatureInput> features = {input};
    const auto result = compare(features, {});
    const double n = static_cast<double>(result.report.samples);
    CHECK(result.report.samples == 1024);
    CHECK(std::abs(result.report.rmse * result.report.rmse * n - result.report.discarded_energy) <=
          1e-9 * result.report.discarded_energy);
    CHECK(std::abs(result.report.error_energy - result.report.discarded_energy) <=
          1e-9 * result.report.discarded_energy);
    CHECK(result.report.compression_ratio == 0.5);
  }
}

TEST_CASE("compare uses one model for both series") {
  std::mt19937_64 rng(3);
  auto rx = oracle::random_signal(rng, 512, 10.0);
  auto tx = oracle::random_signal(rng, 512, 100.0);
  for (double& v : rx) v += 1000.0;
  for (double& v : tx) v += 20000.0;
  for (std::size_t k = 300; k < 310; ++k) tx[k] *= 3.0;
  const std::vector<FeatureInput> features = {
      reduce_feature("rx_bytes", contiguous(rx), 256, "db2", 1),
      reduce_feature("tx_bytes", contiguous(tx), 256, "db2", 1)};
  const auto result = compare(features, {0, 0.01, std::nullopt});
  CHECK(result.model.training_window == "samples[0,256)");
  CHECK(result.original_detection.epsilon == result.model.epsilon);
  CHECK(result.synthesized_detection.epsilon == result.model.epsilon);
  for (std::size_t k = 300; k < 310; ++k) {
    CHECK(result.original_detection.flags[k]);
    CHECK(result.synthesized_detection.flags[k]);
  }
  const auto again =
      flags_from_probabilities(result.synthesized_detection.probabilities, result.model.epsilon);
  CHECK(again.flags == result.synthesized_detection.flags);

  // a supplied model is used as-is
  auto fixed = result.model;
  fixed.epsilon = 0.0;
  const auto none = compare(features, {0, 0.01, fixed});
  CHECK(none.report.flags_original.empty());
  CHECK(none.report.flags_synthesized.empty());
}

TEST_CASE("compare rejects misaligned inputs") {
  std::mt19937_64 rng(4);
  const auto base = oracle::random_signal(rng, 512, 1.0);
  const auto a = reduce_feature("a", contiguous(base), 256, "db2", 1);

  auto fewer = reduce_feature("b", contiguous(base), 256, "db2", 1);
  fewer.reduced.windows.pop_back();
  CHECK(kind_of([&] { (void)compare(std::vector<FeatureInput>{a, fewer}, {}); }) ==
        ErrorKind::Alignment);

  auto shifted = reduce_feature("b", contiguous(base), 256, "db2", 1);
  shifted.reduced.windows[1].first_sample += 1;
  CHECK(kind_of([&] { (void)compare(std::vector<FeatureInput>{a, shifted}, {}); }) ==
        ErrorKind::Alignment);

  auto short_original = a;
  short_original.original.values.resize(300);
  short_original.original.end_ticks.resize(300);
  CHECK(kind_of([&] { (void)compare(std::vector<FeatureInput>{short_original}, {}); }) ==
        ErrorKind::Alignment);

  auto other_ticks = a;
  for (auto& t : other_ticks.original.end_ticks) t += 100;
  CHECK(kind_of([&] { (void)compare(std::vector<FeatureInput>{other_ticks}, {}); }) ==
        ErrorKind::Alignment);

  CHECK(kind_of([] { (void)compare(std::vector<FeatureInput>{}, {}); }) ==
        ErrorKind::InsufficientData);
}

TEST_CASE("evaluate_store runs the in-process pipeline") {
  SwitchConfig sw;
  sw.id = 1;
  PortConfig port;
  port.id = 1;
  port.profile.rx_rate = 1e4;
  port.profile.tx_rate = 1e5;
  port.profile.jitter = 0.05;
  sw.ports.push_back(port);
  sw.anomalies.push_back({AnomalyKind::Spike, 1, Direction::Both, 2000, 60, 3.0});
  std::vector<SwitchSim> sims;
  sims.emplace_back(sw, 11);
  const auto store = poll(sims, {10.0, 2570.0});
  PipelineOptions options;
  options.window = 128;
  const std::vector<PortKey> ports = {{1, 1}};
  const auto evals = evaluate_store(store, ports, options);
  REQUIRE(evals.size() == 1);
  CHECK(evals[0].windows == 2);
  CHECK(evals[0].dropped == 0);
  const auto& report = evals[0].result.report;
  CHECK(report.samples == 256);
  CHECK(report.compression_ratio == 0.5);
  CHECK(std::abs(report.error_energy - report.discarded_energy) <= 1e-9 * report.discarded_energy);
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  std::mt19937_64 rng(5);
  const auto taps = make_filter_pair("db4");
  for (const std::size_t n : {16u, 1024u, 8192u, 65536u}) {
    CAPTURE(n);
    const auto x = oracle::random_signal(rng, n, 1e3);
    std::vector<double> a(n / 2);
    std::vector<double> b(n / 2);
    kernels::serial::convolve_downsample(x, taps.lp, a);
    kernels::parallel::convolve_downsample(x, taps.lp, b);
    CHECK(a == b);

    std::vector<double> up_a(n, 0.0);
    std::vector<double> up_b(n, 0.0);
    kernels::serial::upsample_filter_add(a, taps.lp_syn, up_a);
    kernels::parallel::upsample_filter_add(a, taps.lp_syn, up_b);
    CHECK(up_a == up_b);

    const std::vector<std::vector<double>> columns = {x, oracle::random_signal(rng, n, 3.0)};
    const std::vector<double> mu = {1.0, -2.0};
    const std::vector<double> sigma2 = {1e6, 9.0};
    std::vector<double> la(n);
    std::vector<double> lb(n);
    kernels::serial::log_density(columns, mu, sigma2, la);
    kernels::parallel::log_density(columns, mu, sigma2, lb);
    CHECK(la == lb);
  }
}
