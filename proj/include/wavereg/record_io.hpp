// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_RECORD_IO_HPP
#define WAVEREG_RECORD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavereg/detector.hpp"
#include "wavereg/packet.hpp"
#include "wavereg/telemetry.hpp"

namespace wavereg {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
double parse_double(std::string_view text);

// ---- counter CSV: "tick,timestamp_s,value" ---------------------------------

struct CounterCsv {
  std::vector<std::uint64_t> ticks;
  std::vector<double> timestamps;
  std::vector<std::uint64_t> values;
};

std::string counter_csv_name(const PortKey& key, Counter counter);
void write_counter_csv(std::ostream& out, const std::vector<Snapshot>& series, Counter counter);
CounterCsv read_counter_csv(std::istream& in);
CounterCsv read_counter_csv(const std::filesystem::path& path);

/// One CSV per (key, counter) in `dir`; returns the files written, sorted.
std::vector<std::filesystem::path> export_store(const RegisterStore& store,
                                                const std::filesystem::path& dir);

// ---- value series CSV: "sample,tick,value" ------------------------------------

/// Real-valued series addressed by delta-sample index, e.g. a synthesized
/// register.
struct SeriesCsv {
  std::vector<std::size_t> samples;
  std::vector<std::uint64_t> ticks;
  std::vector<double> values;
};

void write_series_csv(std::ostream& out, const SeriesCsv& series);
SeriesCsv read_series_csv(std::istream& in);
SeriesCsv read_series_csv(const std::filesystem::path& path);

// ---- reduced register file --------------------------------------------------

/// One reduced window of a delta series.
struct ReducedWindow {
  std::size_t window = 0;        // index among the windows of the series
  std::size_t first_sample = 0;  // offset of the window in the delta series
  std::uint64_t first_tick = 0;  // tick closing the window's first interval
  ReductionPolicy policy;
  ReducedRegister reduced;
};

struct ReducedFile {
  std::string source;
  std::size_t window_size = 0;
  std::vector<ReducedWindow> windows;
};

void write_reduced(std::ostream& out, const ReducedFile& file);
ReducedFile read_reduced(std::istream& in);
ReducedFile read_reduced(const std::filesystem::path& path);

// ---- detector model ----------------------------------------------------------

void write_model(std::ostream& out, const GaussianModel& model);
GaussianModel read_model(std::istream& in);
GaussianModel read_model(const std::filesystem::path& path);

// ---- plot data ----------------------------------------------------------------

/// "# index value" header followed by one "k v" line per sample.
void write_series_dat(std::ostream& out, std::span<const double> values);
/// Only the listed indices, with their values.
void write_points_dat(std::ostream& out, std::span<const double> values,
                      std::span<const std::size_t> indices);

}  // namespace wavereg

#endif  // WAVEREG_RECORD_IO_HPP
