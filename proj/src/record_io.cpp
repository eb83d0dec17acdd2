// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/record_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wavereg/error.hpp"

namespace wavereg {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kReducedMagic = "wavereg-reduced";
constexpr std::string_view kModelMagic = "wavereg-model";

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message);
}

std::uint64_t parse_uint(std::string_view text, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, "expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_double_at(std::string_view text, std::size_t line) {
  try {
    return parse_double(text);
  } catch (const Error&) {
    fail(line, "expected a number, got '" + std::string(text) + "'");
  }
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto b = s.find_first_not_of(" \t\r", pos);
    if (b == std::string_view::npos) break;
    auto e = s.find_first_of(" \t\r", b);
    if (e == std::string_view::npos) e = s.size();
    out.push_back(s.substr(b, e - b));
    pos = e;
  }
  return out;
}

// Line reader skipping blank and '#' lines, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      tokens = split_ws(buffer_);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

void expect_args(const std::vector<std::string_view>& tokens, std::size_t n, std::size_t line) {
  if (tokens.size() != n + 1) {
    fail(line, "'" + std::string(tokens.front()) + "' takes " + std::to_string(n) +
                   " value(s), got " + std::to_string(tokens.size() - 1));
  }
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  return in;
}

template <typename T, typename Fn>
T with_path(const fs::path& path, Fn&& fn) {
  auto in = open_input(path);
  try {
    return fn(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Parse, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::string counter_csv_name(const PortKey& key, Counter counter) {
  return to_string(key) + "-" + std::string(counter_name(counter)) + ".csv";
}

void write_counter_csv(std::ostream& out, const std::vector<Snapshot>& series, Counter counter) {
  out << "tick,timestamp_s,value\n";
  for (const auto& s : series) {
    out << s.tick << ',' << format_double(s.timestamp) << ',' << counter_value(s.counters, counter)
        << '\n';
  }
}

CounterCsv read_counter_csv(std::istream& in) {
  CounterCsv csv;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(1, "empty counter file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tick,timestamp_s,value") fail(1, "expected header 'tick,timestamp_s,value'");

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string_view row(line);
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      fail(line_no, "expected three comma-separated fields");
    }
    csv.ticks.push_back(parse_uint(row.substr(0, c1), line_no));
    csv.timestamps.push_back(parse_double_at(row.substr(c1 + 1, c2 - c1 - 1), line_no));
    csv.values.push_back(parse_uint(row.substr(c2 + 1), line_no));
    if (csv.ticks.size() > 1 && csv.ticks.back() <= csv.ticks[csv.ticks.size() - 2]) {
      fail(line_no, "ticks must increase");
    }
  }
  return csv;
}

CounterCsv read_counter_csv(const fs::path& path) {
  return with_path<CounterCsv>(path, [](std::istream& in) { return read_counter_csv(in); });
}

std::vector<fs::path> export_store(const RegisterStore& store, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto& key : store.keys()) {
    for (const Counter c : kAllCounters) {
      const auto path = dir / counter_csv_name(key, c);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorKind::Data, "cannot write " + path.string());
      write_counter_csv(out, store.series(key), c);
      written.push_back(path);
    }
  }
  std::sort(written.begin(), written.end());
  return written;
}

void write_series_csv(std::ostream& out, const SeriesCsv& series) {
  out << "sample,tick,value\n";
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    out << series.samples[k] << ',' << series.ticks[k] << ',' << format_double(series.values[k])
        << '\n';
  }
}

SeriesCsv read_series_csv(std::istream& in) {
  SeriesCsv csv;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) fail(1, "empty series file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "sample,tick,value") fail(1, "expected header 'sample,tick,value'");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string_view row(line);
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos) {
      fail(line_no, "expected three comma-separated fields");
    }
    csv.samples.push_back(parse_uint(row.substr(0, c1), line_no));
    csv.ticks.push_back(parse_uint(row.substr(c1 + 1, c2 - c1 - 1), line_no));
    csv.values.push_back(parse_double_at(row.substr(c2 + 1), line_no));
  }
  return csv;
}

SeriesCsv read_series_csv(const fs::path& path) {
  return with_path<SeriesCsv>(path, [](std::istream& in) { return read_series_csv(in); });
}

void write_reduced(std::ostream& out, const ReducedFile& file) {
  out << kReducedMagic << " 1\n";
  if (!file.source.empty()) out << "source " << file.source << '\n';
  out << "window_size " << file.window_size << '\n';
  out << "records " << file.windows.size() << '\n';
  for (const auto& w : file.windows) {
    const auto& r = w.reduced;
    out << "record\n";
    out << "window " << w.window << '\n';
    out << "first_sample " << w.first_sample << '\n';
    out << "first_tick " << w.first_tick << '\n';
    out << "family " << r.family << '\n';
    out << "original_length " << r.original_length << '\n';
    out << "max_depth " << w.policy.max_depth << '\n';
    out << "min_energy_ratio " << format_double(w.policy.min_energy_ratio) << '\n';
    out << "path " << path_to_string(r.path) << '\n';
    for (const auto& e : r.sibling_energies) {
      out << "energy " << format_double(e.kept) << ' ' << format_double(e.discarded) << '\n';
    }
    out << "coeffs " << r.coeffs.size() << '\n';
    for (const double c : r.coeffs) out << format_double(c) << '\n';
    out << "end\n";
  }
}

ReducedFile read_reduced(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string_view> t;
  if (!reader.next(t) || t.size() != 2 || t[0] != kReducedMagic) {
    fail(reader.line(), "not a reduced-register file (missing '" + std::string(kReducedMagic) +
                            " 1' header)");
  }
  if (t[1] != "1") fail(reader.line(), "unsupported format version " + std::string(t[1]));

  ReducedFile file;
  std::optional<std::uint64_t> declared;
  while (reader.next(t)) {
    const auto line = reader.line();
    if (t[0] == "source") {
      expect_args(t, 1, line);
      file.source = std::string(t[1]);
    } else if (t[0] == "window_size") {
      expect_args(t, 1, line);
      file.window_size = parse_uint(t[1], line);
    } else if (t[0] == "records") {
      expect_args(t, 1, line);
      declared = parse_uint(t[1], line);
    } else if (t[0] == "record") {
      ReducedWindow w;
      bool have_path = false;
      bool done = false;
      std::size_t record_line = line;
      while (!done && reader.next(t)) {
        const auto l = reader.line();
        if (t[0] == "window") {
          expect_args(t, 1, l);
          w.window = parse_uint(t[1], l);
        } else if (t[0] == "first_sample") {
          expect_args(t, 1, l);
          w.first_sample = parse_uint(t[1], l);
        } else if (t[0] == "first_tick") {
          expect_args(t, 1, l);
          w.first_tick = parse_uint(t[1], l);
        } else if (t[0] == "family") {
          expect_args(t, 1, l);
          w.reduced.family = std::string(t[1]);
        } else if (t[0] == "original_length") {
          expect_args(t, 1, l);
          w.reduced.original_length = parse_uint(t[1], l);
        } else if (t[0] == "max_depth") {
          expect_args(t, 1, l);
          w.policy.max_depth = parse_uint(t[1], l);
        } else if (t[0] == "min_energy_ratio") {
          expect_args(t, 1, l);
          w.policy.min_energy_ratio = parse_double_at(t[1], l);
        } else if (t[0] == "path") {
          expect_args(t, 1, l);
          try {
            w.reduced.path = path_from_string(t[1]);
          } catch (const Error& e) {
            fail(l, e.what());
          }
          have_path = true;
        } else if (t[0] == "energy") {
          expect_args(t, 2, l);
          w.reduced.sibling_energies.push_back(
              {parse_double_at(t[1], l), parse_double_at(t[2], l)});
        } else if (t[0] == "coeffs") {
          expect_args(t, 1, l);
          const auto n = parse_uint(t[1], l);
          w.reduced.coeffs.reserve(n);
          for (std::uint64_t i = 0; i < n; ++i) {
            if (!reader.next(t)) fail(reader.line(), "file ends inside a coefficient block");
            if (t.size() != 1) fail(reader.line(), "expected one coefficient per line");
            w.reduced.coeffs.push_back(parse_double_at(t[0], reader.line()));
          }
        } else if (t[0] == "end") {
          done = true;
        } else {
          fail(l, "unknown record field '" + std::string(t[0]) + "'");
        }
      }
      if (!done) fail(reader.line(), "record starting at line " + std::to_string(record_line) +
                                         " has no 'end'");
      if (!have_path || w.reduced.path.empty()) fail(record_line, "record has no path");
      if (w.reduced.family.empty()) fail(record_line, "record has no family");
      if (w.reduced.sibling_energies.size() != w.reduced.path.size()) {
        fail(record_line, "record needs one energy line per path element");
      }
      if (w.reduced.path.size() >= 64 ||
          (w.reduced.coeffs.size() << w.reduced.path.size()) != w.reduced.original_length) {
        fail(record_line, "coefficient count does not match original_length and path depth");
      }
      file.windows.push_back(std::move(w));
    } else {
      fail(line, "unknown field '" + std::string(t[0]) + "'");
    }
  }
  if (declared && *declared != file.windows.size()) {
    fail(reader.line(), "header declares " + std::to_string(*declared) + " records, found " +
                            std::to_string(file.windows.size()));
  }
  return file;
}

ReducedFile read_reduced(const fs::path& path) {
  return with_path<ReducedFile>(path, [](std::istream& in) { return read_reduced(in); });
}

void write_model(std::ostream& out, const GaussianModel& model) {
  out << kModelMagic << " 1\n";
  out << "training_window " << (model.training_window.empty() ? "-" : model.training_window)
      << '\n';
  out << "quantile " << format_double(model.quantile) << '\n';
  out << "epsilon " << format_double(model.epsilon) << '\n';
  for (std::size_t f = 0; f < model.mu.size(); ++f) {
    const std::string name = f < model.names.size() && !model.names[f].empty()
                                 ? model.names[f]
                                 : "feature" + std::to_string(f);
    out << "feature " << name << ' ' << format_double(model.mu[f]) << ' '
        << format_double(model.sigma2[f]) << '\n';
  }
}

GaussianModel read_model(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string_view> t;
  if (!reader.next(t) || t.size() != 2 || t[0] != kModelMagic || t[1] != "1") {
    fail(reader.line(), "not a model file (missing '" + std::string(kModelMagic) + " 1' header)");
  }
  GaussianModel model;
  bool have_epsilon = false;
  while (reader.next(t)) {
    const auto line = reader.line();
    if (t[0] == "training_window") {
      expect_args(t, 1, line);
      model.training_window = t[1] == "-" ? std::string() : std::string(t[1]);
    } else if (t[0] == "quantile") {
      expect_args(t, 1, line);
      model.quantile = parse_double_at(t[1], line);
    } else if (t[0] == "epsilon") {
      expect_args(t, 1, line);
      model.epsilon = parse_double_at(t[1], line);
      have_epsilon = true;
    } else if (t[0] == "feature") {
      expect_args(t, 3, line);
      model.names.emplace_back(t[1]);
      model.mu.push_back(parse_double_at(t[2], line));
      const double s2 = parse_double_at(t[3], line);
      if (!(s2 > 0.0)) fail(line, "feature variance must be positive");
      model.sigma2.push_back(s2);
    } else {
      fail(line, "unknown field '" + std::string(t[0]) + "'");
    }
  }
  if (!have_epsilon || !(model.epsilon > 0.0)) fail(reader.line(), "model needs a positive epsilon");
  if (model.mu.empty()) fail(reader.line(), "model has no features");
  return model;
}

GaussianModel read_model(const fs::path& path) {
  return with_path<GaussianModel>(path, [](std::istream& in) { return read_model(in); });
}

void write_series_dat(std::ostream& out, std::span<const double> values) {
  out << "# index value\n";
  for (std::size_t k = 0; k < values.size(); ++k) out << k << ' ' << format_double(values[k]) << '\n';
}

void write_points_dat(std::ostream& out, std::span<const double> values,
                      std::span<const std::size_t> indices) {
  out << "# index value\n";
  for (const auto k : indices) {
    if (k < values.size()) out << k << ' ' << format_double(values[k]) << '\n';
  }
}

}  // namespace wavereg
