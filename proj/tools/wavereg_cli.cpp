// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

// wavereg: simulate -> reduce -> synthesize -> detect -> compare.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wavereg/detector.hpp"
#include "wavereg/error.hpp"
#include "wavereg/packet.hpp"
#include "wavereg/pipeline.hpp"
#include "wavereg/record_io.hpp"
#include "wavereg/scenario.hpp"
#include "wavereg/telemetry.hpp"
#include "wavereg/wavelet.hpp"

namespace fs = std::filesystem;
using namespace wavereg;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string family = "db2";
  std::size_t depth = 1;
  std::size_t window = 256;
  std::optional<double> interval;
  double quantile = 0.01;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed for the simulator");
  cmd->add_option("--out", c.out, "Output file or directory")->required();
  cmd->add_option("--family", c.family, "Wavelet family (haar, db1..db6)")->capture_default_str();
  cmd->add_option("--depth", c.depth, "Filter-bank stages per window")->capture_default_str();
  cmd->add_option("--window", c.window, "Window size in samples (power of two)")
      ->capture_default_str();
  cmd->add_option("--interval", c.interval, "Polling interval in seconds (default 10)");
  cmd->add_option("--quantile", c.quantile, "Threshold quantile of training probabilities")
      ->capture_default_str();
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Data, "cannot write " + path.string());
  return out;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

// Counter CSVs become deltas; synthesized series CSVs are used as they are.
DeltaSeries load_register(const fs::path& path) {
  std::ifstream probe(path);
  if (!probe) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::string header;
  std::getline(probe, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header == "sample,tick,value") {
    const auto csv = read_series_csv(path);
    DeltaSeries series;
    series.values = csv.values;
    series.end_ticks = csv.ticks;
    return series;
  }
  return delta_series(read_counter_csv(path));
}

std::string feature_name(const fs::path& path) { return path.stem().string(); }

int run_simulate(const Common& c, const std::string& scenario_path) {
  Scenario scenario = load_scenario(scenario_path);
  if (c.interval) scenario.interval = *c.interval;
  const std::uint64_t seed = c.seed.value_or(scenario.seed.value_or(0));
  if (scenario.duration == 0.0) warn("scenario duration is 0; exporting empty series");

  auto switches = scenario.build(seed);
  const RegisterStore full = poll(switches, PollConfig{scenario.interval, scenario.duration});
  const auto ports = scenario.server_ports();
  const RegisterStore store = select_server_ports(full, ports);

  const auto files = export_store(store, c.out);
  if (store.gap_count() > 0) {
    auto log = open_output(fs::path(c.out) / "gaps.log");
    for (const auto& key : store.keys()) {
      for (const auto& g : store.gaps(key)) {
        log << to_string(key) << " tick " << g.tick << ' '
            << (g.reason == GapReason::Timeout ? "timeout" : "protocol") << ": " << g.message
            << '\n';
      }
    }
    warn(std::to_string(store.gap_count()) + " missing snapshots recorded in gaps.log");
  }
  std::size_t snapshots = 0;
  for (const auto& key : store.keys()) snapshots = std::max(snapshots, store.series(key).size());
  std::cout << "simulated '" << scenario.name << "' seed " << seed << ": " << ports.size()
            << " server port(s), " << snapshots << " snapshots per port, " << files.size()
            << " files in " << c.out << '\n';
  return 0;
}

int run_reduce(const Common& c, const std::string& input, double min_energy_ratio) {
  const FilterPair filters = make_filter_pair(c.family);
  const DeltaSeries series = load_register(input);
  const Windowing windowing = make_windows(series, c.window);
  if (windowing.dropped > 0) {
    warn(std::to_string(windowing.dropped) + " sample(s) outside complete " +
         std::to_string(c.window) + "-sample windows were dropped");
  }
  ReducedFile file;
  file.source = fs::path(input).filename().string();
  file.window_size = c.window;
  file.windows =
      reduce_windows(windowing.windows, filters, ReductionPolicy{c.depth, min_energy_ratio});

  auto out = open_output(c.out);
  write_reduced(out, file);
  std::size_t kept = 0;
  for (const auto& w : file.windows) kept += w.reduced.coeffs.size();
  std::cout << "reduced " << file.windows.size() << " window(s) of " << c.window << " samples to "
            << kept << " coefficients";
  if (!file.windows.empty()) {
    std::cout << " (compression " << compression_ratio(file.windows.front().reduced) << ", path "
              << path_to_string(file.windows.front().reduced.path) << " in window 0)";
  }
  std::cout << '\n';
  return 0;
}

int run_synthesize(const Common& c, const std::string& input, bool family_given) {
  const ReducedFile file = read_reduced(input);
  SeriesCsv series;
  for (const auto& w : file.windows) {
    if (family_given && w.reduced.family != c.family) {
      throw Error(ErrorKind::Configuration, "window " + std::to_string(w.window) + " was reduced with '" +
                                                w.reduced.family + "', not '" + c.family + "'");
    }
    const auto rebuilt = synthesize(w.reduced, make_filter_pair(w.reduced.family));
    for (std::size_t k = 0; k < rebuilt.size(); ++k) {
      series.samples.push_back(w.first_sample + k);
      series.ticks.push_back(w.first_tick + k);
      series.values.push_back(rebuilt[k]);
    }
  }
  auto out = open_output(c.out);
  write_series_csv(out, series);
  std::cout << "synthesized " << series.values.size() << " samples from " << file.windows.size()
            << " window(s)\n";
  return 0;
}

int run_detect(const Common& c, const std::vector<std::string>& inputs,
               const std::string& model_path, std::size_t train_samples) {
  FeatureTable table;
  for (const auto& input : inputs) {
    const DeltaSeries series = load_register(input);
    if (!table.columns.empty() && series.values.size() != table.samples()) {
      throw Error(ErrorKind::Alignment, input + " has " + std::to_string(series.values.size()) +
                                            " samples, expected " + std::to_string(table.samples()));
    }
    table.names.push_back(feature_name(input));
    table.columns.push_back(series.values);
  }

  GaussianModel model;
  if (!model_path.empty()) {
    model = read_model(model_path);
  } else {
    const std::size_t train_n = train_samples == 0 ? table.samples() / 2 : train_samples;
    if (train_n > table.samples()) {
      throw Error(ErrorKind::InsufficientData, "training prefix exceeds the available samples");
    }
    model = train(table.slice(0, train_n), c.quantile, "samples[0," + std::to_string(train_n) + ")");
  }
  const AnomalyReport report = detect(model, table);

  const fs::path dir(c.out);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "model.txt");
    write_model(out, model);
  }
  auto out = open_output(dir / "detections.csv");
  out << "sample,probability,flag\n";
  for (std::size_t k = 0; k < report.flags.size(); ++k) {
    out << k << ',' << format_double(report.probabilities[k]) << ',' << (report.flags[k] ? 1 : 0)
        << '\n';
  }
  std::cout << "flagged " << report.flagged_indices().size() << " of " << report.flags.size()
            << " samples (epsilon " << format_double(report.epsilon) << ")\n";
  return 0;
}

int run_compare(const Common& c, const std::vector<std::string>& originals,
                const std::vector<std::string>& reduced, const std::string& model_path,
                std::size_t train_samples) {
  if (originals.size() != reduced.size()) {
    throw Error(ErrorKind::Parse, "--original and --reduced must be given the same number of times");
  }
  std::vector<FeatureInput> inputs;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    FeatureInput in;
    in.name = feature_name(originals[i]);
    in.original = load_register(originals[i]);
    in.reduced = read_reduced(reduced[i]);
    inputs.push_back(std::move(in));
  }
  CompareOptions options;
  options.train = train_samples;
  options.quantile = c.quantile;
  if (!model_path.empty()) options.model = read_model(model_path);

  const ComparisonResult result = compare(inputs, options);
  const auto& r = result.report;

  const fs::path dir(c.out);
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "model.txt");
    write_model(out, result.model);
  }
  for (std::size_t f = 0; f < result.original.features(); ++f) {
    const auto& name = result.original.names[f];
    auto o = open_output(dir / (name + "-original.dat"));
    write_series_dat(o, result.original.columns[f]);
    auto s = open_output(dir / (name + "-synthesized.dat"));
    write_series_dat(s, result.synthesized.columns[f]);
    auto fo = open_output(dir / (name + "-flags-original.dat"));
    write_points_dat(fo, result.original.columns[f], r.flags_original);
    auto fs_ = open_output(dir / (name + "-flags-synthesized.dat"));
    write_points_dat(fs_, result.synthesized.columns[f], r.flags_synthesized);
  }
  {
    auto po = open_output(dir / "probabilities-original.dat");
    write_series_dat(po, result.original_detection.probabilities);
    auto ps = open_output(dir / "probabilities-synthesized.dat");
    write_series_dat(ps, result.synthesized_detection.probabilities);
  }

  nlohmann::ordered_json report;
  report["compression_ratio"] = r.compression_ratio;
  report["rmse"] = r.rmse;
  report["prd"] = r.prd;
  report["error_energy"] = r.error_energy;
  report["discarded_energy"] = r.discarded_energy;
  report["samples"] = r.samples;
  report["epsilon"] = result.model.epsilon;
  report["quantile"] = result.model.quantile;
  report["training_window"] = result.model.training_window;
  report["flags_original"] = r.flags_original;
  report["flags_synthesized"] = r.flags_synthesized;
  report["jaccard"] = r.jaccard;
  report["preserved_precision"] = r.preserved_precision;
  report["preserved_recall"] = r.preserved_recall;
  auto out = open_output(dir / "report.json");
  out << report.dump(2) << '\n';

  std::cout << "compression " << r.compression_ratio << ", rmse " << r.rmse << ", prd " << r.prd
            << "%, flags " << r.flags_original.size() << " original / "
            << r.flags_synthesized.size() << " synthesized, jaccard " << r.jaccard << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-packet reduction of SDN monitoring registers"};
  app.require_subcommand(1);

  Common common;

  std::string scenario_path;
  auto* simulate = app.add_subcommand("simulate", "Poll a simulated network and export counters");
  add_common(simulate, common);
  simulate->add_option("--scenario", scenario_path, "Scenario definition file")->required();

  std::string reduce_input;
  double min_energy_ratio = 0.0;
  auto* reduce = app.add_subcommand("reduce", "Reduce a counter register window by window");
  add_common(reduce, common);
  reduce->add_option("--input", reduce_input, "Counter CSV (tick,timestamp_s,value)")->required();
  reduce->add_option("--min-energy-ratio", min_energy_ratio,
                     "Stop descending when the kept child holds less than this energy share")
      ->capture_default_str();

  std::string synth_input;
  auto* synth = app.add_subcommand("synthesize", "Rebuild approximate registers from a reduced file");
  add_common(synth, common);
  synth->add_option("--input", synth_input, "Reduced register file")->required();

  std::vector<std::string> detect_inputs;
  std::string model_path;
  std::size_t train_samples = 0;
  auto* det = app.add_subcommand("detect", "Fit the Gaussian detector and flag atypical samples");
  add_common(det, common);
  det->add_option("--input", detect_inputs, "Counter or series CSV, one per feature")->required();
  det->add_option("--model", model_path, "Use a saved model instead of fitting");
  det->add_option("--train", train_samples, "Training prefix in samples (0: first half)")
      ->capture_default_str();

  std::vector<std::string> originals;
  std::vector<std::string> reduced_files;
  auto* cmp = app.add_subcommand("compare", "Detect on original and synthesized registers");
  add_common(cmp, common);
  cmp->add_option("--original", originals, "Original counter CSV, one per feature")->required();
  cmp->add_option("--reduced", reduced_files, "Reduced file matching each --original")->required();
  cmp->add_option("--model", model_path, "Use a saved model instead of fitting");
  cmp->add_option("--train", train_samples, "Training prefix in samples (0: first half)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(common, scenario_path);
    if (*reduce) return run_reduce(common, reduce_input, min_energy_ratio);
    if (*synth) return run_synthesize(common, synth_input, synth->count("--family") > 0);
    if (*det) return run_detect(common, detect_inputs, model_path, train_samples);
    if (*cmp) return run_compare(common, originals, reduced_files, model_path, train_samples);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
