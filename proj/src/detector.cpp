// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/detector.hpp"

#include <algorithm>
#include <cmath>

#include "wavereg/error.hpp"
#include "wavereg/kernels.hpp"

namespace wavereg {

namespace {

void check_shape(const FeatureTable& table) {
  for (const auto& column : table.columns) {
    if (column.size() != table.samples()) {
      throw Error(ErrorKind::Length, "feature columns differ in length");
    }
  }
}

void check_model(const GaussianModel& model, std::size_t features) {
  if (model.mu.size() != features || model.sigma2.size() != features) {
    throw Error(ErrorKind::Length, "model has " + std::to_string(model.mu.size()) +
                                       " features, samples have " + std::to_string(features));
  }
}

}  // namespace

FeatureTable FeatureTable::slice(std::size_t first, std::size_t count) const {
  FeatureTable out;
  out.names = names;
  for (const auto& column : columns) {
    const std::size_t begin = std::min(first, column.size());
    const std::size_t end = std::min(begin + count, column.size());
    out.columns.emplace_back(column.begin() + static_cast<std::ptrdiff_t>(begin),
                             column.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

FeatureTable to_table(std::span<const FeatureVector> samples) {
  FeatureTable table;
  table.names = {"rx_bytes", "tx_bytes"};
  table.columns.resize(2);
  table.columns[0].reserve(samples.size());
  table.columns[1].reserve(samples.size());
  for (const auto& s : samples) {
    table.columns[0].push_back(s.rx_bytes);
    table.columns[1].push_back(s.tx_bytes);
  }
  return table;
}

FeatureTable single_feature(std::string name, std::vector<double> values) {
  FeatureTable table;
  table.names.push_back(std::move(name));
  table.columns.push_back(std::move(values));
  return table;
}

std::vector<std::size_t> AnomalyReport::flagged_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k]) out.push_back(k);
  }
  return out;
}

double variance_floor(double mu, double sigma2) noexcept {
  return std::max(sigma2, 1e-12 * (1.0 + mu * mu));
}

GaussianFit fit(const FeatureTable& dataset) {
  check_shape(dataset);
  const std::size_t m = dataset.samples();
  if (dataset.features() == 0 || m < 2) {
    throw Error(ErrorKind::InsufficientData,
                "fitting needs at least 2 samples of at least one feature, got " +
                    std::to_string(m));
  }

  GaussianFit out;
  for (const auto& column : dataset.columns) {
    double sum = 0.0;
    for (const double v : column) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Data, "non-finite feature value");
      sum += v;
    }
    const double mu = sum / static_cast<double>(m);
    double ss = 0.0;
    for (const double v : column) ss += (v - mu) * (v - mu);
    out.mu.push_back(mu);
    out.sigma2.push_back(variance_floor(mu, ss / static_cast<double>(m)));
  }
  return out;
}

double log_probability(const GaussianModel& model, std::span<const double> x) {
  check_model(model, x.size());
  constexpr double kLog2Pi = 1.8378770664093454836;
  double acc = 0.0;
  for (std::size_t f = 0; f < x.size(); ++f) {
    const double d = x[f] - model.mu[f];
    acc += -0.5 * (kLog2Pi + std::log(model.sigma2[f])) - d * d / (2.0 * model.sigma2[f]);
  }
  return acc;
}

double probability(const GaussianModel& model, std::span<const double> x) {
  return std::exp(log_probability(model, x));
}

double probability(const GaussianModel& model, const FeatureVector& x) {
  const double row[] = {x.rx_bytes, x.tx_bytes};
  return probability(model, row);
}

std::vector<double> probabilities(const GaussianModel& model, const FeatureTable& samples) {
  check_shape(samples);
  check_model(model, samples.features());
  std::vector<double> out(samples.samples());
  kernels::parallel::log_density(samples.columns, model.mu, model.sigma2, out);
  for (double& v : out) v = std::exp(v);
  return out;
}

double select_threshold(std::span<const double> train_probabilities, double quantile) {
  if (train_probabilities.empty()) {
    throw Error(ErrorKind::InsufficientData, "threshold selection needs training probabilities");
  }
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw Error(ErrorKind::Data, "quantile must lie in (0, 1)");
  }
  std::vector<double> sorted(train_probabilities.begin(), train_probabilities.end());
  const auto rank = static_cast<std::size_t>(
      std::floor(quantile * static_cast<double>(sorted.size() - 1)));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank),
                   sorted.end());
  return sorted[rank];
}

GaussianModel train(const FeatureTable& training, double quantile, std::string training_window) {
  const GaussianFit params = fit(training);
  GaussianModel model;
  model.names = training.names;
  model.mu = params.mu;
  model.sigma2 = params.sigma2;
  model.quantile = quantile;
  model.training_window = std::move(training_window);
  model.epsilon = select_threshold(probabilities(model, training), quantile);
  return model;
}

AnomalyReport detect(const GaussianModel& model, const FeatureTable& samples) {
  return flags_from_probabilities(probabilities(model, samples), model.epsilon);
}

AnomalyReport flags_from_probabilities(std::vector<double> probabilities, double epsilon) {
  AnomalyReport report;
  report.epsilon = epsilon;
  report.flags.reserve(probabilities.size());
  for (const double p : probabilities) report.flags.push_back(p < epsilon);
  report.probabilities = std::move(probabilities);
  return report;
}

}  // namespace wavereg
