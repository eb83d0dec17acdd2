// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_DETECTOR_HPP
#define WAVEREG_DETECTOR_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wavereg {

/// Received and transmitted bytes for one polling interval.
struct FeatureVector {
  double rx_bytes = 0.0;
  double tx_bytes = 0.0;
};

/// Column-major sample set: columns[f][k] is feature f of sample k.
struct FeatureTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t features() const noexcept { return columns.size(); }
  std::size_t samples() const noexcept { return columns.empty() ? 0 : columns.front().size(); }

  /// Rows [first, first + count) of every column.
  FeatureTable slice(std::size_t first, std::size_t count) const;
};

FeatureTable to_table(std::span<const FeatureVector> samples);

FeatureTable single_feature(std::string name, std::vector<double> values);

struct GaussianFit {
  std::vector<double> mu;
  std::vector<double> sigma2;
};

/// Independent univariate Gaussians per feature with threshold epsilon.
struct GaussianModel {
  std::vector<std::string> names;
  std::vector<double> mu;
  std::vector<double> sigma2;
  double epsilon = 0.0;
  double quantile = 0.0;
  std::string training_window;
};

struct AnomalyReport {
  std::vector<bool> flags;
  std::vector<double> probabilities;
  double epsilon = 0.0;

  std::vector<std::size_t> flagged_indices() const;
};

/// max(sigma2, 1e-12 * (1 + mu^2))
double variance_floor(double mu, double sigma2) noexcept;

/// Population mean and variance per feature (denominator m), variance floor
/// applied. Needs m >= 2 finite samples.
GaussianFit fit(const FeatureTable& dataset);

double log_probability(const GaussianModel& model, std::span<const double> x);
double probability(const GaussianModel& model, std::span<const double> x);
double probability(const GaussianModel& model, const FeatureVector& x);

/// Probabilities of every row of `samples`.
std::vector<double> probabilities(const GaussianModel& model, const FeatureTable& samples);

/// Lower-interpolated empirical quantile: sorted[floor(q * (n - 1))].
double select_threshold(std::span<const double> train_probabilities, double quantile = 0.01);

/// Fits on `training` and picks epsilon from its own probabilities.
GaussianModel train(const FeatureTable& training, double quantile = 0.01,
                    std::string training_window = {});

AnomalyReport detect(const GaussianModel& model, const FeatureTable& samples);

/// flags[k] = probabilities[k] < epsilon
AnomalyReport flags_from_probabilities(std::vector<double> probabilities, double epsilon);

}  // namespace wavereg

#endif  // WAVEREG_DETECTOR_HPP
