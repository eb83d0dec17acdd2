// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

// Brute-force references used only by the tests. Nothing here calls into the
// filter-bank kernels.

#ifndef WAVEREG_TESTS_ORACLES_HPP
#define WAVEREG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Rows 0..N/2-1 hold the low-pass analysis functionals, rows N/2..N-1 the
// high-pass ones: row k has taps[i] at column (2k - i) mod N.
inline Matrix analysis_matrix(std::span<const double> lp, std::span<const double> hp,
                              std::size_t n) {
  Matrix w(n, std::vector<double>(n, 0.0));
  const auto m = static_cast<long>(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    for (std::size_t i = 0; i < lp.size(); ++i) {
      const long col = (((2 * static_cast<long>(k) - static_cast<long>(i)) % m) + m) % m;
      w[k][static_cast<std::size_t>(col)] += lp[i];
      w[n / 2 + k][static_cast<std::size_t>(col)] += hp[i];
    }
  }
  return w;
}

inline std::vector<double> apply(const Matrix& w, std::span<const double> x) {
  std::vector<double> y(w.size(), 0.0);
  for (std::size_t r = 0; r < w.size(); ++r) {
    long double acc = 0.0L;
    for (std::size_t c = 0; c < x.size(); ++c) acc += static_cast<long double>(w[r][c]) * x[c];
    y[r] = static_cast<double>(acc);
  }
  return y;
}

inline std::vector<double> apply_transpose(const Matrix& w, std::span<const double> y) {
  std::vector<double> x(w.front().size(), 0.0);
  for (std::size_t c = 0; c < x.size(); ++c) {
    long double acc = 0.0L;
    for (std::size_t r = 0; r < w.size(); ++r) acc += static_cast<long double>(w[r][c]) * y[r];
    x[c] = static_cast<double>(acc);
  }
  return x;
}

inline double sum_squares(std::span<const double> v) {
  long double acc = 0.0L;
  for (const double x : v) acc += static_cast<long double>(x) * x;
  return static_cast<double>(acc);
}

inline std::vector<double> random_signal(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n, double start,
                                       double step) {
  std::normal_distribution<double> d(0.0, step);
  std::vector<double> v(n);
  double level = start;
  for (auto& x : v) {
    level += d(rng);
    x = level;
  }
  return v;
}

// Two-pass population mean and variance in extended precision.
struct MeanVar {
  double mean;
  double var;
};

inline MeanVar two_pass(std::span<const double> v) {
  long double s = 0.0L;
  for (const double x : v) s += x;
  const long double mean = s / static_cast<long double>(v.size());
  long double ss = 0.0L;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(ss / static_cast<long double>(v.size()))};
}

// Sort everything, take element floor(q (n - 1)).
inline double sorted_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)))];
}

inline double gaussian_density(double x, double mu, double sigma2) {
  const double pi = 3.14159265358979323846;
  return std::exp(-(x - mu) * (x - mu) / (2.0 * sigma2)) / std::sqrt(2.0 * pi * sigma2);
}

}  // namespace oracle

#endif  // WAVEREG_TESTS_ORACLES_HPP
