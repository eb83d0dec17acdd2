// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/kernels.hpp"

#include <cmath>

namespace wavereg::kernels {

namespace {

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

inline double downsample_at(std::span<const double> x, std::span<const double> taps,
                            std::size_t k) {
  const std::size_t n = x.size();
  double acc = 0.0;
  if (2 * k + 1 >= taps.size()) {
    const double* at = x.data() + 2 * k;
    for (std::size_t i = 0; i < taps.size(); ++i) acc += taps[i] * *(at - i);
    return acc;
  }
  for (std::size_t i = 0; i < taps.size(); ++i) {
    acc += taps[i] * x[wrap(static_cast<std::ptrdiff_t>(2 * k) - static_cast<std::ptrdiff_t>(i), n)];
  }
  return acc;
}

inline double upsample_at(std::span<const double> coeffs, std::span<const double> syn,
                          std::size_t n) {
  const std::size_t len = 2 * coeffs.size();
  const std::size_t taps = syn.size();
  double acc = 0.0;
  if (n + taps <= len) {
    // no wrap: even slots sit at pos = n + taps - 1 - j
    for (std::size_t j = (n + taps - 1) % 2; j < taps; j += 2) {
      acc += syn[j] * coeffs[(n + taps - 1 - j) / 2];
    }
    return acc;
  }
  for (std::size_t j = 0; j < taps; ++j) {
    // position in the upsampled sequence; only even slots carry data
    const std::size_t pos = (n + taps - 1 - j) % len;
    if (pos % 2 == 0) acc += syn[j] * coeffs[pos / 2];
  }
  return acc;
}

inline double log_density_at(std::span<const std::vector<double>> columns,
                             std::span<const double> mu, std::span<const double> sigma2,
                             std::size_t k) {
  constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
  double acc = 0.0;
  for (std::size_t f = 0; f < columns.size(); ++f) {
    const double d = columns[f][k] - mu[f];
    acc += -0.5 * (kLog2Pi + std::log(sigma2[f])) - d * d / (2.0 * sigma2[f]);
  }
  return acc;
}

inline std::size_t rows_of(std::span<const std::vector<double>> columns) {
  return columns.empty() ? 0 : columns.front().size();
}

}  // namespace

namespace serial {

void convolve_downsample(std::span<const double> x, std::span<const double> taps,
                         std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = downsample_at(x, taps, k);
}

void upsample_filter_add(std::span<const double> coeffs, std::span<const double> syn,
                         std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += upsample_at(coeffs, syn, n);
}

void log_density(std::span<const std::vector<double>> columns, std::span<const double> mu,
                 std::span<const double> sigma2, std::span<double> out) {
  const std::size_t rows = rows_of(columns);
  for (std::size_t k = 0; k < rows; ++k) out[k] = log_density_at(columns, mu, sigma2, k);
}

}  // namespace serial

namespace parallel {

void convolve_downsample(std::span<const double> x, std::span<const double> taps,
                         std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = downsample_at(x, taps, static_cast<std::size_t>(k));
  }
}

void upsample_filter_add(std::span<const double> coeffs, std::span<const double> syn,
                         std::span<double> out) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] += upsample_at(coeffs, syn, static_cast<std::size_t>(n));
  }
}

void log_density(std::span<const std::vector<double>> columns, std::span<const double> mu,
                 std::span<const double> sigma2, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(rows_of(columns));
#pragma omp parallel for schedule(static) if (rows >= static_cast<std::ptrdiff_t>(kParallelThreshold))
  for (std::ptrdiff_t k = 0; k < rows; ++k) {
    out[static_cast<std::size_t>(k)] =
        log_density_at(columns, mu, sigma2, static_cast<std::size_t>(k));
  }
}

}  // namespace parallel

}  // namespace wavereg::kernels
