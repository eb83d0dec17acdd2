// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_KERNELS_HPP
#define WAVEREG_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

// Inner loops of the filter bank and the detector. Each kernel exists twice:
// `serial` is the plain reference used by tests and the benchmark baseline,
// `parallel` splits the output index range across OpenMP threads. Every
// output element is computed by the same arithmetic in both, so results are
// bit-identical regardless of thread count.
namespace wavereg::kernels {

/// Output blocks at least this long are split across threads.
inline constexpr std::size_t kParallelThreshold = 4096;

namespace serial {

// out[k] = sum_i taps[i] * x[(2k - i) mod N], out.size() == N / 2
void convolve_downsample(std::span<const double> x, std::span<const double> taps,
                         std::span<double> out);

// out[n] += sum_j syn[j] * up[(n + L - 1 - j) mod N] where up is coeffs
// upsampled by two (odd slots zero), out.size() == 2 * coeffs.size()
void upsample_filter_add(std::span<const double> coeffs, std::span<const double> syn,
                         std::span<double> out);

// out[k] = sum_f log N(columns[f][k]; mu[f], sigma2[f])
void log_density(std::span<const std::vector<double>> columns, std::span<const double> mu,
                 std::span<const double> sigma2, std::span<double> out);

}  // namespace serial

namespace parallel {

void convolve_downsample(std::span<const double> x, std::span<const double> taps,
                         std::span<double> out);

void upsample_filter_add(std::span<const double> coeffs, std::span<const double> syn,
                         std::span<double> out);

void log_density(std::span<const std::vector<double>> columns, std::span<const double> mu,
                 std::span<const double> sigma2, std::span<double> out);

}  // namespace parallel

}  // namespace wavereg::kernels

#endif  // WAVEREG_KERNELS_HPP
