// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_WAVELET_HPP
#define WAVEREG_WAVELET_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavereg {

/// Orthonormal two-channel filter bank for one wavelet family.
///
/// Analysis taps satisfy sum(lp) = sqrt(2), sum(lp^2) = 1, double-shift
/// orthogonality, and hp[i] = (-1)^i lp[L-1-i]. Synthesis taps are the
/// time-reversed analysis taps.
struct FilterPair {
  std::string family;
  std::vector<double> lp;
  std::vector<double> hp;
  std::vector<double> lp_syn;
  std::vector<double> hp_syn;

  std::size_t length() const noexcept { return lp.size(); }
};

/// Families accepted by make_filter_pair ("haar", "db1".."db6").
std::vector<std::string> supported_families();

/// Throws Error(UnknownFamily) for identifiers outside supported_families().
FilterPair make_filter_pair(std::string_view family);

/// One subband of an analysis step. Length is half the parent length.
struct CoefficientBlock {
  std::vector<double> values;

  std::size_t length() const noexcept { return values.size(); }
};

struct SubbandPair {
  CoefficientBlock approx;
  CoefficientBlock detail;
};

// Periodic convolution with lp/hp followed by keeping even-indexed outputs:
//   approx[k] = sum_i lp[i] * x[(2k - i) mod N]
// Signal length must be even and at least the filter length.
SubbandPair analysis_step(std::span<const double> signal, const FilterPair& filters);

// Transpose of analysis_step; exact inverse for orthonormal pairs.
std::vector<double> synthesis_step(const CoefficientBlock& approx,
                                   const CoefficientBlock& detail,
                                   const FilterPair& filters);

/// Sum of squared values.
double energy(std::span<const double> block) noexcept;

}  // namespace wavereg

#endif  // WAVEREG_WAVELET_HPP
