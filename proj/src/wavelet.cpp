// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/wavelet.hpp"

#include <algorithm>
#include <array>

#include "wavereg/error.hpp"
#include "wavereg/kernels.hpp"

namespace wavereg {

namespace {

struct FamilyTable {
  std::string_view name;
  std::span<const double> lp;
};

constexpr double kInvSqrt2 = 0.70710678118654752440;

constexpr std::array<double, 2> kHaar = {kInvSqrt2, kInvSqrt2};

// Daubechies scaling filters, minimum phase, computed by spectral
// factorization at 40 significant digits and rounded to double.
constexpr std::array<double, 4> kDb2 = {
    0.48296291314453414337, 0.83651630373780790558,
    0.22414386804201338103, -0.12940952255126038117};

constexpr std::array<double, 6> kDb3 = {
    0.332670552950082616, 0.80689150931109257649, 0.4598775021184915701,
    -0.1350110200102545887, -0.085441273882026661693, 0.035226291885709536603};

constexpr std::array<double, 8> kDb4 = {
    0.23037781330889650086, 0.71484657055291564709, 0.63088076792985890788,
    -0.027983769416859854211, -0.18703481171909308408, 0.030841381835560763627,
    0.032883011666885199735, -0.010597401785069032105};

constexpr std::array<double, 10> kDb5 = {
    0.16010239797419291448, 0.60382926979718967054, 0.72430852843777292773,
    0.13842814590132073151, -0.24229488706638203186, -0.032244869584638374648,
    0.077571493840045713523, -0.0062414902127982742742, -0.012580751999081999469,
    0.003335725285473771278};

constexpr std::array<double, 12> kDb6 = {
    0.11154074335010946362, 0.49462389039845308568, 0.75113390802109535068,
    0.31525035170919762909, -0.22626469396543982008, -0.12976686756726193556,
    0.097501605587323049102, 0.027522865530305728626, -0.031582039317486029565,
    0.00055384220116149613925, 0.0047772575109455106396, -0.0010773010853084795649};

constexpr std::array<FamilyTable, 7> kFamilies = {{
    {"haar", kHaar},
    {"db1", kHaar},
    {"db2", kDb2},
    {"db3", kDb3},
    {"db4", kDb4},
    {"db5", kDb5},
    {"db6", kDb6},
}};

}  // namespace

std::vector<std::string> supported_families() {
  std::vector<std::string> names;
  names.reserve(kFamilies.size());
  for (const auto& f : kFamilies) names.emplace_back(f.name);
  return names;
}

FilterPair make_filter_pair(std::string_view family) {
  const auto it = std::find_if(kFamilies.begin(), kFamilies.end(),
                               [&](const FamilyTable& f) { return f.name == family; });
  if (it == kFamilies.end()) {
    throw Error(ErrorKind::UnknownFamily,
                "unsupported wavelet family '" + std::string(family) + "'");
  }

  FilterPair pair;
  pair.family = std::string(family);
  pair.lp.assign(it->lp.begin(), it->lp.end());

  const std::size_t len = pair.lp.size();
  pair.hp.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double mirrored = pair.lp[len - 1 - i];
    pair.hp[i] = (i % 2 == 0) ? mirrored : -mirrored;
  }
  pair.lp_syn.assign(pair.lp.rbegin(), pair.lp.rend());
  pair.hp_syn.assign(pair.hp.rbegin(), pair.hp.rend());
  return pair;
}

SubbandPair analysis_step(std::span<const double> signal, const FilterPair& filters) {
  const std::size_t n = signal.size();
  if (n % 2 != 0) {
    throw Error(ErrorKind::Length, "analysis needs an even-length signal, got " + std::to_string(n));
  }
  if (n < filters.length()) {
    throw Error(ErrorKind::Length, "signal of length " + std::to_string(n) +
                                       " is shorter than the " + filters.family + " filter (" +
                                       std::to_string(filters.length()) + " taps)");
  }

  SubbandPair out;
  out.approx.values.resize(n / 2);
  out.detail.values.resize(n / 2);
  kernels::parallel::convolve_downsample(signal, filters.lp, out.approx.values);
  kernels::parallel::convolve_downsample(signal, filters.hp, out.detail.values);
  return out;
}

std::vector<double> synthesis_step(const CoefficientBlock& approx, const CoefficientBlock& detail,
                                   const FilterPair& filters) {
  if (approx.length() != detail.length()) {
    throw Error(ErrorKind::Length, "approximation and detail blocks differ in length (" +
                                       std::to_string(approx.length()) + " vs " +
                                       std::to_string(detail.length()) + ")");
  }
  std::vector<double> out(2 * approx.length(), 0.0);
  kernels::parallel::upsample_filter_add(approx.values, filters.lp_syn, out);
  kernels::parallel::upsample_filter_add(detail.values, filters.hp_syn, out);
  return out;
}

double energy(std::span<const double> block) noexcept {
  double acc = 0.0;
  for (const double v : block) acc += v * v;
  return acc;
}

}  // namespace wavereg
