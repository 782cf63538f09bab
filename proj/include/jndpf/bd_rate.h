// Copyright 2026 The jndpf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JNDPF_BD_RATE_H_
#define JNDPF_BD_RATE_H_

#include <array>
#include <span>
#include <string>
#include <vector>

namespace jndpf {

struct RatePoint {
  double bits = 0.0;     // > 0
  double quality = 0.0;  // higher is better
};

enum class BdInterpolation {
  kAuto,   // cubic fit for exactly 4 points, PCHIP otherwise
  kCubic,  // least-squares cubic in quality (exact through 4 points)
  kPchip,  // piecewise-cubic monotone (Fritsch-Carlson)
};

struct BdRateResult {
  double percent = 0.0;  // negative = test needs fewer bits
  double quality_lo = 0.0;
  double quality_hi = 0.0;
  size_t anchor_points = 0;  // after monotonicity repair
  size_t test_points = 0;
  std::vector<std::string> warnings;
};

// Sorts by rate and greedily drops points whose quality does not increase
// with rate (the higher-rate point of the violating pair with the smallest
// rate gap goes first). Throws kNonMonotone if fewer than four remain.
std::vector<RatePoint> RepairMonotone(std::vector<RatePoint> points,
                                      std::vector<std::string>* warnings);

// Cubic p(q) ~ log10(bits) fitted around `center`; coefficients ascending
// in (q - center).
struct CubicFit {
  double center = 0.0;
  std::array<double, 4> coeffs{};
  double Eval(double q) const;
  double Integral(double lo, double hi) const;
};
CubicFit FitCubic(std::span<const RatePoint> points);

// Bjontegaard delta rate: average log-rate difference over the overlapping
// quality interval, (10^avg - 1) * 100. Input order does not matter.
BdRateResult BdRate(std::span<const RatePoint> anchor,
                    std::span<const RatePoint> test,
                    BdInterpolation interpolation = BdInterpolation::kAuto);

}  // namespace jndpf

#endif  // JNDPF_BD_RATE_H_
