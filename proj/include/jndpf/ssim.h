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

#ifndef JNDPF_SSIM_H_
#define JNDPF_SSIM_H_

#include <array>
#include <optional>

#include "jndpf/image.h"

namespace jndpf {

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr int kMsssimMaxScales = 5;
// Canonical 5-scale exponents (they sum to 1.0001).
inline constexpr std::array<double, kMsssimMaxScales> kMsssimWeights = {
    0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

// Normalized 11-tap Gaussian, sigma 1.5.
const std::array<double, kSsimWindow>& SsimWindow();

// 'valid' separable correlation with the window: output is
// (w - 10) x (h - 10). The adjoint maps such a map back to w x h.
FloatPlane ValidFilter(const FloatPlane& in);
FloatPlane ValidFilterAdjoint(const FloatPlane& g, size_t width,
                              size_t height);

// 2x2 mean pooling; odd trailing rows/columns are dropped.
FloatPlane Downsample2x(const FloatPlane& in);
FloatPlane Downsample2xAdjoint(const FloatPlane& g, size_t width,
                               size_t height);

struct SsimConstants {
  double c1;
  double c2;
  static SsimConstants ForRange(double dynamic_range) {
    return {(0.01 * dynamic_range) * (0.01 * dynamic_range),
            (0.03 * dynamic_range) * (0.03 * dynamic_range)};
  }
};

enum class SsimGradient { kNone, kSsim, kContrastStructure };

struct SsimScaleResult {
  double mean_ssim = 0.0;  // mean of l * cs over valid window positions
  double mean_cs = 0.0;    // mean of cs
  FloatPlane grad;         // d(requested mean)/dx, when requested
};

// One scale of SSIM between x and y; gradients are taken w.r.t. x.
SsimScaleResult SsimScale(const FloatPlane& x, const FloatPlane& y,
                          const SsimConstants& k,
                          SsimGradient want = SsimGradient::kNone);

// Largest scale count (<= max_scales) whose coarsest level still fits the
// window; 0 if even the full-resolution image is too small.
int MsssimScaleCount(size_t width, size_t height,
                     int max_scales = kMsssimMaxScales);

struct MsssimResult {
  double value = 0.0;
  int scales = 0;
  bool reduced = false;  // fewer than five scales were possible
  FloatPlane grad;       // d(value)/dx when requested
};

// MS-SSIM = prod_{j<M-1} mean_cs_j^{w_j} * mean_ssim_{M-1}^{w_{M-1}}.
// With fewer than five scales the leading weights are renormalized to sum
// to one. Non-positive factors clamp the product to zero (zero gradient).
MsssimResult MultiScaleSsim(const FloatPlane& x, const FloatPlane& y,
                            double dynamic_range, bool want_grad,
                            int max_scales = kMsssimMaxScales);

}  // namespace jndpf

#endif  // JNDPF_SSIM_H_
