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

#ifndef JNDPF_LOSSES_H_
#define JNDPF_LOSSES_H_

#include <optional>

#include "jndpf/image.h"

namespace jndpf {

// Loss kernels for training a pre-filter against a reference output.
//
// Conventions:
//  * i_f is the filtered image being optimized, i_gt the reference filter's
//    output, i_o the unfiltered original. All planes are on the 0..255
//    scale and gradients are w.r.t. i_f on that scale.
//  * Spatial losses (Charbonnier, MS-SSIM) divide pixels by 255 internally.
//  * Frequency losses work on orthonormal 8x8 DCT coefficients of the
//    0..255 planes (edge-padded to a multiple of 8) and are the mean over
//    blocks of the per-block coefficient sums.

struct LossWeights {
  double lambda1 = 1.0;   // Charbonnier
  double lambda2 = 0.16;  // MS-SSIM
  double lambda3 = 0.02;  // frequency (residual + conservation)
  int cutoff = 10;        // zigzag K for the conservation term
  double charbonnier_eps = 1e-3;
  int msssim_max_scales = 5;

  void Validate() const;
};

struct LossTerm {
  double value = 0.0;
  FloatPlane grad;  // empty unless requested
};

// mean(sqrt(d^2 + eps^2) - eps), d = (i_f - i_gt) / 255.
LossTerm CharbonnierLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                         double eps, bool want_grad);

// 1 - MS-SSIM(i_f / 255, i_gt / 255). Uses fewer scales (and sets
// `reduced`) when the image cannot hold `max_scales`.
LossTerm MsssimLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                    bool want_grad, int max_scales = 5,
                    bool* reduced = nullptr);

// mean_blocks sum_{u,v} (C_f - C_gt)^2
LossTerm DctResidualLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                         bool want_grad);

// mean_blocks [ sum_LF max(0, |C_o| - |C_f|)^2
//             + sum_HF max(0, |C_f| - |C_o|)^2 ]
// Subgradients: 0 at the hinge, sgn(0) = 0.
LossTerm DctConservationLoss(const FloatPlane& i_f, const FloatPlane& i_o,
                             int cutoff, bool want_grad);

struct LossReport {
  double l_c = 0.0;
  double l_m = 0.0;
  double l_res = 0.0;
  double l_cons = 0.0;
  double l_freq = 0.0;  // l_res + l_cons
  double l_all = 0.0;   // lambda1 l_c + lambda2 l_m + lambda3 l_freq
  int msssim_scales = 0;
  bool msssim_reduced = false;
  std::optional<FloatPlane> grad;  // d l_all / d i_f
};

LossReport TotalLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                     const FloatPlane& i_o, const LossWeights& weights,
                     bool want_grad);

}  // namespace jndpf

#endif  // JNDPF_LOSSES_H_
