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

#ifndef JNDPF_JND_MODEL_H_
#define JNDPF_JND_MODEL_H_

#include <optional>
#include <string_view>
#include <vector>

#include "jndpf/image.h"
#include "jndpf/transform.h"

namespace jndpf {

// Base visibility threshold per DCT coefficient:
//
//   T(u,v) = gain * exp(c w) / (a + b w) / (phi_u phi_v)
//            / (r + (1 - r) cos^2(theta_uv))
//
// with w the spatial frequency in cycles/degree, phi the orthonormal DCT
// normalization factors and theta_uv the orientation of the (u, v) basis
// function (oblique effect). Defaults follow the widely used DCT-domain JND
// parameterization for a 1080-line display viewed at three picture heights.
struct CsfParams {
  double a = 1.33;
  double b = 0.11;
  double c = 0.18;
  double oblique_r = 0.6;
  double gain = 0.25;
  double picture_height = 1080.0;  // pixels
  double viewing_ratio = 3.0;      // viewing distance / picture height
};

// Piecewise U-curve in block mean luma, 1.0 on [dark_knee, bright_knee].
struct LaParams {
  double dark_knee = 60.0;
  double dark_divisor = 150.0;
  double bright_knee = 170.0;
  double bright_divisor = 425.0;
};

// factor = min(cap, max(1, (|C| / base)^epsilon))
struct CmParams {
  double epsilon = 0.36;
  double cap = 4.0;
  // Edge blocks are only masked where u^2 + v^2 exceeds this.
  double edge_low_radius_sq = 16.0;
};

struct ClassifierParams {
  // AC energy per pixel below which a block is "plane".
  double plane_ac_energy = 25.0;
  // Share of AC energy at u + v >= 4 below which a non-plane block is "edge".
  double edge_hf_ratio = 0.25;
};

// Per-block saliency weight: nonsalient at saliency 0, salient at 1.
struct SaParams {
  double salient = 0.8;
  double nonsalient = 1.2;
};

struct JndParams {
  double s = 1.0;
  CsfParams csf;
  LaParams la;
  CmParams cm;
  ClassifierParams classifier;
  SaParams sa;
  bool enable_la = true;
  bool enable_cm = true;
  bool enable_sa = true;  // only effective when a saliency map is supplied

  void Validate() const;
};

enum class BlockLabel : uint8_t { kPlane = 0, kEdge = 1, kTexture = 2 };

std::string_view BlockLabelName(BlockLabel label);

struct BlockClass {
  BlockLabel label = BlockLabel::kPlane;
  double edge_energy = 0.0;     // AC energy at 1 <= u + v <= 3
  double texture_energy = 0.0;  // AC energy at u + v >= 4
};

struct JndMap {
  size_t blocks_x = 0;
  size_t blocks_y = 0;
  std::vector<CoeffTable> thresholds;
  std::vector<BlockClass> classes;

  size_t size() const { return thresholds.size(); }
  const CoeffTable& at(size_t bx, size_t by) const {
    return thresholds[by * blocks_x + bx];
  }

  friend bool operator==(const JndMap& a, const JndMap& b) {
    return a.blocks_x == b.blocks_x && a.blocks_y == b.blocks_y &&
           a.thresholds == b.thresholds;
  }
};

// Cycles per degree of basis function (u, v); linear in viewing_ratio.
double SpatialFrequency(int u, int v, const CsfParams& csf);
// exp(c w) / (a + b w): the frequency-only part of the CSF threshold.
double CsfCurve(double omega, const CsfParams& csf);
double CsfBase(int u, int v, const CsfParams& csf);
CoeffTable CsfBaseTable(const CsfParams& csf);

double LuminanceAdaptation(double mean_luma, const LaParams& la);

BlockClass ClassifyBlock(const DctBlock& coeffs, const ClassifierParams& p);

// `base` is the CSF x LA threshold of each coefficient. DC is never masked.
CoeffTable ContrastMasking(const DctBlock& coeffs, const CoeffTable& base,
                           const BlockClass& cls, const CmParams& cm,
                           bool enabled = true);

// Per-block factors from a saliency raster with the image's dimensions.
std::vector<double> SaliencyWeights(const ImagePlane& saliency,
                                    const SaParams& sa);

// Per-block J_T = s * CSF * LA * CM * SA from the original image's
// coefficients. `saliency` holds one weight per block (raster order).
JndMap ComputeJndMap(const BlockGrid& coeffs, const JndParams& params,
                     const std::vector<double>* saliency = nullptr);
JndMap ComputeJndMap(const ImagePlane& plane, const JndParams& params,
                     const ImagePlane* saliency_map = nullptr);

// Factors of the product above for one block, exposed for inspection and
// testing of the multiplicative decomposition.
struct JndFactors {
  CoeffTable csf{};
  double la = 1.0;
  CoeffTable cm{};
  double sa = 1.0;
  BlockClass cls;
};
JndFactors BlockJndFactors(const DctBlock& coeffs, const JndParams& params,
                           double saliency_weight = 1.0);

}  // namespace jndpf

#endif  // JNDPF_JND_MODEL_H_
