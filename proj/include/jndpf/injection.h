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

#ifndef JNDPF_INJECTION_H_
#define JNDPF_INJECTION_H_

#include <array>
#include <string_view>

#include "jndpf/image.h"
#include "jndpf/jnd_model.h"
#include "jndpf/transform.h"

namespace jndpf {

enum class InjectionStrategy {
  kSuppressBasic,
  kSuppressWeighted,
  kSuppressBlocktype,
  kGaussian,
};

std::string_view StrategyName(InjectionStrategy strategy);
InjectionStrategy ParseStrategy(std::string_view name);

struct GaussianParams {
  double sigma_max = 1.5;  // pixels
  double j_ref = 60.0;     // mean AC threshold at which sigma saturates
};

struct InjectionConfig {
  InjectionStrategy strategy = InjectionStrategy::kSuppressWeighted;
  // Suppression weights in row-major coefficient order, each in [0, 1].
  CoeffTable p_table = DefaultPTable();
  std::array<CoeffTable, 3> p_tables_by_class = DefaultClassTables();
  GaussianParams gaussian;

  // Linear ramp over zigzag position: 0.3 at DC to 1.0 at position 63.
  static CoeffTable DefaultPTable();
  // plane / edge / texture = ramp x {0.6, 0.8, 1.0}.
  static std::array<CoeffTable, 3> DefaultClassTables();

  const CoeffTable& TableFor(BlockLabel label) const {
    return p_tables_by_class[static_cast<int>(label)];
  }
  void Validate() const;
};

// Shrinks one coefficient by its threshold:
//   0                                   if |c| < j
//   sgn(c) * sqrt(c^2 - p * j^2)        otherwise
double SuppressCoeff(double c, double j, double p);

// Applies SuppressCoeff over the block with the strategy's weights. Not
// defined for the gaussian strategy, which works in the pixel domain.
DctBlock InjectBlock(const DctBlock& coeffs, const CoeffTable& jnd,
                     const BlockClass& cls, const InjectionConfig& cfg);

// Mean threshold over the 63 AC positions.
double MeanAcThreshold(const CoeffTable& jnd);
double GaussianSigma(const CoeffTable& jnd, const GaussianParams& g);
// Normalized 1-D kernel of radius ceil(3 sigma); {1} when sigma is ~0.
std::vector<double> GaussianKernel(double sigma);

// Each block of `plane` is low-passed with the sigma derived from its
// thresholds. Samples outside the image are edge-replicated.
ImagePlane GaussianInject(const ImagePlane& plane, const JndMap& jnd_map,
                          const InjectionConfig& cfg);

// Intermediate state of the frequency-domain pre-filter, for inspection.
struct PrefilterTrace {
  BlockGrid original;   // DCT of the padded input
  BlockGrid filtered;   // after injection
  JndMap jnd;
  FloatPlane unclamped;  // inverse DCT of `filtered`, padded, before rounding
  ImagePlane output;
};

// pad -> DCT -> JND map -> inject -> inverse DCT -> crop -> round/clamp.
PrefilterTrace TracePrefilter(const ImagePlane& plane, const JndParams& params,
                              const InjectionConfig& cfg,
                              const ImagePlane* saliency_map = nullptr);
ImagePlane ApplyPrefilter(const ImagePlane& plane, const JndParams& params,
                          const InjectionConfig& cfg,
                          const ImagePlane* saliency_map = nullptr);

}  // namespace jndpf

#endif  // JNDPF_INJECTION_H_
