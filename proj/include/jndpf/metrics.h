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

#ifndef JNDPF_METRICS_H_
#define JNDPF_METRICS_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "jndpf/image.h"
#include "jndpf/transform.h"

namespace jndpf {

enum class MetricKind { kPsnr, kPsnrHvsm, kSsim, kMsssim };

inline constexpr std::array<MetricKind, 4> kAllMetrics = {
    MetricKind::kPsnr, MetricKind::kPsnrHvsm, MetricKind::kSsim,
    MetricKind::kMsssim};

// Value reported for identical images in the PSNR family.
inline constexpr double kPsnrCap = 100.0;

std::string_view MetricName(MetricKind kind);
MetricKind ParseMetric(std::string_view name);

struct MetricValue {
  MetricKind kind = MetricKind::kPsnr;
  double value = 0.0;
  bool capped = false;
  // Set when MS-SSIM had to run with fewer than five scales.
  bool reduced_scales = false;
};

MetricValue Psnr(const ImagePlane& ref, const ImagePlane& dist);

// PSNR-HVS-M: per 8x8 block, DCT differences are reduced by the larger of
// the two blocks' masking energies and weighted by a CSF table before the
// usual PSNR. Images are edge-padded to a multiple of 8.
MetricValue PsnrHvsm(const ImagePlane& ref, const ImagePlane& dist);

MetricValue Ssim(const ImagePlane& ref, const ImagePlane& dist);
MetricValue Msssim(const ImagePlane& ref, const ImagePlane& dist);

MetricValue ComputeMetric(MetricKind kind, const ImagePlane& ref,
                          const ImagePlane& dist);

// CSF weights and masking coefficients of PSNR-HVS-M (Ponomarenko et al.,
// 2007 reference implementation), row-major over (u, v).
extern const CoeffTable kPsnrHvsmCsf;
extern const CoeffTable kPsnrHvsmMask;

}  // namespace jndpf

#endif  // JNDPF_METRICS_H_
