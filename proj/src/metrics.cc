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

#include "jndpf/metrics.h"

#include <cmath>
#include <vector>

#include "jndpf/error.h"
#include "jndpf/parallel.h"
#include "jndpf/ssim.h"

namespace jndpf {

const CoeffTable kPsnrHvsmCsf = {
    1.608443, 2.339554, 2.573509, 1.608443, 1.072295, 0.643377, 0.504610,
    0.421887, 2.144591, 2.144591, 1.838221, 1.354478, 0.989811, 0.443708,
    0.428918, 0.467911, 1.838221, 1.979622, 1.608443, 1.072295, 0.643377,
    0.451493, 0.372972, 0.459555, 1.838221, 1.513829, 1.169777, 0.887417,
    0.504610, 0.295806, 0.321689, 0.415082, 1.429727, 1.169777, 0.695543,
    0.459555, 0.378457, 0.236102, 0.249855, 0.334222, 1.072295, 0.735288,
    0.467911, 0.402111, 0.317717, 0.247453, 0.227744, 0.279729, 0.525206,
    0.402111, 0.329937, 0.295806, 0.249855, 0.212687, 0.214459, 0.254803,
    0.357432, 0.279729, 0.270896, 0.262603, 0.229778, 0.257351, 0.249855,
    0.259950};

const CoeffTable kPsnrHvsmMask = {
    0.390625, 0.826446, 1.000000, 0.390625, 0.173611, 0.062500, 0.038447,
    0.026874, 0.694444, 0.694444, 0.510204, 0.277008, 0.147929, 0.029727,
    0.027778, 0.033058, 0.510204, 0.591716, 0.390625, 0.173611, 0.062500,
    0.030779, 0.021004, 0.031888, 0.510204, 0.346021, 0.206612, 0.118906,
    0.038447, 0.013212, 0.015625, 0.026015, 0.308642, 0.206612, 0.073046,
    0.031888, 0.021626, 0.008417, 0.009426, 0.016866, 0.173611, 0.081633,
    0.033058, 0.024414, 0.015242, 0.009246, 0.007831, 0.011815, 0.041649,
    0.024414, 0.016437, 0.013212, 0.009426, 0.006830, 0.006944, 0.009803,
    0.019290, 0.011815, 0.011080, 0.010412, 0.007972, 0.010000, 0.009426,
    0.010203};

namespace {

double PsnrFromMse(double mse, bool* capped) {
  if (mse <= 0.0) {
    *capped = true;
    return kPsnrCap;
  }
  *capped = false;
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

// Sum of squared deviations scaled by n / (n - 1): the sample variance times
// the sample count, as in the reference implementation.
double ScaledVariance(const PixelBlock& b, int r0, int c0, int size) {
  double mean = 0.0;
  for (int r = r0; r < r0 + size; ++r) {
    for (int c = c0; c < c0 + size; ++c) mean += b(r, c);
  }
  const double n = size * size;
  mean /= n;
  double ss = 0.0;
  for (int r = r0; r < r0 + size; ++r) {
    for (int c = c0; c < c0 + size; ++c) {
      ss += (b(r, c) - mean) * (b(r, c) - mean);
    }
  }
  return ss / (n - 1.0) * n;
}

double MaskEnergy(const PixelBlock& pixels, const DctBlock& coeffs) {
  double m = 0.0;
  for (int i = 1; i < kBlockSize; ++i) {
    m += coeffs[i] * coeffs[i] * kPsnrHvsmMask[i];
  }
  double pop = ScaledVariance(pixels, 0, 0, 8);
  if (pop != 0.0) {
    pop = (ScaledVariance(pixels, 0, 0, 4) + ScaledVariance(pixels, 0, 4, 4) +
           ScaledVariance(pixels, 4, 4, 4) + ScaledVariance(pixels, 4, 0, 4)) /
          pop;
  }
  return std::sqrt(m * pop) / 32.0;
}

}  // namespace

std::string_view MetricName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kPsnr: return "psnr";
    case MetricKind::kPsnrHvsm: return "psnr_hvsm";
    case MetricKind::kSsim: return "ssim";
    case MetricKind::kMsssim: return "msssim";
  }
  return "psnr";
}

MetricKind ParseMetric(std::string_view name) {
  for (MetricKind k : kAllMetrics) {
    if (MetricName(k) == name) return k;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown metric: " + std::string(name));
}

MetricValue Psnr(const ImagePlane& ref, const ImagePlane& dist) {
  RequireSameShape(ref, dist, "psnr");
  std::vector<double> rows(ref.height());
  for (size_t y = 0; y < ref.height(); ++y) {
    double acc = 0.0;
    const auto a = ref.Row(y);
    const auto b = dist.Row(y);
    for (size_t x = 0; x < ref.width(); ++x) {
      const double d = double(a[x]) - double(b[x]);
      acc += d * d;
    }
    rows[y] = acc;
  }
  MetricValue v{MetricKind::kPsnr};
  v.value = PsnrFromMse(PairwiseSum(rows) / ref.size(), &v.capped);
  return v;
}

MetricValue PsnrHvsm(const ImagePlane& ref, const ImagePlane& dist) {
  RequireSameShape(ref, dist, "psnr_hvsm");
  const auto pa = PadToBlocks(ToFloat(ref));
  const auto pb = PadToBlocks(ToFloat(dist));
  const size_t bx_count = pa.blocks_x();
  const size_t n = bx_count * pa.blocks_y();
  std::vector<double> block_sums(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const PixelBlock a = ExtractBlock(pa.padded, i % bx_count, i / bx_count);
    const PixelBlock b = ExtractBlock(pb.padded, i % bx_count, i / bx_count);
    const DctBlock da = Dct8Forward(a);
    const DctBlock db = Dct8Forward(b);
    const double mask = std::max(MaskEnergy(a, da), MaskEnergy(b, db));
    double s = 0.0;
    for (int k = 0; k < kBlockSize; ++k) {
      double u = std::abs(da[k] - db[k]);
      if (k != 0) {
        const double t = mask / kPsnrHvsmMask[k];
        u = u < t ? 0.0 : u - t;
      }
      s += (u * kPsnrHvsmCsf[k]) * (u * kPsnrHvsmCsf[k]);
    }
    block_sums[i] = s;
  }
  MetricValue v{MetricKind::kPsnrHvsm};
  v.value = PsnrFromMse(PairwiseSum(block_sums) / (n * kBlockSize), &v.capped);
  return v;
}

MetricValue Ssim(const ImagePlane& ref, const ImagePlane& dist) {
  RequireSameShape(ref, dist, "ssim");
  const auto r = SsimScale(ToFloat(ref), ToFloat(dist),
                           SsimConstants::ForRange(255.0));
  return {MetricKind::kSsim, r.mean_ssim, false, false};
}

MetricValue Msssim(const ImagePlane& ref, const ImagePlane& dist) {
  RequireSameShape(ref, dist, "msssim");
  const auto r = MultiScaleSsim(ToFloat(ref), ToFloat(dist), 255.0, false);
  return {MetricKind::kMsssim, r.value, false, r.reduced};
}

MetricValue ComputeMetric(MetricKind kind, const ImagePlane& ref,
                          const ImagePlane& dist) {
  switch (kind) {
    case MetricKind::kPsnr: return Psnr(ref, dist);
    case MetricKind::kPsnrHvsm: return PsnrHvsm(ref, dist);
    case MetricKind::kSsim: return Ssim(ref, dist);
    case MetricKind::kMsssim: return Msssim(ref, dist);
  }
  return Psnr(ref, dist);
}

}  // namespace jndpf
