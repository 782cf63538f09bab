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

#include "jndpf/jnd_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jndpf/error.h"

namespace jndpf {
namespace {

double PhiFactor(int k) {
  return k == 0 ? std::sqrt(1.0 / kBlockDim) : std::sqrt(2.0 / kBlockDim);
}

bool Finite(double v) { return std::isfinite(v); }

}  // namespace

void JndParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kConfig, std::string("[jnd] ") + what);
  };
  require(s > 0 && Finite(s), "s must be positive");
  require(csf.a > 0 && csf.b >= 0 && Finite(csf.c), "csf a > 0, b >= 0");
  require(csf.oblique_r > 0 && csf.oblique_r <= 1, "csf oblique_r in (0, 1]");
  require(csf.gain > 0 && Finite(csf.gain), "csf gain must be positive");
  require(csf.picture_height > 0 && csf.viewing_ratio > 0,
          "viewing geometry must be positive");
  require(la.dark_knee >= 0 && la.dark_knee <= la.bright_knee &&
              la.bright_knee <= 255,
          "la knees must satisfy 0 <= dark <= bright <= 255");
  require(la.dark_divisor > 0 && la.bright_divisor > 0,
          "la divisors must be positive");
  require(cm.epsilon >= 0 && Finite(cm.epsilon), "cm epsilon >= 0");
  require(cm.cap >= 1 && Finite(cm.cap), "cm cap >= 1");
  require(classifier.plane_ac_energy >= 0 && classifier.edge_hf_ratio >= 0 &&
              classifier.edge_hf_ratio <= 1,
          "classifier thresholds out of range");
  require(sa.salient > 0 && sa.nonsalient > 0 && Finite(sa.salient) &&
              Finite(sa.nonsalient),
          "sa weights must be positive");
}

std::string_view BlockLabelName(BlockLabel label) {
  switch (label) {
    case BlockLabel::kPlane: return "plane";
    case BlockLabel::kEdge: return "edge";
    case BlockLabel::kTexture: return "texture";
  }
  return "plane";
}

double SpatialFrequency(int u, int v, const CsfParams& csf) {
  // Pixels per degree of visual angle under the small-angle approximation.
  const double ppd =
      csf.viewing_ratio * csf.picture_height * std::numbers::pi / 180.0;
  return std::hypot(u, v) / (2.0 * kBlockDim) * ppd;
}

double CsfCurve(double omega, const CsfParams& csf) {
  return std::exp(csf.c * omega) / (csf.a + csf.b * omega);
}

double CsfBase(int u, int v, const CsfParams& csf) {
  const double omega = SpatialFrequency(u, v, csf);
  double oblique = 1.0;
  if (u != 0 && v != 0) {
    const double wu = SpatialFrequency(u, 0, csf);
    const double wv = SpatialFrequency(0, v, csf);
    const double sin_theta = std::min(1.0, 2.0 * wu * wv / (omega * omega));
    const double cos2 = 1.0 - sin_theta * sin_theta;
    oblique = 1.0 / (csf.oblique_r + (1.0 - csf.oblique_r) * cos2);
  }
  return csf.gain * CsfCurve(omega, csf) / (PhiFactor(u) * PhiFactor(v)) *
         oblique;
}

CoeffTable CsfBaseTable(const CsfParams& csf) {
  CoeffTable table{};
  for (int u = 0; u < kBlockDim; ++u) {
    for (int v = 0; v < kBlockDim; ++v) {
      table[u * kBlockDim + v] = CsfBase(u, v, csf);
    }
  }
  return table;
}

double LuminanceAdaptation(double mean_luma, const LaParams& la) {
  if (mean_luma <= la.dark_knee) {
    return 1.0 + (la.dark_knee - mean_luma) / la.dark_divisor;
  }
  if (mean_luma >= la.bright_knee) {
    return 1.0 + (mean_luma - la.bright_knee) / la.bright_divisor;
  }
  return 1.0;
}

BlockClass ClassifyBlock(const DctBlock& coeffs, const ClassifierParams& p) {
  BlockClass cls;
  for (int u = 0; u < kBlockDim; ++u) {
    for (int v = 0; v < kBlockDim; ++v) {
      if (u + v == 0) continue;
      const double e = coeffs(u, v) * coeffs(u, v);
      (u + v <= 3 ? cls.edge_energy : cls.texture_energy) += e;
    }
  }
  const double ac = cls.edge_energy + cls.texture_energy;
  if (ac / kBlockSize < p.plane_ac_energy) {
    cls.label = BlockLabel::kPlane;
  } else if (cls.texture_energy < p.edge_hf_ratio * ac) {
    cls.label = BlockLabel::kEdge;
  } else {
    cls.label = BlockLabel::kTexture;
  }
  return cls;
}

CoeffTable ContrastMasking(const DctBlock& coeffs, const CoeffTable& base,
                           const BlockClass& cls, const CmParams& cm,
                           bool enabled) {
  CoeffTable factor;
  factor.fill(1.0);
  if (!enabled || cls.label == BlockLabel::kPlane) return factor;
  for (int u = 0; u < kBlockDim; ++u) {
    for (int v = 0; v < kBlockDim; ++v) {
      if (u + v == 0) continue;
      if (cls.label == BlockLabel::kEdge &&
          u * u + v * v <= cm.edge_low_radius_sq) {
        continue;
      }
      const int i = u * kBlockDim + v;
      const double ratio = std::abs(coeffs[i]) / base[i];
      if (ratio > 1.0) {
        factor[i] = std::min(cm.cap, std::pow(ratio, cm.epsilon));
      }
    }
  }
  return factor;
}

std::vector<double> SaliencyWeights(const ImagePlane& saliency,
                                    const SaParams& sa) {
  const auto padded = PadToBlocks(saliency);
  std::vector<double> weights(padded.blocks_x() * padded.blocks_y());
  for (size_t by = 0; by < padded.blocks_y(); ++by) {
    for (size_t bx = 0; bx < padded.blocks_x(); ++bx) {
      double sum = 0.0;
      for (int r = 0; r < kBlockDim; ++r) {
        for (int c = 0; c < kBlockDim; ++c) {
          sum += padded.padded.at(bx * kBlockDim + c, by * kBlockDim + r);
        }
      }
      const double level = sum / kBlockSize / 255.0;
      weights[by * padded.blocks_x() + bx] =
          sa.nonsalient + (sa.salient - sa.nonsalient) * level;
    }
  }
  return weights;
}

namespace {

JndFactors FactorsWithTable(const DctBlock& coeffs, const JndParams& params,
                            const CoeffTable& csf_table,
                            double saliency_weight) {
  JndFactors f;
  f.csf = csf_table;
  // Mean luma of the block: DC / 8 under the orthonormal transform.
  const double mean = std::clamp(coeffs[0] / kBlockDim, 0.0, 255.0);
  const double la = LuminanceAdaptation(mean, params.la);
  f.la = params.enable_la ? la : 1.0;
  f.cls = ClassifyBlock(coeffs, params.classifier);
  // The masking normalizer is always the full CSF x LA threshold, so that
  // toggling one factor never changes the others.
  CoeffTable base;
  for (int i = 0; i < kBlockSize; ++i) base[i] = f.csf[i] * la;
  f.cm = ContrastMasking(coeffs, base, f.cls, params.cm, params.enable_cm);
  f.sa = params.enable_sa ? saliency_weight : 1.0;
  return f;
}

}  // namespace

JndFactors BlockJndFactors(const DctBlock& coeffs, const JndParams& params,
                           double saliency_weight) {
  return FactorsWithTable(coeffs, params, CsfBaseTable(params.csf),
                          saliency_weight);
}

JndMap ComputeJndMap(const BlockGrid& coeffs, const JndParams& params,
                     const std::vector<double>* saliency) {
  params.Validate();
  if (saliency && saliency->size() != coeffs.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "saliency weights do not match the block grid");
  }
  JndMap map{coeffs.blocks_x, coeffs.blocks_y, {}, {}};
  map.thresholds.resize(coeffs.size());
  map.classes.resize(coeffs.size());
  const CoeffTable csf_table = CsfBaseTable(params.csf);
  const auto n = static_cast<std::ptrdiff_t>(coeffs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double sa = saliency ? (*saliency)[i] : 1.0;
    const JndFactors f =
        FactorsWithTable(coeffs.blocks[i], params, csf_table, sa);
    CoeffTable& t = map.thresholds[i];
    for (int k = 0; k < kBlockSize; ++k) {
      t[k] = params.s * f.csf[k] * f.la * f.cm[k] * f.sa;
    }
    map.classes[i] = f.cls;
  }
  return map;
}

JndMap ComputeJndMap(const ImagePlane& plane, const JndParams& params,
                     const ImagePlane* saliency_map) {
  const auto padded = PadToBlocks(ToFloat(plane));
  const BlockGrid grid = ForwardDctGrid(padded.padded);
  if (!saliency_map) return ComputeJndMap(grid, params);
  RequireSameShape(plane, *saliency_map, "saliency map");
  const auto weights = SaliencyWeights(*saliency_map, params.sa);
  return ComputeJndMap(grid, params, &weights);
}

}  // namespace jndpf
