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

#include "jndpf/reference.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jndpf/error.h"
#include "jndpf/ssim.h"

namespace jndpf::reference {
namespace {

double Basis(int k, int n) {
  const double c = k == 0 ? std::sqrt(0.125) : 0.5;
  return c * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
}

}  // namespace

DctBlock DctForward(const PixelBlock& block) {
  DctBlock out;
  for (int u = 0; u < kBlockDim; ++u) {
    for (int v = 0; v < kBlockDim; ++v) {
      double acc = 0.0;
      for (int y = 0; y < kBlockDim; ++y) {
        for (int x = 0; x < kBlockDim; ++x) {
          acc += Basis(u, y) * Basis(v, x) * block(y, x);
        }
      }
      out(u, v) = acc;
    }
  }
  return out;
}

PixelBlock DctInverse(const DctBlock& coeffs) {
  PixelBlock out;
  for (int y = 0; y < kBlockDim; ++y) {
    for (int x = 0; x < kBlockDim; ++x) {
      double acc = 0.0;
      for (int u = 0; u < kBlockDim; ++u) {
        for (int v = 0; v < kBlockDim; ++v) {
          acc += Basis(u, y) * Basis(v, x) * coeffs(u, v);
        }
      }
      out(y, x) = acc;
    }
  }
  return out;
}

BlockGrid ForwardDctGrid(const FloatPlane& padded) {
  if (padded.width() % kBlockDim || padded.height() % kBlockDim) {
    Fail(ErrorCode::kInvalidArgument, "plane is not block aligned");
  }
  BlockGrid grid;
  grid.blocks_x = padded.width() / kBlockDim;
  grid.blocks_y = padded.height() / kBlockDim;
  for (size_t by = 0; by < grid.blocks_y; ++by) {
    for (size_t bx = 0; bx < grid.blocks_x; ++bx) {
      PixelBlock b;
      for (int r = 0; r < kBlockDim; ++r) {
        for (int c = 0; c < kBlockDim; ++c) {
          b(r, c) = padded.at(bx * kBlockDim + c, by * kBlockDim + r);
        }
      }
      grid.blocks.push_back(DctForward(b));
    }
  }
  return grid;
}

FloatPlane InverseDctGrid(const BlockGrid& grid) {
  FloatPlane out(grid.blocks_x * kBlockDim, grid.blocks_y * kBlockDim);
  for (size_t by = 0; by < grid.blocks_y; ++by) {
    for (size_t bx = 0; bx < grid.blocks_x; ++bx) {
      const PixelBlock b = DctInverse(grid.at(bx, by));
      for (int r = 0; r < kBlockDim; ++r) {
        for (int c = 0; c < kBlockDim; ++c) {
          out.at(bx * kBlockDim + c, by * kBlockDim + r) = b(r, c);
        }
      }
    }
  }
  return out;
}

JndMap ComputeJndMap(const BlockGrid& coeffs, const JndParams& params,
                     const std::vector<double>* saliency) {
  params.Validate();
  JndMap map{coeffs.blocks_x, coeffs.blocks_y, {}, {}};
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const double sa = saliency ? saliency->at(i) : 1.0;
    const JndFactors f = BlockJndFactors(coeffs.blocks[i], params, sa);
    CoeffTable t;
    for (int k = 0; k < kBlockSize; ++k) {
      t[k] = params.s * f.csf[k] * f.la * f.cm[k] * f.sa;
    }
    map.thresholds.push_back(t);
    map.classes.push_back(f.cls);
  }
  return map;
}

FloatPlane GaussianFilter(const ImagePlane& plane, const JndMap& jnd_map,
                          const GaussianParams& g) {
  const auto w = static_cast<long>(plane.width());
  const auto h = static_cast<long>(plane.height());
  FloatPlane out(jnd_map.blocks_x * kBlockDim, jnd_map.blocks_y * kBlockDim);
  for (size_t by = 0; by < jnd_map.blocks_y; ++by) {
    for (size_t bx = 0; bx < jnd_map.blocks_x; ++bx) {
      const auto k1 = GaussianKernel(
          GaussianSigma(jnd_map.thresholds[by * jnd_map.blocks_x + bx], g));
      const long radius = static_cast<long>(k1.size() / 2);
      for (int r = 0; r < kBlockDim; ++r) {
        for (int c = 0; c < kBlockDim; ++c) {
          const long x = bx * kBlockDim + c;
          const long y = by * kBlockDim + r;
          double acc = 0.0;
          for (long dy = -radius; dy <= radius; ++dy) {
            for (long dx = -radius; dx <= radius; ++dx) {
              const long sx = std::clamp(x + dx, 0L, w - 1);
              const long sy = std::clamp(y + dy, 0L, h - 1);
              acc += k1[dy + radius] * k1[dx + radius] * plane.at(sx, sy);
            }
          }
          out.at(x, y) = acc;
        }
      }
    }
  }
  return out;
}

FloatPlane PrefilterUnclamped(const ImagePlane& plane, const JndParams& params,
                              const InjectionConfig& cfg,
                              const ImagePlane* saliency_map) {
  cfg.Validate();
  const auto padded = PadToBlocks(ToFloat(plane));
  const BlockGrid coeffs = reference::ForwardDctGrid(padded.padded);
  std::vector<double> weights;
  if (saliency_map) weights = SaliencyWeights(*saliency_map, params.sa);
  const JndMap map =
      reference::ComputeJndMap(coeffs, params, saliency_map ? &weights : nullptr);
  if (cfg.strategy == InjectionStrategy::kGaussian) {
    return GaussianFilter(plane, map, cfg.gaussian);
  }
  BlockGrid filtered = coeffs;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const CoeffTable* p = &cfg.p_table;
    CoeffTable ones;
    ones.fill(1.0);
    if (cfg.strategy == InjectionStrategy::kSuppressBasic) p = &ones;
    if (cfg.strategy == InjectionStrategy::kSuppressBlocktype) {
      p = &cfg.TableFor(map.classes[i].label);
    }
    for (int k = 0; k < kBlockSize; ++k) {
      const double c = coeffs.blocks[i][k];
      const double j = map.thresholds[i][k];
      filtered.blocks[i][k] =
          std::abs(c) < j ? 0.0
                          : std::copysign(std::sqrt(c * c - (*p)[k] * j * j), c);
    }
  }
  return reference::InverseDctGrid(filtered);
}

ImagePlane Prefilter(const ImagePlane& plane, const JndParams& params,
                     const InjectionConfig& cfg,
                     const ImagePlane* saliency_map) {
  const FloatPlane full = PrefilterUnclamped(plane, params, cfg, saliency_map);
  ImagePlane out(plane.width(), plane.height());
  for (size_t y = 0; y < plane.height(); ++y) {
    for (size_t x = 0; x < plane.width(); ++x) {
      out.at(x, y) = QuantizeSample(full.at(x, y));
    }
  }
  return out;
}

FloatPlane ValidFilter(const FloatPlane& in) {
  const auto& k = SsimWindow();
  if (in.width() < kSsimWindow || in.height() < kSsimWindow) {
    Fail(ErrorCode::kImageTooSmall, "plane smaller than the window");
  }
  FloatPlane out(in.width() - kSsimWindow + 1, in.height() - kSsimWindow + 1);
  for (size_t y = 0; y < out.height(); ++y) {
    for (size_t x = 0; x < out.width(); ++x) {
      double acc = 0.0;
      for (int dy = 0; dy < kSsimWindow; ++dy) {
        for (int dx = 0; dx < kSsimWindow; ++dx) {
          acc += k[dy] * k[dx] * in.at(x + dx, y + dy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace jndpf::reference
