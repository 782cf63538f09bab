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

#include "jndpf/injection.h"

#include <algorithm>
#include <cmath>

#include "jndpf/error.h"

namespace jndpf {

std::string_view StrategyName(InjectionStrategy strategy) {
  switch (strategy) {
    case InjectionStrategy::kSuppressBasic: return "suppress_basic";
    case InjectionStrategy::kSuppressWeighted: return "suppress_weighted";
    case InjectionStrategy::kSuppressBlocktype: return "suppress_blocktype";
    case InjectionStrategy::kGaussian: return "gaussian";
  }
  return "suppress_weighted";
}

InjectionStrategy ParseStrategy(std::string_view name) {
  for (auto s : {InjectionStrategy::kSuppressBasic,
                 InjectionStrategy::kSuppressWeighted,
                 InjectionStrategy::kSuppressBlocktype,
                 InjectionStrategy::kGaussian}) {
    if (StrategyName(s) == name) return s;
  }
  Fail(ErrorCode::kConfig, "unknown injection strategy: " + std::string(name));
}

CoeffTable InjectionConfig::DefaultPTable() {
  CoeffTable table{};
  for (int pos = 0; pos < kBlockSize; ++pos) {
    table[kZigzagOrder[pos]] = 0.3 + 0.7 * pos / (kBlockSize - 1);
  }
  return table;
}

std::array<CoeffTable, 3> InjectionConfig::DefaultClassTables() {
  const CoeffTable ramp = DefaultPTable();
  std::array<CoeffTable, 3> tables{};
  const double scale[3] = {0.6, 0.8, 1.0};
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < kBlockSize; ++i) tables[c][i] = ramp[i] * scale[c];
  }
  return tables;
}

void InjectionConfig::Validate() const {
  auto check = [](const CoeffTable& t, const char* name) {
    for (double p : t) {
      if (!(p >= 0.0 && p <= 1.0)) {
        Fail(ErrorCode::kConfig, std::string("[injection] ") + name +
                                     " weights must lie in [0, 1]");
      }
    }
  };
  check(p_table, "p_table");
  check(p_tables_by_class[0], "p_table_plane");
  check(p_tables_by_class[1], "p_table_edge");
  check(p_tables_by_class[2], "p_table_texture");
  if (!(gaussian.sigma_max > 0.0) || !std::isfinite(gaussian.sigma_max) ||
      !(gaussian.j_ref > 0.0) || !std::isfinite(gaussian.j_ref)) {
    Fail(ErrorCode::kConfig,
         "[injection] gaussian sigma_max and j_ref must be positive");
  }
}

double SuppressCoeff(double c, double j, double p) {
  if (std::abs(c) < j) return 0.0;
  const double magnitude = std::sqrt(c * c - p * j * j);
  return c < 0.0 ? -magnitude : magnitude;
}

DctBlock InjectBlock(const DctBlock& coeffs, const CoeffTable& jnd,
                     const BlockClass& cls, const InjectionConfig& cfg) {
  DctBlock out;
  switch (cfg.strategy) {
    case InjectionStrategy::kSuppressBasic:
      for (int i = 0; i < kBlockSize; ++i) {
        out[i] = SuppressCoeff(coeffs[i], jnd[i], 1.0);
      }
      break;
    case InjectionStrategy::kSuppressWeighted:
      for (int i = 0; i < kBlockSize; ++i) {
        out[i] = SuppressCoeff(coeffs[i], jnd[i], cfg.p_table[i]);
      }
      break;
    case InjectionStrategy::kSuppressBlocktype: {
      const CoeffTable& p = cfg.TableFor(cls.label);
      for (int i = 0; i < kBlockSize; ++i) {
        out[i] = SuppressCoeff(coeffs[i], jnd[i], p[i]);
      }
      break;
    }
    case InjectionStrategy::kGaussian:
      Fail(ErrorCode::kInvalidArgument,
           "gaussian injection operates on pixels, not coefficient blocks");
  }
  return out;
}

double MeanAcThreshold(const CoeffTable& jnd) {
  double sum = 0.0;
  for (int i = 1; i < kBlockSize; ++i) sum += jnd[i];
  return sum / (kBlockSize - 1);
}

double GaussianSigma(const CoeffTable& jnd, const GaussianParams& g) {
  return g.sigma_max * std::clamp(MeanAcThreshold(jnd) / g.j_ref, 0.0, 1.0);
}

std::vector<double> GaussianKernel(double sigma) {
  if (sigma < 1e-6) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

// Filters one block of `in` into `out`, reading the immutable input with
// edge replication. Separable: horizontal pass over the rows the vertical
// pass needs, then vertical.
void FilterBlock(const ImagePlane& in, size_t bx, size_t by,
                 const std::vector<double>& kernel, FloatPlane& out) {
  const int radius = static_cast<int>(kernel.size() / 2);
  const auto w = static_cast<std::ptrdiff_t>(in.width());
  const auto h = static_cast<std::ptrdiff_t>(in.height());
  const std::ptrdiff_t x0 = bx * kBlockDim;
  const std::ptrdiff_t y0 = by * kBlockDim;
  const int rows = kBlockDim + 2 * radius;
  std::vector<double> tmp(rows * kBlockDim);
  for (int r = 0; r < rows; ++r) {
    const auto sy = std::clamp<std::ptrdiff_t>(y0 - radius + r, 0, h - 1);
    const auto row = in.Row(sy);
    for (int c = 0; c < kBlockDim; ++c) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        const auto sx = std::clamp<std::ptrdiff_t>(x0 + c + t, 0, w - 1);
        acc += kernel[t + radius] * row[sx];
      }
      tmp[r * kBlockDim + c] = acc;
    }
  }
  for (int r = 0; r < kBlockDim; ++r) {
    for (int c = 0; c < kBlockDim; ++c) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        acc += kernel[t + radius] * tmp[(r + radius + t) * kBlockDim + c];
      }
      out.at(x0 + c, y0 + r) = acc;
    }
  }
}

FloatPlane GaussianFiltered(const ImagePlane& plane, const JndMap& jnd_map,
                            const InjectionConfig& cfg) {
  const size_t bx_count = RoundUpToBlock(plane.width()) / kBlockDim;
  const size_t by_count = RoundUpToBlock(plane.height()) / kBlockDim;
  if (jnd_map.blocks_x != bx_count || jnd_map.blocks_y != by_count) {
    Fail(ErrorCode::kDimensionMismatch, "JND map does not match the image");
  }
  FloatPlane out(bx_count * kBlockDim, by_count * kBlockDim);
  const auto n = static_cast<std::ptrdiff_t>(bx_count * by_count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto kernel =
        GaussianKernel(GaussianSigma(jnd_map.thresholds[i], cfg.gaussian));
    FilterBlock(plane, i % bx_count, i / bx_count, kernel, out);
  }
  return out;
}

ImagePlane CropAndQuantize(const FloatPlane& padded, size_t w, size_t h) {
  ImagePlane out(w, h);
  for (size_t y = 0; y < h; ++y) {
    const auto src = padded.Row(y);
    auto dst = out.Row(y);
    for (size_t x = 0; x < w; ++x) dst[x] = QuantizeSample(src[x]);
  }
  return out;
}

}  // namespace

ImagePlane GaussianInject(const ImagePlane& plane, const JndMap& jnd_map,
                          const InjectionConfig& cfg) {
  cfg.Validate();
  return CropAndQuantize(GaussianFiltered(plane, jnd_map, cfg), plane.width(),
                         plane.height());
}

PrefilterTrace TracePrefilter(const ImagePlane& plane, const JndParams& params,
                              const InjectionConfig& cfg,
                              const ImagePlane* saliency_map) {
  cfg.Validate();
  PrefilterTrace trace;
  const auto padded = PadToBlocks(ToFloat(plane));
  trace.original = ForwardDctGrid(padded.padded);
  if (saliency_map) {
    RequireSameShape(plane, *saliency_map, "saliency map");
    const auto weights = SaliencyWeights(*saliency_map, params.sa);
    trace.jnd = ComputeJndMap(trace.original, params, &weights);
  } else {
    trace.jnd = ComputeJndMap(trace.original, params);
  }

  if (cfg.strategy == InjectionStrategy::kGaussian) {
    trace.unclamped = GaussianFiltered(plane, trace.jnd, cfg);
    trace.filtered = ForwardDctGrid(trace.unclamped);
  } else {
    trace.filtered.blocks_x = trace.original.blocks_x;
    trace.filtered.blocks_y = trace.original.blocks_y;
    trace.filtered.blocks.resize(trace.original.size());
    const auto n = static_cast<std::ptrdiff_t>(trace.original.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      trace.filtered.blocks[i] =
          InjectBlock(trace.original.blocks[i], trace.jnd.thresholds[i],
                      trace.jnd.classes[i], cfg);
    }
    trace.unclamped = InverseDctGrid(trace.filtered);
  }
  trace.output = CropAndQuantize(trace.unclamped, plane.width(), plane.height());
  return trace;
}

ImagePlane ApplyPrefilter(const ImagePlane& plane, const JndParams& params,
                          const InjectionConfig& cfg,
                          const ImagePlane* saliency_map) {
  return TracePrefilter(plane, params, cfg, saliency_map).output;
}

}  // namespace jndpf
