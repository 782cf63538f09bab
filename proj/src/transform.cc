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

#include "jndpf/transform.h"

#include <cmath>
#include <numbers>

#include "jndpf/error.h"

namespace jndpf {
namespace {

std::array<double, kBlockSize> MakeBasis() {
  std::array<double, kBlockSize> basis{};
  for (int k = 0; k < kBlockDim; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / kBlockDim)
                                : std::sqrt(2.0 / kBlockDim);
    for (int n = 0; n < kBlockDim; ++n) {
      basis[k * kBlockDim + n] =
          scale * std::cos((2 * n + 1) * k * std::numbers::pi / (2 * kBlockDim));
    }
  }
  return basis;
}

// Forward: M X M^T. Inverse: M^T C M. Applied as column then row passes.
template <typename Out, typename In>
Out Separable(const In& in, bool inverse) {
  const auto& m = DctBasis();
  std::array<double, kBlockSize> tmp{};
  for (int r = 0; r < kBlockDim; ++r) {
    for (int c = 0; c < kBlockDim; ++c) {
      double acc = 0.0;
      for (int k = 0; k < kBlockDim; ++k) {
        acc += (inverse ? m[k * kBlockDim + r] : m[r * kBlockDim + k]) *
               in(k, c);
      }
      tmp[r * kBlockDim + c] = acc;
    }
  }
  Out out;
  for (int r = 0; r < kBlockDim; ++r) {
    for (int c = 0; c < kBlockDim; ++c) {
      double acc = 0.0;
      for (int k = 0; k < kBlockDim; ++k) {
        acc += tmp[r * kBlockDim + k] *
               (inverse ? m[k * kBlockDim + c] : m[c * kBlockDim + k]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace

const std::array<double, kBlockSize>& DctBasis() {
  static const auto basis = MakeBasis();
  return basis;
}

DctBlock Dct8Forward(const PixelBlock& block) {
  return Separable<DctBlock>(block, /*inverse=*/false);
}

PixelBlock Dct8Inverse(const DctBlock& coeffs) {
  return Separable<PixelBlock>(coeffs, /*inverse=*/true);
}

const std::array<uint8_t, kBlockSize>& ZigzagPosition() {
  static const auto position = [] {
    std::array<uint8_t, kBlockSize> p{};
    for (int i = 0; i < kBlockSize; ++i) p[kZigzagOrder[i]] = i;
    return p;
  }();
  return position;
}

FreqPartition Partition(int cutoff) {
  if (cutoff < 1 || cutoff > kBlockSize - 1) {
    Fail(ErrorCode::kInvalidArgument,
         "zigzag cutoff K must be in [1, 63], got " + std::to_string(cutoff));
  }
  FreqPartition part;
  part.cutoff = cutoff;
  for (int pos = 0; pos < kBlockSize; ++pos) {
    const uint64_t bit = uint64_t{1} << kZigzagOrder[pos];
    (pos < cutoff ? part.lf_mask : part.hf_mask) |= bit;
  }
  return part;
}

PixelBlock ExtractBlock(const FloatPlane& plane, size_t bx, size_t by) {
  PixelBlock block;
  for (int r = 0; r < kBlockDim; ++r) {
    const auto row = plane.Row(by * kBlockDim + r);
    for (int c = 0; c < kBlockDim; ++c) block(r, c) = row[bx * kBlockDim + c];
  }
  return block;
}

void StoreBlock(const PixelBlock& block, size_t bx, size_t by,
                FloatPlane& plane) {
  for (int r = 0; r < kBlockDim; ++r) {
    auto row = plane.Row(by * kBlockDim + r);
    for (int c = 0; c < kBlockDim; ++c) row[bx * kBlockDim + c] = block(r, c);
  }
}

BlockGrid ForwardDctGrid(const FloatPlane& padded) {
  if (padded.width() % kBlockDim || padded.height() % kBlockDim) {
    Fail(ErrorCode::kInvalidArgument, "plane is not block aligned");
  }
  BlockGrid grid{padded.width() / kBlockDim, padded.height() / kBlockDim, {}};
  grid.blocks.resize(grid.blocks_x * grid.blocks_y);
  const auto n = static_cast<std::ptrdiff_t>(grid.blocks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const size_t bx = i % grid.blocks_x;
    const size_t by = i / grid.blocks_x;
    grid.blocks[i] = Dct8Forward(ExtractBlock(padded, bx, by));
  }
  return grid;
}

FloatPlane InverseDctGrid(const BlockGrid& grid) {
  FloatPlane out(grid.blocks_x * kBlockDim, grid.blocks_y * kBlockDim);
  const auto n = static_cast<std::ptrdiff_t>(grid.blocks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    StoreBlock(Dct8Inverse(grid.blocks[i]), i % grid.blocks_x,
               i / grid.blocks_x, out);
  }
  return out;
}

}  // namespace jndpf
