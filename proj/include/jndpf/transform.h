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

#ifndef JNDPF_TRANSFORM_H_
#define JNDPF_TRANSFORM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "jndpf/image.h"

namespace jndpf {

inline constexpr int kBlockDim = 8;
inline constexpr int kBlockSize = kBlockDim * kBlockDim;

// 8x8 array of reals, row-major. The tag keeps pixel-domain and
// coefficient-domain blocks from being mixed up.
template <typename Tag>
struct Block8 {
  std::array<double, kBlockSize> values{};

  double& operator()(int row, int col) { return values[row * kBlockDim + col]; }
  double operator()(int row, int col) const {
    return values[row * kBlockDim + col];
  }
  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }

  double Energy() const {
    double e = 0.0;
    for (double v : values) e += v * v;
    return e;
  }

  friend bool operator==(const Block8&, const Block8&) = default;
};

struct PixelTag {};
struct CoeffTag {};
using PixelBlock = Block8<PixelTag>;
// Coefficients indexed (u, v): u is the vertical frequency (row), v the
// horizontal one; (0, 0) is DC.
using DctBlock = Block8<CoeffTag>;

// Per-coefficient table over an 8x8 block (thresholds, weights, ...).
using CoeffTable = std::array<double, kBlockSize>;

// Orthonormal DCT-II basis: entry [k * 8 + n] = c(k) cos((2n + 1) k pi / 16)
// with c(0) = sqrt(1/8), c(k) = sqrt(2/8).
const std::array<double, kBlockSize>& DctBasis();

DctBlock Dct8Forward(const PixelBlock& block);
PixelBlock Dct8Inverse(const DctBlock& coeffs);

// Zigzag scan: kZigzagOrder[position] is the row-major coefficient index.
inline constexpr std::array<uint8_t, kBlockSize> kZigzagOrder = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

// Inverse of kZigzagOrder: position of each row-major index.
const std::array<uint8_t, kBlockSize>& ZigzagPosition();

// Low/high frequency split at zigzag cutoff K: the first K scan positions
// (DC included) are LF, the rest HF.
struct FreqPartition {
  int cutoff = 0;
  uint64_t lf_mask = 0;  // bit i set <=> row-major index i is LF
  uint64_t hf_mask = 0;

  bool IsLowFrequency(int index) const { return (lf_mask >> index) & 1u; }
};

FreqPartition Partition(int cutoff);

// All 8x8 blocks of a padded plane, in raster order.
struct BlockGrid {
  size_t blocks_x = 0;
  size_t blocks_y = 0;
  std::vector<DctBlock> blocks;

  size_t size() const { return blocks.size(); }
  DctBlock& at(size_t bx, size_t by) { return blocks[by * blocks_x + bx]; }
  const DctBlock& at(size_t bx, size_t by) const {
    return blocks[by * blocks_x + bx];
  }
};

PixelBlock ExtractBlock(const FloatPlane& plane, size_t bx, size_t by);
void StoreBlock(const PixelBlock& block, size_t bx, size_t by,
                FloatPlane& plane);

// Block-parallel transforms of a plane whose dimensions are multiples of 8.
BlockGrid ForwardDctGrid(const FloatPlane& padded);
FloatPlane InverseDctGrid(const BlockGrid& grid);

}  // namespace jndpf

#endif  // JNDPF_TRANSFORM_H_
