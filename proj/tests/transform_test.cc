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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "jndpf/reference.h"
#include "jndpf/transform.h"
#include "test_util.h"

namespace jndpf {
namespace {

PixelBlock RandomBlock(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-128.0, 255.0);
  PixelBlock b;
  for (auto& v : b.values) v = d(rng);
  return b;
}

// 64x64 matrix of the 2-D transform, built from the textbook definition.
std::vector<double> DirectMatrix() {
  std::vector<double> m(64 * 64);
  auto c = [](int k) { return k == 0 ? std::sqrt(1.0 / 8) : std::sqrt(2.0 / 8); };
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          m[(u * 8 + v) * 64 + y * 8 + x] =
              c(u) * c(v) * std::cos((2 * y + 1) * u * std::numbers::pi / 16) *
              std::cos((2 * x + 1) * v * std::numbers::pi / 16);
        }
      }
    }
  }
  return m;
}

TEST(TransformTest, ZeroAndConstantBlocks) {
  EXPECT_EQ(Dct8Forward(PixelBlock{}), DctBlock{});
  EXPECT_EQ(Dct8Inverse(DctBlock{}), PixelBlock{});
  PixelBlock c;
  c.values.fill(37.0);
  const DctBlock d = Dct8Forward(c);
  EXPECT_NEAR(d[0], 8 * 37.0, 1e-12);
  for (int i = 1; i < 64; ++i) EXPECT_NEAR(d[i], 0.0, 1e-12);
  DctBlock dc;
  dc[0] = 8 * 37.0;
  for (double v : Dct8Inverse(dc).values) EXPECT_NEAR(v, 37.0, 1e-12);
}

TEST(TransformTest, MatchesDirectMatrixProduct) {
  const auto m = DirectMatrix();
  std::mt19937_64 rng(1);
  for (int n = 0; n < 200; ++n) {
    const PixelBlock b = RandomBlock(rng);
    const DctBlock fast = Dct8Forward(b);
    for (int i = 0; i < 64; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 64; ++j) acc += m[i * 64 + j] * b[j];
      ASSERT_NEAR(fast[i], acc, 1e-9);
    }
  }
}

TEST(TransformTest, DirectMatrixIsOrthonormal) {
  const auto m = DirectMatrix();
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 64; ++k) dot += m[i * 64 + k] * m[j * 64 + k];
      worst = std::max(worst, std::abs(dot - (i == j)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(TransformTest, RoundTripParsevalLinearity) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 1000; ++n) {
    const PixelBlock a = RandomBlock(rng), b = RandomBlock(rng);
    const DctBlock ca = Dct8Forward(a), cb = Dct8Forward(b);
    const PixelBlock back = Dct8Inverse(ca);
    for (int i = 0; i < 64; ++i) ASSERT_NEAR(back[i], a[i], 1e-9);
    EXPECT_NEAR(ca.Energy(), a.Energy(), 1e-6 * a.Energy());
    PixelBlock mix;
    for (int i = 0; i < 64; ++i) mix[i] = 2.5 * a[i] - 0.75 * b[i];
    const DctBlock cm = Dct8Forward(mix);
    for (int i = 0; i < 64; ++i) {
      ASSERT_NEAR(cm[i], 2.5 * ca[i] - 0.75 * cb[i], 1e-9);
    }
  }
}

TEST(TransformTest, ZigzagIsCanonicalJpegOrder) {
  // Walk the anti-diagonals, alternating direction.
  std::vector<int> expected;
  for (int s = 0; s < 15; ++s) {
    std::vector<int> diag;
    for (int r = 0; r < 8; ++r) {
      const int c = s - r;
      if (c >= 0 && c < 8) diag.push_back(r * 8 + c);
    }
    if (s % 2 == 0) std::reverse(diag.begin(), diag.end());
    expected.insert(expected.end(), diag.begin(), diag.end());
  }
  ASSERT_EQ(expected.size(), 64u);
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(kZigzagOrder[i], expected[i]) << i;
    EXPECT_EQ(ZigzagPosition()[kZigzagOrder[i]], i);
  }
  EXPECT_EQ(kZigzagOrder[0], 0);
  EXPECT_EQ(kZigzagOrder[63], 63);
}

TEST(TransformTest, PartitionSizes) {
  for (int k = 1; k <= 63; ++k) {
    const FreqPartition p = Partition(k);
    EXPECT_EQ(std::popcount(p.lf_mask), k);
    EXPECT_EQ(std::popcount(p.hf_mask), 64 - k);
    EXPECT_EQ(p.lf_mask & p.hf_mask, 0u);
    EXPECT_EQ(p.lf_mask | p.hf_mask, ~uint64_t{0});
    EXPECT_TRUE(p.IsLowFrequency(0));
  }
  EXPECT_EQ(Partition(1).lf_mask, 1u);
  EXPECT_EQ(Partition(63).hf_mask, uint64_t{1} << 63);
  // K = 10 covers the first four anti-diagonals.
  const FreqPartition k10 = Partition(10);
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      EXPECT_EQ(k10.IsLowFrequency(u * 8 + v), u + v <= 3);
    }
  }
  EXPECT_THROW(Partition(0), Error);
  EXPECT_THROW(Partition(64), Error);
}

TEST(TransformTest, GridMatchesSerialReference) {
  std::mt19937_64 rng(4);
  const FloatPlane plane = testing::RandomFloatPlane(rng, 40, 24);
  const BlockGrid fast = ForwardDctGrid(plane);
  const BlockGrid slow = reference::ForwardDctGrid(plane);
  ASSERT_EQ(fast.size(), 15u);
  for (size_t i = 0; i < fast.size(); ++i) {
    for (int k = 0; k < 64; ++k) {
      ASSERT_NEAR(fast.blocks[i][k], slow.blocks[i][k], 1e-9);
    }
  }
  const FloatPlane back = InverseDctGrid(fast);
  for (size_t i = 0; i < plane.samples().size(); ++i) {
    ASSERT_NEAR(back.samples()[i], plane.samples()[i], 1e-9);
  }
}

}  // namespace
}  // namespace jndpf
