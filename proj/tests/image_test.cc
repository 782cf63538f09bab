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

#include <fstream>
#include <random>

#include "jndpf/encoder.h"
#include "jndpf/image.h"
#include "test_util.h"

namespace jndpf {
namespace {

namespace fs = std::filesystem;
using testing::CodeOf;

void WriteBytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

TEST(ImageTest, ReadsTinyPgm) {
  ScopedTempDir dir("jndpf-test");
  const fs::path path = dir.path() / "tiny.pgm";
  WriteBytes(path, std::string("P5\n# comment\n2 2\n255\n") +
                       std::string("\x00\xff\x80\x40", 4));
  const ImagePlane p = LoadImage(path);
  ASSERT_EQ(p.width(), 2u);
  ASSERT_EQ(p.height(), 2u);
  EXPECT_EQ(std::vector<uint8_t>(p.samples().begin(), p.samples().end()),
            (std::vector<uint8_t>{0, 255, 128, 64}));
}

TEST(ImageTest, ReadsFirstY4mFrameLuma) {
  ScopedTempDir dir("jndpf-test");
  const fs::path path = dir.path() / "gray.y4m";
  std::string frame(16 * 16 + 2 * 8 * 8, '\x80');
  WriteBytes(path, "YUV4MPEG2 W16 H16 F25:1 Ip A1:1 C420jpeg\nFRAME\n" + frame +
                       "FRAME\n" + std::string(frame.size(), '\x10'));
  const ImagePlane p = LoadImage(path);
  ASSERT_EQ(p.samples().size(), 256u);
  for (uint8_t v : p.samples()) EXPECT_EQ(v, 128);
}

TEST(ImageTest, RawFullHdLumaSampleCount) {
  ScopedTempDir dir("jndpf-test");
  const fs::path path = dir.path() / "frame.yuv";
  WriteBytes(path, std::string(1920 * 1080, '\x20'));
  const ImagePlane p =
      LoadImage(path, RawGeometry{1920, 1080, ChromaLayout::k400});
  EXPECT_EQ(p.samples().size(), 2073600u);
}

TEST(ImageTest, RawNeedsGeometryAndMatchingSize) {
  ScopedTempDir dir("jndpf-test");
  const fs::path path = dir.path() / "frame.yuv";
  WriteBytes(path, std::string(100, '\x20'));
  EXPECT_EQ(CodeOf([&] { LoadImage(path); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] {
              LoadImage(path, RawGeometry{8, 8, ChromaLayout::k420});
            }),
            ErrorCode::kDimensionMismatch);
}

TEST(ImageTest, RoundTripEveryFormat) {
  std::mt19937_64 rng(11);
  ScopedTempDir dir("jndpf-test");
  for (auto [w, h] : {std::pair<size_t, size_t>{17, 9}, {64, 48}, {1, 1}}) {
    const ImagePlane src = testing::RandomImage(rng, w, h);
    for (const char* ext : {".pgm", ".png", ".y4m"}) {
      const fs::path path = dir.path() / (std::string("rt") + ext);
      SaveImage(src, path);
      EXPECT_EQ(LoadImage(path), src) << ext << " " << w << "x" << h;
    }
    for (auto chroma : {ChromaLayout::k400, ChromaLayout::k420,
                        ChromaLayout::k422, ChromaLayout::k444}) {
      const fs::path path = dir.path() / "rt.yuv";
      SaveImage(src, path, ImageFormat::kRawYuv, chroma);
      EXPECT_EQ(LoadImage(path, RawGeometry{w, h, chroma}), src);
    }
  }
}

TEST(ImageTest, MissingAndMalformedFiles) {
  ScopedTempDir dir("jndpf-test");
  EXPECT_EQ(CodeOf([&] { LoadImage(dir.path() / "none.pgm"); }),
            ErrorCode::kFileNotFound);
  const fs::path bad = dir.path() / "bad.pgm";
  WriteBytes(bad, "P2\n2 2\n255\n0 0 0 0\n");
  EXPECT_EQ(CodeOf([&] { LoadImage(bad); }), ErrorCode::kMalformedHeader);
  const fs::path short_pgm = dir.path() / "short.pgm";
  WriteBytes(short_pgm, "P5\n4 4\n255\nabc");
  EXPECT_EQ(CodeOf([&] { LoadImage(short_pgm); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] {
              SaveImage(ImagePlane(2, 2), dir.path() / "no/such/dir/x.pgm");
            }),
            ErrorCode::kUnwritablePath);
}

TEST(ImageTest, QuantizeRoundsHalfAwayAndClamps) {
  EXPECT_EQ(QuantizeSample(254.7), 255);
  EXPECT_EQ(QuantizeSample(-3.2), 0);
  EXPECT_EQ(QuantizeSample(2.5), 3);
  EXPECT_EQ(QuantizeSample(2.4999), 2);
  EXPECT_EQ(QuantizeSample(300.0), 255);
  EXPECT_EQ(QuantizeSample(std::nan("")), 0);
}

TEST(ImageTest, PaddingShapes) {
  EXPECT_EQ(PadToBlocks(ImagePlane(16, 8)).padded.width(), 16u);
  EXPECT_EQ(PadToBlocks(ImagePlane(16, 8)).padded.height(), 8u);
  const auto p = PadToBlocks(ImagePlane(17, 9));
  EXPECT_EQ(p.padded.width(), 24u);
  EXPECT_EQ(p.padded.height(), 16u);

  ImagePlane one(1, 1);
  one.at(0, 0) = 7;
  const auto q = PadToBlocks(one);
  ASSERT_EQ(q.padded.width(), 8u);
  for (uint8_t v : q.padded.samples()) EXPECT_EQ(v, 7);
}

TEST(ImageTest, PaddingReplicatesEdgesAndCropsBack) {
  std::mt19937_64 rng(3);
  const ImagePlane src = testing::RandomImage(rng, 13, 6);
  const auto p = PadToBlocks(src);
  for (size_t y = 0; y < p.padded.height(); ++y) {
    for (size_t x = 0; x < p.padded.width(); ++x) {
      EXPECT_EQ(p.padded.at(x, y),
                src.at(std::min<size_t>(x, 12), std::min<size_t>(y, 5)));
    }
  }
  EXPECT_EQ(p.Crop(), src);
}

TEST(ImageTest, FoldIsAdjointOfPadding) {
  // <Pad(x), g> == <x, Fold(g)> for random x, g.
  std::mt19937_64 rng(5);
  const FloatPlane x = testing::RandomFloatPlane(rng, 11, 5, -1, 1);
  const FloatPlane g = testing::RandomFloatPlane(rng, 16, 8, -1, 1);
  const auto padded = PadToBlocks(x).padded;
  double lhs = 0.0, rhs = 0.0;
  for (size_t i = 0; i < g.samples().size(); ++i) {
    lhs += padded.samples()[i] * g.samples()[i];
  }
  const FloatPlane folded = FoldPaddedGradient(g, 11, 5);
  for (size_t i = 0; i < x.samples().size(); ++i) {
    rhs += x.samples()[i] * folded.samples()[i];
  }
  EXPECT_NEAR(lhs, rhs, 1e-12);
}

TEST(ImageTest, PfmRoundTrip) {
  ScopedTempDir dir("jndpf-test");
  FloatPlane p(3, 2);
  for (size_t i = 0; i < 6; ++i) p.samples()[i] = 0.25 * i - 0.5;
  SavePfm(p, dir.path() / "g.pfm");
  EXPECT_EQ(LoadPfm(dir.path() / "g.pfm"), p);
}

}  // namespace
}  // namespace jndpf
