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

#include <cmath>
#include <random>

#include "jndpf/injection.h"
#include "jndpf/parallel.h"
#include "jndpf/reference.h"
#include "test_util.h"

namespace jndpf {
namespace {

TEST(SuppressCoeffTest, Examples) {
  for (double p : {0.0, 0.3, 1.0}) EXPECT_EQ(SuppressCoeff(5, 6, p), 0.0);
  EXPECT_EQ(SuppressCoeff(10, 6, 1), 8.0);
  EXPECT_EQ(SuppressCoeff(-10, 6, 0), -10.0);
  EXPECT_EQ(SuppressCoeff(-10, 6, 1), -8.0);
  // At the threshold the coefficient survives, shrunk.
  EXPECT_EQ(SuppressCoeff(6, 6, 1), 0.0);
  EXPECT_NEAR(SuppressCoeff(6, 6, 0.75), 3.0, 1e-15);
}

TEST(SuppressCoeffTest, RandomTriples) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(-300, 300), j(0, 80), p(0, 1);
  for (int n = 0; n < 10000; ++n) {
    const double co = c(rng), jt = j(rng), pv = p(rng);
    const double out = SuppressCoeff(co, jt, pv);
    if (std::abs(co) < jt) {
      ASSERT_EQ(out, 0.0);
    } else {
      const double mag = std::sqrt(co * co - pv * jt * jt);
      ASSERT_EQ(out, co < 0 ? -mag : mag);
      ASSERT_LE(std::abs(out), std::abs(co));
      if (out != 0) ASSERT_EQ(std::signbit(out), std::signbit(co));
    }
  }
}

DctBlock RandomCoeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-200, 200);
  DctBlock b;
  for (auto& v : b.values) v = d(rng);
  return b;
}

CoeffTable RandomThresholds(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0, 100);
  CoeffTable t;
  for (auto& v : t) v = d(rng);
  return t;
}

TEST(InjectBlockTest, StrategiesAndEnergy) {
  std::mt19937_64 rng(22);
  InjectionConfig basic, weighted, blocktype;
  basic.strategy = InjectionStrategy::kSuppressBasic;
  blocktype.strategy = InjectionStrategy::kSuppressBlocktype;
  InjectionConfig ones = weighted;
  ones.p_table.fill(1.0);
  for (int n = 0; n < 2000; ++n) {
    const DctBlock c = RandomCoeffs(rng);
    const CoeffTable j = RandomThresholds(rng);
    const BlockClass cls{static_cast<BlockLabel>(n % 3), 0, 0};
    ASSERT_EQ(InjectBlock(c, j, cls, basic), InjectBlock(c, j, cls, ones));
    for (const auto* cfg : {&basic, &weighted, &blocktype}) {
      const DctBlock out = InjectBlock(c, j, cls, *cfg);
      ASSERT_LE(out.Energy(), c.Energy());
      for (int k = 0; k < 64; ++k) {
        ASSERT_LE(std::abs(out[k]), std::abs(c[k]));
      }
    }
    const DctBlock bt = InjectBlock(c, j, cls, blocktype);
    const CoeffTable& p = blocktype.TableFor(cls.label);
    for (int k = 0; k < 64; ++k) ASSERT_EQ(bt[k], SuppressCoeff(c[k], j[k], p[k]));
  }
}

TEST(InjectBlockTest, DeadZoneAndZeroWeights) {
  std::mt19937_64 rng(23);
  const DctBlock c = RandomCoeffs(rng);
  CoeffTable big;
  big.fill(1000.0);
  EXPECT_EQ(InjectBlock(c, big, {}, InjectionConfig{}), DctBlock{});
  InjectionConfig zero;
  zero.p_table.fill(0.0);
  const CoeffTable j = RandomThresholds(rng);
  const DctBlock out = InjectBlock(c, j, {}, zero);
  for (int k = 0; k < 64; ++k) {
    EXPECT_EQ(out[k], std::abs(c[k]) < j[k] ? 0.0 : c[k]);
  }
  InjectionConfig gauss;
  gauss.strategy = InjectionStrategy::kGaussian;
  EXPECT_THROW(InjectBlock(c, j, {}, gauss), Error);
}

TEST(InjectionConfigTest, DefaultTables) {
  const CoeffTable ramp = InjectionConfig::DefaultPTable();
  EXPECT_DOUBLE_EQ(ramp[0], 0.3);
  EXPECT_DOUBLE_EQ(ramp[63], 1.0);
  for (int pos = 1; pos < 64; ++pos) {
    EXPECT_NEAR(ramp[kZigzagOrder[pos]] - ramp[kZigzagOrder[pos - 1]],
                0.7 / 63, 1e-12);
  }
  const auto cls = InjectionConfig::DefaultClassTables();
  for (int i = 0; i < 64; ++i) {
    EXPECT_DOUBLE_EQ(cls[0][i], 0.6 * ramp[i]);
    EXPECT_DOUBLE_EQ(cls[1][i], 0.8 * ramp[i]);
    EXPECT_DOUBLE_EQ(cls[2][i], ramp[i]);
  }
  InjectionConfig bad;
  bad.p_table[5] = 1.5;
  EXPECT_EQ(testing::CodeOf([&] { bad.Validate(); }), ErrorCode::kConfig);
  EXPECT_EQ(ParseStrategy("gaussian"), InjectionStrategy::kGaussian);
  EXPECT_THROW(ParseStrategy("median"), Error);
}

TEST(GaussianTest, KernelShape) {
  EXPECT_EQ(GaussianKernel(0.0), std::vector<double>{1.0});
  for (double sigma : {0.3, 1.0, 1.5, 2.2}) {
    const auto k = GaussianKernel(sigma);
    const int radius = static_cast<int>(std::ceil(3 * sigma));
    ASSERT_EQ(k.size(), static_cast<size_t>(2 * radius + 1));
    double sum = 0;
    for (double v : k) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_NEAR(k[radius + 1] / k[radius], std::exp(-0.5 / (sigma * sigma)),
                1e-12);
  }
}

TEST(GaussianTest, SigmaLaw) {
  GaussianParams g;
  CoeffTable t;
  t.fill(30.0);
  t[0] = 1e6;  // DC does not count
  EXPECT_DOUBLE_EQ(GaussianSigma(t, g), 1.5 * 30.0 / 60.0);
  t.fill(200.0);
  EXPECT_DOUBLE_EQ(GaussianSigma(t, g), g.sigma_max);
  t.fill(0.0);
  EXPECT_EQ(GaussianSigma(t, g), 0.0);
}

JndMap UniformMap(const ImagePlane& image, double value) {
  JndMap map;
  map.blocks_x = RoundUpToBlock(image.width()) / 8;
  map.blocks_y = RoundUpToBlock(image.height()) / 8;
  CoeffTable t;
  t.fill(value);
  map.thresholds.assign(map.blocks_x * map.blocks_y, t);
  map.classes.resize(map.thresholds.size());
  return map;
}

TEST(GaussianTest, IdentityConstantAndSaturation) {
  const ImagePlane image = LoadImage(testing::DataDir() / "cat.pgm");
  InjectionConfig cfg;
  cfg.strategy = InjectionStrategy::kGaussian;
  EXPECT_EQ(GaussianInject(image, UniformMap(image, 1e-12), cfg), image);

  ImagePlane flat(21, 13);
  std::fill(flat.samples().begin(), flat.samples().end(), 77);
  EXPECT_EQ(GaussianInject(flat, UniformMap(flat, 1000.0), cfg), flat);

  // Saturated everywhere: equals a full 2-D convolution at sigma_max.
  const JndMap sat = UniformMap(image, 2 * cfg.gaussian.j_ref);
  const ImagePlane fast = GaussianInject(image, sat, cfg);
  const FloatPlane slow = reference::GaussianFilter(image, sat, cfg.gaussian);
  for (size_t y = 0; y < image.height(); ++y) {
    for (size_t x = 0; x < image.width(); ++x) {
      ASSERT_LE(std::abs(fast.at(x, y) - slow.at(x, y)), 0.5 + 1e-9);
    }
  }
  EXPECT_THROW(GaussianInject(image, UniformMap(flat, 1.0), cfg), Error);
}

const InjectionStrategy kAllStrategies[] = {
    InjectionStrategy::kSuppressBasic, InjectionStrategy::kSuppressWeighted,
    InjectionStrategy::kSuppressBlocktype, InjectionStrategy::kGaussian};

TEST(PrefilterTest, ConstantImagesPassThrough) {
  for (int level : {0, 1, 17, 128, 254, 255}) {
    ImagePlane flat(37, 19);
    std::fill(flat.samples().begin(), flat.samples().end(), level);
    for (auto s : kAllStrategies) {
      InjectionConfig cfg;
      cfg.strategy = s;
      EXPECT_EQ(ApplyPrefilter(flat, JndParams{}, cfg), flat)
          << level << " " << StrategyName(s);
    }
  }
}

TEST(PrefilterTest, ZeroWeightsAndTinyThresholdsAreNearIdentity) {
  std::mt19937_64 rng(24);
  const ImagePlane image = testing::RandomImage(rng, 45, 30);
  JndParams params;
  params.s = 1e-9;
  InjectionConfig cfg;
  cfg.p_table.fill(0.0);
  const ImagePlane out = ApplyPrefilter(image, params, cfg);
  for (size_t i = 0; i < image.samples().size(); ++i) {
    EXPECT_LE(std::abs(out.samples()[i] - image.samples()[i]), 1);
  }
}

TEST(PrefilterTest, MatchesSerialReference) {
  const ImagePlane image = LoadImage(testing::DataDir() / "astronaut.pgm");
  ImagePlane saliency(image.width(), image.height());
  for (size_t y = 0; y < image.height(); ++y) {
    for (size_t x = 0; x < image.width(); ++x) saliency.at(x, y) = x + y;
  }
  for (auto s : kAllStrategies) {
    InjectionConfig cfg;
    cfg.strategy = s;
    for (const ImagePlane* sal : {static_cast<const ImagePlane*>(nullptr),
                                  static_cast<const ImagePlane*>(&saliency)}) {
      const PrefilterTrace fast = TracePrefilter(image, JndParams{}, cfg, sal);
      const FloatPlane slow =
          reference::PrefilterUnclamped(image, JndParams{}, cfg, sal);
      ASSERT_TRUE(fast.unclamped.SameShape(slow));
      for (size_t i = 0; i < slow.samples().size(); ++i) {
        ASSERT_NEAR(fast.unclamped.samples()[i], slow.samples()[i], 1e-9)
            << StrategyName(s);
      }
      EXPECT_EQ(fast.output, reference::Prefilter(image, JndParams{}, cfg, sal));
    }
  }
}

TEST(PrefilterTest, EnergyNonIncreasingUnderReapplication) {
  const ImagePlane image = LoadImage(testing::DataDir() / "gravel.pgm");
  for (auto s : kAllStrategies) {
    if (s == InjectionStrategy::kGaussian) continue;
    InjectionConfig cfg;
    cfg.strategy = s;
    const PrefilterTrace once = TracePrefilter(image, JndParams{}, cfg);
    const PrefilterTrace twice = TracePrefilter(once.output, JndParams{}, cfg);
    for (size_t b = 0; b < twice.original.size(); ++b) {
      ASSERT_LE(twice.filtered.blocks[b].Energy(),
                twice.original.blocks[b].Energy());
    }
    // Energy of filter(filter(x)) against the stored filter(x).
    double before = 0, after = 0;
    for (const auto& blk : twice.original.blocks) before += blk.Energy();
    for (const auto& blk : twice.filtered.blocks) after += blk.Energy();
    EXPECT_LT(after, before) << StrategyName(s);
  }
}

TEST(PrefilterTest, IndependentOfThreadCount) {
  const ImagePlane image = LoadImage(testing::DataDir() / "chelsea.pgm");
  for (auto s : kAllStrategies) {
    InjectionConfig cfg;
    cfg.strategy = s;
    SetThreadCount(1);
    const ImagePlane a = ApplyPrefilter(image, JndParams{}, cfg);
    SetThreadCount(4);
    const ImagePlane b = ApplyPrefilter(image, JndParams{}, cfg);
    SetThreadCount(0);
    EXPECT_EQ(a, b);
  }
}

}  // namespace
}  // namespace jndpf
