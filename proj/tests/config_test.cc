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

#include "jndpf/config.h"
#include "jndpf/encoder.h"
#include "test_util.h"

namespace jndpf {
namespace {

namespace fs = std::filesystem;
using testing::CodeOf;

TEST(ConfigTest, DefaultsMatchBuiltins) {
  const Config cfg = LoadConfig("default");
  EXPECT_EQ(cfg.jnd.s, 1.0);
  EXPECT_EQ(cfg.jnd.csf.gain, 0.25);
  EXPECT_EQ(cfg.jnd.cm.cap, 4.0);
  EXPECT_EQ(cfg.injection.strategy, InjectionStrategy::kSuppressWeighted);
  EXPECT_EQ(cfg.injection.p_table, InjectionConfig::DefaultPTable());
  EXPECT_EQ(cfg.loss.lambda1, 1.0);
  EXPECT_EQ(cfg.loss.lambda2, 0.16);
  EXPECT_EQ(cfg.loss.lambda3, 0.02);
  EXPECT_EQ(cfg.loss.cutoff, 10);
  EXPECT_FALSE(cfg.saliency_map.has_value());
  EXPECT_EQ(cfg.bench.qps, (std::vector<int>{27, 32, 37, 42}));
  ASSERT_EQ(cfg.bench.variants.size(), 1u);
  EXPECT_TRUE(cfg.bench.variants[0].identity);
  EXPECT_TRUE(cfg.bench.encoders.empty());
  EXPECT_EQ(cfg.bench.anchor, "identity");
}

TEST(ConfigTest, ShippedDefaultFileMatchesBuiltins) {
  const Config a = LoadConfig(JNDPF_CONFIG_DIR "/default.ini");
  const Config b = LoadConfig("default");
  const JndParams& x = a.jnd;
  const JndParams& y = b.jnd;
  EXPECT_EQ(x.s, y.s);
  EXPECT_EQ(x.csf.a, y.csf.a);
  EXPECT_EQ(x.csf.b, y.csf.b);
  EXPECT_EQ(x.csf.c, y.csf.c);
  EXPECT_EQ(x.csf.oblique_r, y.csf.oblique_r);
  EXPECT_EQ(x.csf.gain, y.csf.gain);
  EXPECT_EQ(x.csf.picture_height, y.csf.picture_height);
  EXPECT_EQ(x.csf.viewing_ratio, y.csf.viewing_ratio);
  EXPECT_EQ(x.la.dark_knee, y.la.dark_knee);
  EXPECT_EQ(x.la.dark_divisor, y.la.dark_divisor);
  EXPECT_EQ(x.la.bright_knee, y.la.bright_knee);
  EXPECT_EQ(x.la.bright_divisor, y.la.bright_divisor);
  EXPECT_EQ(x.cm.epsilon, y.cm.epsilon);
  EXPECT_EQ(x.cm.cap, y.cm.cap);
  EXPECT_EQ(x.cm.edge_low_radius_sq, y.cm.edge_low_radius_sq);
  EXPECT_EQ(x.classifier.plane_ac_energy, y.classifier.plane_ac_energy);
  EXPECT_EQ(x.classifier.edge_hf_ratio, y.classifier.edge_hf_ratio);
  EXPECT_EQ(x.sa.salient, y.sa.salient);
  EXPECT_EQ(x.sa.nonsalient, y.sa.nonsalient);
  EXPECT_EQ(x.enable_la, y.enable_la);
  EXPECT_EQ(x.enable_cm, y.enable_cm);
  EXPECT_EQ(x.enable_sa, y.enable_sa);
  EXPECT_EQ(a.injection.strategy, b.injection.strategy);
  EXPECT_EQ(a.injection.p_table, b.injection.p_table);
  EXPECT_EQ(a.injection.p_tables_by_class, b.injection.p_tables_by_class);
  EXPECT_EQ(a.injection.gaussian.sigma_max, b.injection.gaussian.sigma_max);
  EXPECT_EQ(a.injection.gaussian.j_ref, b.injection.gaussian.j_ref);
  EXPECT_EQ(a.loss.lambda1, b.loss.lambda1);
  EXPECT_EQ(a.loss.lambda2, b.loss.lambda2);
  EXPECT_EQ(a.loss.lambda3, b.loss.lambda3);
  EXPECT_EQ(a.loss.cutoff, b.loss.cutoff);
  EXPECT_EQ(a.loss.charbonnier_eps, b.loss.charbonnier_eps);
  EXPECT_EQ(a.loss.msssim_max_scales, b.loss.msssim_max_scales);
  EXPECT_EQ(a.bench.qps, b.bench.qps);
  EXPECT_EQ(a.bench.metrics, b.bench.metrics);
  EXPECT_EQ(a.bench.all_metrics, b.bench.all_metrics);
  EXPECT_EQ(a.bench.anchor, b.bench.anchor);
  EXPECT_EQ(a.bench.workers, b.bench.workers);
  ASSERT_EQ(a.bench.variants.size(), 1u);
  EXPECT_TRUE(a.bench.variants[0].identity);
}

TEST(ConfigTest, EveryKeyIsApplied) {
  const Config cfg = ParseConfig(R"(
[jnd]
s = 1.5
csf_a = 1.4
csf_b = 0.12
csf_c = 0.2
csf_oblique_r = 0.5
csf_gain = 0.3
picture_height = 720
viewing_ratio = 4
la_dark_knee = 50
la_dark_divisor = 140
la_bright_knee = 180
la_bright_divisor = 400
cm_epsilon = 0.4
cm_cap = 3
cm_edge_low_radius_sq = 9
plane_ac_energy = 20
edge_hf_ratio = 0.3
sa_salient = 0.7
sa_nonsalient = 1.3
enable_la = off
enable_cm = no
enable_sa = 0
saliency_map = sal.pgm

[injection]
strategy = gaussian
gaussian_sigma_max = 2
gaussian_j_ref = 40

[loss]
lambda1 = 2
lambda2 = 0.5
lambda3 = 0.1
k = 6
charbonnier_eps = 0.01
msssim_scales = 3
)",
                                 "/base");
  EXPECT_EQ(cfg.jnd.s, 1.5);
  EXPECT_EQ(cfg.jnd.csf.a, 1.4);
  EXPECT_EQ(cfg.jnd.csf.b, 0.12);
  EXPECT_EQ(cfg.jnd.csf.c, 0.2);
  EXPECT_EQ(cfg.jnd.csf.oblique_r, 0.5);
  EXPECT_EQ(cfg.jnd.csf.gain, 0.3);
  EXPECT_EQ(cfg.jnd.csf.picture_height, 720);
  EXPECT_EQ(cfg.jnd.csf.viewing_ratio, 4);
  EXPECT_EQ(cfg.jnd.la.dark_knee, 50);
  EXPECT_EQ(cfg.jnd.la.dark_divisor, 140);
  EXPECT_EQ(cfg.jnd.la.bright_knee, 180);
  EXPECT_EQ(cfg.jnd.la.bright_divisor, 400);
  EXPECT_EQ(cfg.jnd.cm.epsilon, 0.4);
  EXPECT_EQ(cfg.jnd.cm.cap, 3);
  EXPECT_EQ(cfg.jnd.cm.edge_low_radius_sq, 9);
  EXPECT_EQ(cfg.jnd.classifier.plane_ac_energy, 20);
  EXPECT_EQ(cfg.jnd.classifier.edge_hf_ratio, 0.3);
  EXPECT_EQ(cfg.jnd.sa.salient, 0.7);
  EXPECT_EQ(cfg.jnd.sa.nonsalient, 1.3);
  EXPECT_FALSE(cfg.jnd.enable_la);
  EXPECT_FALSE(cfg.jnd.enable_cm);
  EXPECT_FALSE(cfg.jnd.enable_sa);
  EXPECT_EQ(cfg.saliency_map, fs::path("/base/sal.pgm"));
  EXPECT_EQ(cfg.injection.strategy, InjectionStrategy::kGaussian);
  EXPECT_EQ(cfg.injection.gaussian.sigma_max, 2);
  EXPECT_EQ(cfg.injection.gaussian.j_ref, 40);
  EXPECT_EQ(cfg.loss.lambda1, 2);
  EXPECT_EQ(cfg.loss.lambda2, 0.5);
  EXPECT_EQ(cfg.loss.lambda3, 0.1);
  EXPECT_EQ(cfg.loss.cutoff, 6);
  EXPECT_EQ(cfg.loss.charbonnier_eps, 0.01);
  EXPECT_EQ(cfg.loss.msssim_max_scales, 3);
}

TEST(ConfigTest, RejectsUnknownAndInvalid) {
  EXPECT_EQ(CodeOf([] { ParseConfig("[jnd]\nfoo = 1\n"); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[nonsense]\na = 1\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("stray = 1\n"); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[jnd]\ns = abc\n"); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[jnd]\nenable_la = maybe\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[loss]\nk = 2.5\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[bench]\nworkers = -1\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[bench]\nencoders = nope\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[variant.a]\nbogus = 1\n[bench]\n"
                                    "variants = identity, a\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseConfig("[encoder.e]\nencode = x {input}\n"
                                    "decode = y\n[bench]\nencoders = e\n"); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { LoadConfig("/nonexistent/jndpf.ini"); }),
            ErrorCode::kFileNotFound);
}

TEST(ConfigTest, BenchVariantsAndEncoders) {
  const Config cfg = ParseConfig(R"(
[injection]
strategy = suppress_basic

[variant.strong]
strategy = suppress_blocktype
s = 2.0

[encoder.copy]
bitstream_ext = .raw

[encoder.mine]
encode = mine -q {qp} {input} {output}
decode = mine -d {bitstream} {decoded}

[bench]
images = [a.pgm, /abs/b.pgm]
qps = 22, 27
variants = [identity, gaussian, strong]
encoders = copy, mine, x265
metrics = psnr, msssim
all_metrics = msssim
workers = 3
anchor = gaussian
)",
                                 "/cfg");
  const BenchConfig& b = cfg.bench;
  EXPECT_EQ(b.images, (std::vector<fs::path>{"/cfg/a.pgm", "/abs/b.pgm"}));
  EXPECT_EQ(b.qps, (std::vector<int>{22, 27}));
  ASSERT_EQ(b.variants.size(), 3u);
  EXPECT_TRUE(b.variants[0].identity);
  EXPECT_EQ(b.variants[1].injection.strategy, InjectionStrategy::kGaussian);
  EXPECT_FALSE(b.variants[1].identity);
  EXPECT_EQ(b.variants[2].injection.strategy,
            InjectionStrategy::kSuppressBlocktype);
  EXPECT_EQ(b.variants[2].jnd.s, 2.0);
  ASSERT_EQ(b.encoders.size(), 3u);
  EXPECT_EQ(b.encoders[0].bitstream_ext, ".raw");
  EXPECT_EQ(b.encoders[0].encode, BuiltinProfiles().at("copy").encode);
  EXPECT_EQ(b.encoders[1].name, "mine");
  EXPECT_EQ(b.encoders[2].encode, BuiltinProfiles().at("x265").encode);
  EXPECT_EQ(b.metrics,
            (std::vector<MetricKind>{MetricKind::kPsnr, MetricKind::kMsssim}));
  EXPECT_EQ(b.all_metrics, (std::vector<MetricKind>{MetricKind::kMsssim}));
  EXPECT_EQ(b.workers, 3);
  EXPECT_EQ(b.anchor, "gaussian");
}

TEST(ConfigTest, CoeffTables) {
  std::string inline_list = "[";
  for (int i = 0; i < 64; ++i) {
    inline_list += (i ? ", " : "") + std::to_string(i / 64.0);
  }
  inline_list += "]";
  const Config cfg = ParseConfig("[injection]\np_table = " + inline_list +
                                 "\np_table_edge = " + inline_list + "\n");
  for (int i = 0; i < 64; ++i) {
    EXPECT_NEAR(cfg.injection.p_table[i], i / 64.0, 1e-6);
    EXPECT_NEAR(cfg.injection.p_tables_by_class[1][i], i / 64.0, 1e-6);
  }
  EXPECT_EQ(cfg.injection.p_tables_by_class[0],
            InjectionConfig::DefaultClassTables()[0]);

  ScopedTempDir dir("jndpf-test");
  {
    std::ofstream csv(dir.path() / "p.csv");
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) csv << (c ? "," : "") << 0.5;
      csv << "\n";
    }
  }
  {
    std::ofstream ini(dir.path() / "cfg.ini");
    ini << "[injection]\np_table_texture = p.csv\n";
  }
  const Config from_file = LoadConfig(dir.path() / "cfg.ini");
  for (double p : from_file.injection.p_tables_by_class[2]) EXPECT_EQ(p, 0.5);

  EXPECT_EQ(CodeOf([] { ParseCoeffTable("[1, 2, 3]", "."); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { ParseCoeffTable("missing.csv", "/nonexistent"); }),
            ErrorCode::kFileNotFound);
  std::string out_of_range = "[";
  for (int i = 0; i < 64; ++i) out_of_range += (i ? ", " : "") + std::string("2");
  out_of_range += "]";
  EXPECT_ANY_THROW(ParseConfig("[injection]\np_table = " + out_of_range));
}

TEST(ConfigTest, ParseList) {
  EXPECT_EQ(ParseList("[a, \"b c\", d]"),
            (std::vector<std::string>{"a", "b c", "d"}));
  EXPECT_EQ(ParseList("x,y"), (std::vector<std::string>{"x", "y"}));
  EXPECT_TRUE(ParseList("[]").empty());
  EXPECT_EQ(CodeOf([] { ParseList("[a, b"); }), ErrorCode::kConfig);
}

}  // namespace
}  // namespace jndpf
