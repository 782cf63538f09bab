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

// jndpf: JND-guided DCT-domain pre-filter, loss kernels and RD benchmark.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jndpf/bd_rate.h"
#include "jndpf/bench.h"
#include "jndpf/config.h"
#include "jndpf/error.h"
#include "jndpf/image.h"
#include "jndpf/injection.h"
#include "jndpf/jnd_model.h"
#include "jndpf/losses.h"
#include "jndpf/metrics.h"
#include "jndpf/parallel.h"
#include "jndpf/rd_results.h"
#include "jndpf/selftest.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jndpf;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string Num(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

struct Globals {
  std::string config = "default";
  bool verbose = false;
  uint64_t seed = 1;
  int threads = 0;

  // Registered on the root and on every subcommand so they may appear on
  // either side of the subcommand name.
  void Add(CLI::App* app) {
    app->add_option("--config", config, "Config file, or 'default'")
        ->capture_default_str();
    app->add_flag("--verbose", verbose, "Progress and diagnostics on stderr");
    app->add_option("--seed", seed, "Seed for randomized checks")
        ->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0: all cores)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }
};

// Options for reading raw YUV inputs.
struct RawOptions {
  size_t width = 0;
  size_t height = 0;
  std::string chroma = "420";

  void Add(CLI::App* app) {
    app->add_option("--width", width, "Width of raw .yuv inputs");
    app->add_option("--height", height, "Height of raw .yuv inputs");
    app->add_option("--chroma", chroma, "Chroma layout of raw .yuv inputs")
        ->check(CLI::IsMember({"400", "420", "422", "444"}))
        ->capture_default_str();
  }
  RawGeometry Geometry() const {
    return {width, height, ParseChromaLayout(chroma)};
  }
};

ImagePlane Load(const std::string& path, const RawOptions& raw) {
  return LoadImage(path, raw.Geometry());
}

// ---------------------------------------------------------------- filter

struct FilterOptions {
  std::string input, output, saliency, strategy;
  std::optional<double> s;
  RawOptions raw;
};

int RunFilter(const Globals& g, const FilterOptions& o) {
  Config cfg = LoadConfig(g.config);
  if (!o.strategy.empty()) cfg.injection.strategy = ParseStrategy(o.strategy);
  if (o.s) cfg.jnd.s = *o.s;
  const ImagePlane input = Load(o.input, o.raw);
  std::optional<ImagePlane> saliency;
  std::string saliency_path = o.saliency;
  if (saliency_path.empty() && cfg.saliency_map) {
    saliency_path = cfg.saliency_map->string();
  }
  if (!saliency_path.empty()) saliency = Load(saliency_path, o.raw);
  const ImagePlane out = ApplyPrefilter(input, cfg.jnd, cfg.injection,
                                        saliency ? &*saliency : nullptr);
  SaveImage(out, o.output);
  if (g.verbose) {
    std::cerr << "filtered " << input.width() << "x" << input.height()
              << " with " << StrategyName(cfg.injection.strategy) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- jnd-map

struct JndMapOptions {
  std::string input, output = "-", saliency;
  RawOptions raw;
};

int RunJndMap(const Globals& g, const JndMapOptions& o) {
  const Config cfg = LoadConfig(g.config);
  const ImagePlane input = Load(o.input, o.raw);
  std::optional<ImagePlane> saliency;
  std::string saliency_path = o.saliency;
  if (saliency_path.empty() && cfg.saliency_map) {
    saliency_path = cfg.saliency_map->string();
  }
  if (!saliency_path.empty()) saliency = Load(saliency_path, o.raw);
  const JndMap map =
      ComputeJndMap(input, cfg.jnd, saliency ? &*saliency : nullptr);

  std::ofstream file;
  if (o.output != "-") {
    file.open(o.output, std::ios::trunc);
    if (!file) Fail(ErrorCode::kUnwritablePath, "cannot write " + o.output);
  }
  std::ostream& out = o.output == "-" ? std::cout : file;
  out << "bx,by,class";
  for (int u = 0; u < kBlockDim; ++u) {
    for (int v = 0; v < kBlockDim; ++v) out << ",j_" << u << "_" << v;
  }
  out << "\n";
  for (size_t by = 0; by < map.blocks_y; ++by) {
    for (size_t bx = 0; bx < map.blocks_x; ++bx) {
      const size_t i = by * map.blocks_x + bx;
      out << bx << "," << by << "," << BlockLabelName(map.classes[i].label);
      for (double t : map.thresholds[i]) out << "," << Num(t);
      out << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------------ loss

struct LossOptions {
  std::string filtered, gt, orig, emit_grad;
  std::optional<int> k;
  std::optional<double> lambda1, lambda2, lambda3;
  bool json = false;
  RawOptions raw;
};

int RunLoss(const Globals& g, const LossOptions& o) {
  LossWeights w = LoadConfig(g.config).loss;
  if (o.k) w.cutoff = *o.k;
  if (o.lambda1) w.lambda1 = *o.lambda1;
  if (o.lambda2) w.lambda2 = *o.lambda2;
  if (o.lambda3) w.lambda3 = *o.lambda3;
  const FloatPlane f = ToFloat(Load(o.filtered, o.raw));
  const FloatPlane gt = ToFloat(Load(o.gt, o.raw));
  const FloatPlane orig = ToFloat(Load(o.orig, o.raw));
  const LossReport r = TotalLoss(f, gt, orig, w, !o.emit_grad.empty());
  if (!o.emit_grad.empty()) SavePfm(*r.grad, o.emit_grad);
  if (o.json) {
    json j = {{"l_c", r.l_c},       {"l_m", r.l_m},
              {"l_res", r.l_res},   {"l_cons", r.l_cons},
              {"l_freq", r.l_freq}, {"l_all", r.l_all},
              {"k", w.cutoff},
              {"lambda", {w.lambda1, w.lambda2, w.lambda3}},
              {"msssim_scales", r.msssim_scales},
              {"msssim_reduced", r.msssim_reduced}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "l_c=" << Num(r.l_c) << "\n"
              << "l_m=" << Num(r.l_m) << "\n"
              << "l_res=" << Num(r.l_res) << "\n"
              << "l_cons=" << Num(r.l_cons) << "\n"
              << "l_freq=" << Num(r.l_freq) << "\n"
              << "l_all=" << Num(r.l_all) << "\n";
    if (r.msssim_reduced) {
      std::cerr << "warning: MS-SSIM ran with " << r.msssim_scales
                << " scales\n";
    }
  }
  return 0;
}

// --------------------------------------------------------------- metrics

struct MetricsOptions {
  std::string ref, dist, metric = "all";
  bool json = false;
  RawOptions raw;
};

std::vector<MetricKind> SelectMetrics(const std::string& name) {
  if (name == "all") return {kAllMetrics.begin(), kAllMetrics.end()};
  return {ParseMetric(name)};
}

int RunMetrics(const Globals&, const MetricsOptions& o) {
  const ImagePlane ref = Load(o.ref, o.raw);
  const ImagePlane dist = Load(o.dist, o.raw);
  json j = json::object();
  for (auto kind : SelectMetrics(o.metric)) {
    const MetricValue v = ComputeMetric(kind, ref, dist);
    const std::string name(MetricName(kind));
    if (o.json) {
      j[name] = v.value;
      if (v.capped) j[name + "_capped"] = true;
      if (v.reduced_scales) j[name + "_reduced_scales"] = true;
    } else {
      std::cout << name << "=" << Num(v.value) << "\n";
      if (v.reduced_scales) {
        std::cerr << "warning: " << name << " used fewer than 5 scales\n";
      }
    }
  }
  if (o.json) std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- bdrate

struct BdrateOptions {
  std::string anchor, test, metric = "all", interp = "auto";
  bool json = false;
};

using CurveKey = std::pair<std::string, std::string>;  // image, encoder

std::map<CurveKey, std::vector<RdPoint>> GroupCurves(
    const std::vector<RdPoint>& points) {
  std::map<CurveKey, std::vector<RdPoint>> groups;
  for (const auto& p : points) groups[{p.image_id, p.encoder}].push_back(p);
  return groups;
}

std::vector<std::string> MetricsIn(const std::vector<RdPoint>& points) {
  std::vector<std::string> names;
  for (const char* c : kCsvMetricColumns) {
    const bool present = std::all_of(
        points.begin(), points.end(),
        [&](const RdPoint& p) { return p.metrics.count(c) > 0; });
    if (present) names.push_back(c);
  }
  return names;
}

int RunBdrate(const Globals&, const BdrateOptions& o) {
  const auto anchor = ReadRdCsv(o.anchor);
  const auto test = ReadRdCsv(o.test);
  const BdInterpolation interp = o.interp == "cubic"   ? BdInterpolation::kCubic
                                 : o.interp == "pchip" ? BdInterpolation::kPchip
                                                       : BdInterpolation::kAuto;
  std::vector<std::string> metrics;
  if (o.metric == "all") {
    for (const auto& m : MetricsIn(anchor)) {
      if (!MetricsIn(test).empty() &&
          std::count(MetricsIn(test).begin(), MetricsIn(test).end(), m)) {
        metrics.push_back(m);
      }
    }
  } else {
    metrics.push_back(std::string(MetricName(ParseMetric(o.metric))));
  }
  if (metrics.empty()) {
    Fail(ErrorCode::kMalformedRow, "no metric column shared by both files");
  }

  auto a_groups = GroupCurves(anchor);
  auto t_groups = GroupCurves(test);
  std::vector<std::pair<std::string, std::pair<std::vector<RdPoint>,
                                               std::vector<RdPoint>>>>
      pairs;
  if (a_groups.size() == 1 && t_groups.size() == 1) {
    const auto& [key, curve] = *a_groups.begin();
    pairs.push_back({key.first + "/" + key.second,
                     {curve, t_groups.begin()->second}});
  } else {
    for (const auto& [key, curve] : a_groups) {
      const auto it = t_groups.find(key);
      if (it == t_groups.end()) continue;
      pairs.push_back({key.first + "/" + key.second, {curve, it->second}});
    }
  }
  if (pairs.empty()) {
    Fail(ErrorCode::kInsufficientPoints,
         "no (image_id, encoder) curve appears in both files");
  }

  json j = json::object();
  std::map<std::string, std::vector<double>> sums;
  for (const auto& [label, curves] : pairs) {
    std::string line = pairs.size() > 1 ? label + " " : "";
    for (size_t m = 0; m < metrics.size(); ++m) {
      const auto r = BdRate(CurveFor(curves.first, metrics[m]),
                            CurveFor(curves.second, metrics[m]), interp);
      for (const auto& w : r.warnings) {
        std::cerr << "warning: " << label << " " << metrics[m] << ": " << w
                  << "\n";
      }
      sums[metrics[m]].push_back(r.percent);
      j["curves"][label][metrics[m]] = r.percent;
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s=%.2f", metrics[m].c_str(),
                    r.percent + 0.0);
      line += (m ? " " : "") + std::string(buf);
    }
    if (!o.json) std::cout << line << "\n";
  }
  for (const auto& [name, values] : sums) {
    double mean = 0.0;
    for (double v : values) mean += v;
    j["mean"][name] = mean / values.size();
  }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else if (pairs.size() > 1) {
    std::string line = "mean";
    for (const auto& m : metrics) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), " %s=%.2f", m.c_str(),
                    j["mean"][m].get<double>() + 0.0);
      line += buf;
    }
    std::cout << line << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- bench

struct BenchOptions {
  std::string out;
};

int RunBench(const Globals& g, const BenchOptions& o) {
  Config cfg = LoadConfig(g.config);
  if (g.threads > 0 && cfg.bench.workers == 0) cfg.bench.workers = g.threads;
  const BenchReport report =
      RunBenchmark(cfg, o.out, g.verbose ? &std::cerr : nullptr);
  std::cout << report.points.size() << " points, " << report.failures.size()
            << " failures; results in " << o.out << "\n";
  return report.failures.empty() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JND-guided DCT-domain pre-filter, losses and RD benchmark",
               "jndpf"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Globals g;
  g.Add(&app);

  FilterOptions filter;
  auto* f = app.add_subcommand("filter", "Apply the pre-filter to an image");
  f->add_option("--input", filter.input, "Input image")->required();
  f->add_option("--output", filter.output, "Output image")->required();
  f->add_option("--saliency-map", filter.saliency, "Saliency map (0..255)");
  f->add_option("--strategy", filter.strategy, "Injection strategy override")
      ->check(CLI::IsMember({"suppress_basic", "suppress_weighted",
                             "suppress_blocktype", "gaussian"}));
  f->add_option("--s", filter.s, "JND scale override");
  filter.raw.Add(f);

  JndMapOptions jnd;
  auto* jm = app.add_subcommand("jnd-map", "Dump per-block JND thresholds");
  jm->add_option("--input", jnd.input, "Input image")->required();
  jm->add_option("--output", jnd.output, "CSV path, '-' for stdout")
      ->capture_default_str();
  jm->add_option("--saliency-map", jnd.saliency, "Saliency map (0..255)");
  jnd.raw.Add(jm);

  LossOptions loss;
  auto* l = app.add_subcommand("loss", "Evaluate the hybrid loss");
  l->add_option("--filtered", loss.filtered, "Filtered image I_f")
      ->required();
  l->add_option("--gt", loss.gt, "Ground-truth filtered image I_gt")
      ->required();
  l->add_option("--orig", loss.orig, "Original image I_o")->required();
  l->add_option("--k", loss.k, "Zigzag low-frequency cutoff")
      ->check(CLI::Range(1, 63));
  l->add_option("--lambda1", loss.lambda1, "Charbonnier weight");
  l->add_option("--lambda2", loss.lambda2, "MS-SSIM weight");
  l->add_option("--lambda3", loss.lambda3, "Frequency loss weight");
  l->add_option("--emit-grad", loss.emit_grad,
                "Write d(total)/d(I_f) as a PFM file");
  l->add_flag("--json", loss.json, "Machine-readable output");
  loss.raw.Add(l);

  MetricsOptions metrics;
  auto* m = app.add_subcommand("metrics", "Full-reference quality metrics");
  m->add_option("--ref", metrics.ref, "Reference image")->required();
  m->add_option("--dist", metrics.dist, "Distorted image")->required();
  m->add_option("--metric", metrics.metric, "Metric name or 'all'")
      ->check(CLI::IsMember({"all", "psnr", "psnr_hvsm", "ssim", "msssim"}))
      ->capture_default_str();
  m->add_flag("--json", metrics.json, "Machine-readable output");
  metrics.raw.Add(m);

  BdrateOptions bd;
  auto* b = app.add_subcommand("bdrate", "BD-rate between two RD CSV files");
  b->add_option("--anchor", bd.anchor, "Anchor RD points CSV")->required();
  b->add_option("--test", bd.test, "Test RD points CSV")->required();
  b->add_option("--metric", bd.metric, "Metric name or 'all'")
      ->check(CLI::IsMember({"all", "psnr", "psnr_hvsm", "ssim", "msssim"}))
      ->capture_default_str();
  b->add_option("--interp", bd.interp, "Curve interpolation")
      ->check(CLI::IsMember({"auto", "cubic", "pchip"}))
      ->capture_default_str();
  b->add_flag("--json", bd.json, "Machine-readable output");

  BenchOptions bench;
  auto* be = app.add_subcommand("bench", "Run the RD benchmark from --config");
  be->add_option("--out", bench.out, "Output directory")->required();

  auto* st = app.add_subcommand("selftest", "Run the numerical self-checks");

  for (auto* sub : app.get_subcommands({})) g.Add(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    SetThreadCount(g.threads);
    if (*f) return RunFilter(g, filter);
    if (*jm) return RunJndMap(g, jnd);
    if (*l) return RunLoss(g, loss);
    if (*m) return RunMetrics(g, metrics);
    if (*b) return RunBdrate(g, bd);
    if (*be) return RunBench(g, bench);
    if (*st) return RunSelfTest(g.seed, std::cout) == 0 ? 0 : kExitRuntime;
  } catch (const Error& e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]: " << e.what()
              << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
