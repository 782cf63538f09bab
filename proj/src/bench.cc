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

#include "jndpf/bench.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "jndpf/bd_rate.h"
#include "jndpf/encoder.h"
#include "jndpf/error.h"
#include "jndpf/injection.h"
#include "jndpf/metrics.h"

namespace jndpf {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Job {
  size_t image = 0;
  size_t variant = 0;
  size_t encoder = 0;
  int qp = 0;
};

// Serializes every write to the output directory.
class ResultWriter {
 public:
  ResultWriter(const fs::path& out_dir, std::ostream* progress)
      : journal_(out_dir / "journal.csv", std::ios::trunc),
        log_(out_dir / "run.log", std::ios::trunc),
        progress_(progress) {
    if (!journal_ || !log_) {
      Fail(ErrorCode::kUnwritablePath, "cannot write into " + out_dir.string());
    }
    cols_.assign(std::begin(kCsvMetricColumns), std::end(kCsvMetricColumns));
    journal_ << CsvHeader({}) << "\n" << std::flush;
  }

  void Point(const RdPoint& p, const fs::path& encoder_log) {
    std::lock_guard<std::mutex> lock(mu_);
    journal_ << CsvRow(p, cols_) << "\n" << std::flush;
    AppendLog(Label(p.image_id, p.variant, p.encoder, p.qp), encoder_log);
    if (progress_) {
      *progress_ << "done " << Label(p.image_id, p.variant, p.encoder, p.qp)
                 << " bits=" << p.bits << "\n";
    }
  }

  void Failure(const BenchFailure& f, const fs::path& encoder_log) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string label = Label(f.image_id, f.variant, f.encoder, f.qp);
    AppendLog(label, encoder_log);
    log_ << "FAILED " << label << ": " << f.error << "\n" << std::flush;
    if (progress_) *progress_ << "FAILED " << label << ": " << f.error << "\n";
  }

 private:
  static std::string Label(const std::string& image, const std::string& variant,
                           const std::string& encoder, int qp) {
    return image + "/" + variant + "/" + encoder + "/qp" + std::to_string(qp);
  }

  void AppendLog(const std::string& label, const fs::path& encoder_log) {
    log_ << "== " << label << "\n";
    std::ifstream in(encoder_log);
    if (in && in.peek() != std::ifstream::traits_type::eof()) {
      log_ << in.rdbuf();
    }
    log_ << std::flush;
  }

  std::mutex mu_;
  std::ofstream journal_;
  std::ofstream log_;
  std::ostream* progress_;
  std::vector<std::string> cols_;
};

std::string ImageId(const fs::path& path) { return path.stem().string(); }

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

}  // namespace

json SummarizeBdRate(const std::vector<RdPoint>& points,
                     const std::vector<BenchFailure>& failures,
                     const BenchConfig& bench) {
  json summary;
  summary["anchor"] = bench.anchor;
  summary["metrics"] = json::array();
  for (auto m : bench.metrics) summary["metrics"].push_back(MetricName(m));
  summary["all_metrics"] = json::array();
  for (auto m : bench.all_metrics) {
    summary["all_metrics"].push_back(MetricName(m));
  }
  summary["bdbr"] = json::object();
  summary["per_image"] = json::object();
  summary["warnings"] = json::array();
  summary["failures"] = json::array();
  for (const auto& f : failures) {
    summary["failures"].push_back({{"image_id", f.image_id},
                                   {"variant", f.variant},
                                   {"encoder", f.encoder},
                                   {"qp", f.qp},
                                   {"error", f.error}});
  }

  // (image, variant, encoder) -> points, keeping only complete curves.
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<RdPoint>> curves;
  for (const auto& p : points) {
    curves[{p.image_id, p.variant, p.encoder}].push_back(p);
  }
  const std::set<int> qps(bench.qps.begin(), bench.qps.end());
  auto complete = [&](const Key& key) {
    const auto it = curves.find(key);
    if (it == curves.end()) return false;
    std::set<int> seen;
    for (const auto& p : it->second) seen.insert(p.qp);
    return seen == qps;
  };
  auto warn = [&](const std::string& msg) {
    summary["warnings"].push_back(msg);
  };

  std::set<std::string> images, variants, encoders;
  for (const auto& [key, _] : curves) {
    images.insert(std::get<0>(key));
    variants.insert(std::get<1>(key));
    encoders.insert(std::get<2>(key));
  }
  for (const auto& [key, curve] : curves) {
    if (!complete(key)) continue;
    const auto violations = QpMonotonicityViolations(curve);
    for (int qp : violations) {
      warn(std::get<0>(key) + "/" + std::get<1>(key) + "/" + std::get<2>(key) +
           ": bitrate at qp " + std::to_string(qp) +
           " is not below the next lower qp");
    }
  }

  for (const auto& variant : variants) {
    if (variant == bench.anchor) continue;
    for (const auto& encoder : encoders) {
      std::map<std::string, std::vector<double>> per_metric;
      for (const auto& image : images) {
        const Key anchor_key{image, bench.anchor, encoder};
        const Key test_key{image, variant, encoder};
        if (!curves.count(test_key)) continue;
        const std::string where = image + "/" + variant + "/" + encoder;
        if (!complete(anchor_key) || !complete(test_key)) {
          warn(where + ": incomplete curve, left out of the summary");
          continue;
        }
        json entry = json::object();
        std::vector<double> all;
        for (auto metric : bench.metrics) {
          const std::string name(MetricName(metric));
          try {
            const auto r = BdRate(CurveFor(curves[anchor_key], name),
                                  CurveFor(curves[test_key], name));
            for (const auto& w : r.warnings) warn(where + "/" + name + ": " + w);
            entry[name] = r.percent;
            per_metric[name].push_back(r.percent);
          } catch (const Error& e) {
            warn(where + "/" + name + ": " + e.what());
          }
        }
        for (auto metric : bench.all_metrics) {
          const std::string name(MetricName(metric));
          if (entry.contains(name)) all.push_back(entry[name].get<double>());
        }
        if (!all.empty() && all.size() == bench.all_metrics.size()) {
          entry["ALL"] = Mean(all);
        }
        summary["per_image"][image][variant][encoder] = entry;
      }
      json agg = json::object();
      std::vector<double> all;
      for (auto metric : bench.metrics) {
        const std::string name(MetricName(metric));
        if (per_metric.count(name)) agg[name] = Mean(per_metric[name]);
      }
      for (auto metric : bench.all_metrics) {
        const std::string name(MetricName(metric));
        if (agg.contains(name)) all.push_back(agg[name].get<double>());
      }
      if (!all.empty() && all.size() == bench.all_metrics.size()) {
        agg["ALL"] = Mean(all);
      }
      summary["bdbr"][variant][encoder] = agg;
    }
  }
  return summary;
}

BenchReport RunBenchmark(const Config& config, const fs::path& out_dir,
                         std::ostream* progress) {
  const BenchConfig& bench = config.bench;
  if (bench.images.empty()) Fail(ErrorCode::kConfig, "[bench] images is empty");
  if (bench.encoders.empty()) {
    Fail(ErrorCode::kConfig, "[bench] encoders is empty");
  }
  if (bench.qps.empty()) Fail(ErrorCode::kConfig, "[bench] qps is empty");
  const bool has_anchor =
      std::any_of(bench.variants.begin(), bench.variants.end(),
                  [&](const VariantSpec& v) { return v.name == bench.anchor; });
  if (!has_anchor) {
    Fail(ErrorCode::kConfig, "anchor variant '" + bench.anchor +
                                 "' is not among the variants");
  }
  std::set<std::string> ids;
  for (const auto& path : bench.images) {
    if (!ids.insert(ImageId(path)).second) {
      Fail(ErrorCode::kConfig, "duplicate image name " + ImageId(path));
    }
  }
  fs::create_directories(out_dir);

  std::vector<ImagePlane> originals;
  for (const auto& path : bench.images) originals.push_back(LoadImage(path));
  // Encoder inputs per (image, variant).
  std::vector<std::vector<ImagePlane>> inputs(originals.size());
  for (size_t i = 0; i < originals.size(); ++i) {
    for (const auto& v : bench.variants) {
      inputs[i].push_back(v.identity
                              ? originals[i]
                              : ApplyPrefilter(originals[i], v.jnd, v.injection));
    }
  }

  std::vector<Job> jobs;
  for (size_t i = 0; i < originals.size(); ++i) {
    for (size_t v = 0; v < bench.variants.size(); ++v) {
      for (size_t e = 0; e < bench.encoders.size(); ++e) {
        for (int qp : bench.qps) jobs.push_back({i, v, e, qp});
      }
    }
  }

  ResultWriter writer(out_dir, progress);
  ScopedTempDir scratch("jndpf-bench");
  std::vector<std::optional<RdPoint>> results(jobs.size());
  std::vector<std::optional<BenchFailure>> failed(jobs.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      const auto& profile = bench.encoders[job.encoder];
      RdPoint p;
      p.image_id = ImageId(bench.images[job.image]);
      p.variant = bench.variants[job.variant].name;
      p.encoder = profile.name;
      p.qp = job.qp;
      const fs::path workdir = scratch.path() / std::to_string(j);
      const fs::path log = workdir / (profile.name + "_qp" +
                                      std::to_string(job.qp) + ".log");
      try {
        fs::create_directories(workdir);
        const auto enc = RunEncodeDecode(inputs[job.image][job.variant],
                                         profile, job.qp, workdir);
        p.bits = enc.bits;
        for (auto metric : bench.metrics) {
          // Quality is always judged against the unfiltered source.
          p.metrics[std::string(MetricName(metric))] =
              ComputeMetric(metric, originals[job.image], enc.decoded).value;
        }
        writer.Point(p, log);
        results[j] = std::move(p);
      } catch (const std::exception& e) {
        BenchFailure f{p.image_id, p.variant, p.encoder, p.qp, e.what()};
        writer.Failure(f, log);
        failed[j] = std::move(f);
      }
      std::error_code ec;
      fs::remove_all(workdir, ec);
    }
  };

  int workers = bench.workers > 0
                    ? bench.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp<int>(workers, 1, std::max<size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BenchReport report;
  for (auto& r : results) {
    if (r) report.points.push_back(std::move(*r));
  }
  for (auto& f : failed) {
    if (f) report.failures.push_back(std::move(*f));
  }
  SortPoints(report.points);
  WriteRdCsv(out_dir / "rd_points.csv", report.points);
  report.summary = SummarizeBdRate(report.points, report.failures, bench);
  std::ofstream summary(out_dir / "summary.json", std::ios::trunc);
  summary << report.summary.dump(2) << "\n";
  if (!summary) {
    Fail(ErrorCode::kUnwritablePath, "cannot write summary.json");
  }
  return report;
}

}  // namespace jndpf
