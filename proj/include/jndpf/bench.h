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

#ifndef JNDPF_BENCH_H_
#define JNDPF_BENCH_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "jndpf/config.h"
#include "jndpf/rd_results.h"

namespace jndpf {

struct BenchFailure {
  std::string image_id;
  std::string variant;
  std::string encoder;
  int qp = 0;
  std::string error;
};

struct BenchReport {
  std::vector<RdPoint> points;  // sorted
  std::vector<BenchFailure> failures;
  nlohmann::json summary;
};

// BD-rate summary of `points` against the configured anchor variant:
//   {"anchor", "metrics", "all_metrics",
//    "bdbr": {variant: {encoder: {metric: mean %, "ALL": mean}}},
//    "per_image": {image: {variant: {encoder: {metric: %, "ALL": %}}}},
//    "failures": [...], "warnings": [...]}
// Only curves with a point for every configured QP enter the summary.
nlohmann::json SummarizeBdRate(const std::vector<RdPoint>& points,
                               const std::vector<BenchFailure>& failures,
                               const BenchConfig& bench);

// Runs every (image, variant, encoder, qp) cell and writes into `out_dir`:
//   journal.csv     rows appended as cells finish
//   rd_points.csv   all successful rows, sorted
//   summary.json    SummarizeBdRate output
//   run.log         encoder output and failures
// Failed cells are recorded, not fatal. Scratch files live under
// TempRoot() and are removed afterwards.
BenchReport RunBenchmark(const Config& config,
                         const std::filesystem::path& out_dir,
                         std::ostream* progress = nullptr);

}  // namespace jndpf

#endif  // JNDPF_BENCH_H_
