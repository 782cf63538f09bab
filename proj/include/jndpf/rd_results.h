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

#ifndef JNDPF_RD_RESULTS_H_
#define JNDPF_RD_RESULTS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jndpf/bd_rate.h"

namespace jndpf {

// One encoded operating point. Metric values are always measured between
// the original (unfiltered) image and the decoded image.
struct RdPoint {
  std::string image_id;
  std::string variant;
  std::string encoder;
  int qp = 0;
  uint64_t bits = 0;
  std::map<std::string, double> metrics;

  friend bool operator==(const RdPoint&, const RdPoint&) = default;
};

// Fixed leading columns; metric columns follow in this order, then any
// extra metrics present in the data (alphabetical).
inline constexpr const char* kCsvKeyColumns[] = {"image_id", "variant",
                                                 "encoder", "qp", "bits"};
inline constexpr const char* kCsvMetricColumns[] = {"psnr", "psnr_hvsm",
                                                    "ssim", "msssim"};

// Sorted by (image_id, variant, encoder, qp).
void SortPoints(std::vector<RdPoint>& points);

std::string CsvHeader(const std::vector<RdPoint>& points);
std::string CsvRow(const RdPoint& point, const std::vector<std::string>& cols);

void WriteRdCsv(const std::filesystem::path& path,
                std::vector<RdPoint> points);
// Header row required. Only `bits` and at least one metric column are
// mandatory; missing key columns default to empty strings / qp 0.
std::vector<RdPoint> ReadRdCsv(const std::filesystem::path& path);

// Curve of one metric for points sharing image/variant/encoder.
std::vector<RatePoint> CurveFor(const std::vector<RdPoint>& points,
                                const std::string& metric);

// Returns QPs whose bitrate is not strictly below that of the next-lower
// QP; an empty result means the curve is rate-monotone in QP.
std::vector<int> QpMonotonicityViolations(std::vector<RdPoint> curve);

}  // namespace jndpf

#endif  // JNDPF_RD_RESULTS_H_
