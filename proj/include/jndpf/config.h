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

#ifndef JNDPF_CONFIG_H_
#define JNDPF_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jndpf/encoder.h"
#include "jndpf/injection.h"
#include "jndpf/jnd_model.h"
#include "jndpf/losses.h"
#include "jndpf/metrics.h"

namespace jndpf {

// A named pipeline variant of the benchmark. "identity" skips filtering.
struct VariantSpec {
  std::string name;
  bool identity = false;
  JndParams jnd;
  InjectionConfig injection;
};

struct BenchConfig {
  std::vector<std::filesystem::path> images;
  std::vector<int> qps = {27, 32, 37, 42};
  std::vector<VariantSpec> variants;
  std::vector<EncoderProfile> encoders;
  std::vector<MetricKind> metrics = {kAllMetrics.begin(), kAllMetrics.end()};
  // Metrics averaged into the "ALL" BD-rate column.
  std::vector<MetricKind> all_metrics = {MetricKind::kPsnrHvsm,
                                         MetricKind::kMsssim};
  std::string anchor = "identity";
  int workers = 0;  // 0: logical core count
};

// Whole configuration file. Sections: [jnd], [injection], [loss], [bench],
// [variant.<name>] (any [jnd]/[injection] key, overriding the base),
// [encoder.<name>] (encode, decode, input_format, input_chroma,
// decoded_format, decoded_chroma, bitstream_ext).
struct Config {
  JndParams jnd;
  InjectionConfig injection;
  LossWeights loss;
  std::optional<std::filesystem::path> saliency_map;
  BenchConfig bench;
};

// "default" (or an empty path) yields built-in defaults.
Config LoadConfig(const std::filesystem::path& path);
Config ParseConfig(const std::string& text,
                   const std::filesystem::path& base_dir = ".");

// Parses "[a, b, c]" or "a, b, c".
std::vector<std::string> ParseList(const std::string& value);
// 64 numbers inline, or the path of an 8x8 CSV file.
CoeffTable ParseCoeffTable(const std::string& value,
                           const std::filesystem::path& base_dir);

}  // namespace jndpf

#endif  // JNDPF_CONFIG_H_
