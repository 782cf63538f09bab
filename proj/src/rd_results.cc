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

#include "jndpf/rd_results.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "jndpf/error.h"

namespace jndpf {
namespace {

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> MetricColumns(const std::vector<RdPoint>& points) {
  std::vector<std::string> cols(std::begin(kCsvMetricColumns),
                                std::end(kCsvMetricColumns));
  std::set<std::string> extra;
  for (const auto& p : points) {
    for (const auto& [name, _] : p.metrics) {
      if (std::find(cols.begin(), cols.end(), name) == cols.end()) {
        extra.insert(name);
      }
    }
  }
  cols.insert(cols.end(), extra.begin(), extra.end());
  return cols;
}

template <typename T>
T ParseNumber(const std::string& s, const std::filesystem::path& path,
              size_t line, const std::string& column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(ErrorCode::kMalformedRow, path.string() + ":" + std::to_string(line) +
                                       ": bad value '" + s + "' in column " +
                                       column);
  }
  return value;
}

}  // namespace

void SortPoints(std::vector<RdPoint>& points) {
  std::sort(points.begin(), points.end(),
            [](const RdPoint& a, const RdPoint& b) {
              return std::tie(a.image_id, a.variant, a.encoder, a.qp) <
                     std::tie(b.image_id, b.variant, b.encoder, b.qp);
            });
}

std::string CsvHeader(const std::vector<RdPoint>& points) {
  std::string header;
  for (const char* c : kCsvKeyColumns) header += std::string(c) + ",";
  const auto cols = MetricColumns(points);
  for (size_t i = 0; i < cols.size(); ++i) {
    header += cols[i] + (i + 1 < cols.size() ? "," : "");
  }
  return header;
}

std::string CsvRow(const RdPoint& p, const std::vector<std::string>& cols) {
  std::string row = p.image_id + "," + p.variant + "," + p.encoder + "," +
                    std::to_string(p.qp) + "," + std::to_string(p.bits);
  for (const auto& c : cols) {
    row += ",";
    const auto it = p.metrics.find(c);
    if (it != p.metrics.end()) row += FormatDouble(it->second);
  }
  return row;
}

void WriteRdCsv(const std::filesystem::path& path,
                std::vector<RdPoint> points) {
  SortPoints(points);
  std::ofstream out(path, std::ios::trunc);
  if (!out) Fail(ErrorCode::kUnwritablePath, "cannot write " + path.string());
  out << CsvHeader(points) << "\n";
  const auto cols = MetricColumns(points);
  for (const auto& p : points) out << CsvRow(p, cols) << "\n";
  if (!out) Fail(ErrorCode::kUnwritablePath, "short write to " + path.string());
}

std::vector<RdPoint> ReadRdCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kFileNotFound, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    Fail(ErrorCode::kMalformedRow, path.string() + ":1: missing header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCsv(line);
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
  if (!index.count("bits")) {
    Fail(ErrorCode::kMalformedRow, path.string() + ":1: header lacks 'bits'");
  }
  const std::set<std::string> keys(std::begin(kCsvKeyColumns),
                                   std::end(kCsvKeyColumns));
  bool has_metric = false;
  for (const auto& h : header) has_metric |= !keys.count(h);
  if (!has_metric) {
    Fail(ErrorCode::kMalformedRow,
         path.string() + ":1: header has no metric columns");
  }

  std::vector<RdPoint> points;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != header.size()) {
      Fail(ErrorCode::kMalformedRow,
           path.string() + ":" + std::to_string(line_no) + ": expected " +
               std::to_string(header.size()) + " fields, got " +
               std::to_string(cells.size()));
    }
    RdPoint p;
    for (size_t i = 0; i < header.size(); ++i) {
      const auto& h = header[i];
      const auto& v = cells[i];
      if (h == "image_id") {
        p.image_id = v;
      } else if (h == "variant") {
        p.variant = v;
      } else if (h == "encoder") {
        p.encoder = v;
      } else if (h == "qp") {
        p.qp = ParseNumber<int>(v, path, line_no, h);
      } else if (h == "bits") {
        p.bits = ParseNumber<uint64_t>(v, path, line_no, h);
        if (p.bits == 0) {
          Fail(ErrorCode::kMalformedRow, path.string() + ":" +
                                             std::to_string(line_no) +
                                             ": bits must be positive");
        }
      } else if (!v.empty()) {
        p.metrics[h] = ParseNumber<double>(v, path, line_no, h);
      }
    }
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<RatePoint> CurveFor(const std::vector<RdPoint>& points,
                                const std::string& metric) {
  std::vector<RatePoint> curve;
  for (const auto& p : points) {
    const auto it = p.metrics.find(metric);
    if (it == p.metrics.end()) continue;
    curve.push_back({static_cast<double>(p.bits), it->second});
  }
  return curve;
}

std::vector<int> QpMonotonicityViolations(std::vector<RdPoint> curve) {
  std::sort(curve.begin(), curve.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.qp < b.qp; });
  std::vector<int> bad;
  for (size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].bits < curve[i - 1].bits)) bad.push_back(curve[i].qp);
  }
  return bad;
}

}  // namespace jndpf
