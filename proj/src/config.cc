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

#include "jndpf/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "jndpf/error.h"

namespace jndpf {
namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double ToDouble(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    Fail(ErrorCode::kConfig, "'" + key + "' expects a number, got '" + value +
                                 "'");
  }
  return out;
}

int ToInt(const std::string& key, const std::string& value) {
  const double d = ToDouble(key, value);
  if (d != static_cast<int>(d)) {
    Fail(ErrorCode::kConfig, "'" + key + "' expects an integer");
  }
  return static_cast<int>(d);
}

bool ToBool(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  Fail(ErrorCode::kConfig, "'" + key + "' expects a boolean, got '" + value +
                               "'");
}

bool ApplyJndKey(JndParams& p, const std::string& key,
                 const std::string& value) {
  const std::map<std::string, double*> numbers = {
      {"s", &p.s},
      {"csf_a", &p.csf.a},
      {"csf_b", &p.csf.b},
      {"csf_c", &p.csf.c},
      {"csf_oblique_r", &p.csf.oblique_r},
      {"csf_gain", &p.csf.gain},
      {"picture_height", &p.csf.picture_height},
      {"viewing_ratio", &p.csf.viewing_ratio},
      {"la_dark_knee", &p.la.dark_knee},
      {"la_dark_divisor", &p.la.dark_divisor},
      {"la_bright_knee", &p.la.bright_knee},
      {"la_bright_divisor", &p.la.bright_divisor},
      {"cm_epsilon", &p.cm.epsilon},
      {"cm_cap", &p.cm.cap},
      {"cm_edge_low_radius_sq", &p.cm.edge_low_radius_sq},
      {"plane_ac_energy", &p.classifier.plane_ac_energy},
      {"edge_hf_ratio", &p.classifier.edge_hf_ratio},
      {"sa_salient", &p.sa.salient},
      {"sa_nonsalient", &p.sa.nonsalient},
  };
  if (auto it = numbers.find(key); it != numbers.end()) {
    *it->second = ToDouble(key, value);
    return true;
  }
  if (key == "enable_la") return p.enable_la = ToBool(key, value), true;
  if (key == "enable_cm") return p.enable_cm = ToBool(key, value), true;
  if (key == "enable_sa") return p.enable_sa = ToBool(key, value), true;
  return false;
}

bool ApplyInjectionKey(InjectionConfig& c, const std::string& key,
                       const std::string& value, const fs::path& base_dir) {
  if (key == "strategy") {
    c.strategy = ParseStrategy(Trim(value));
  } else if (key == "p_table") {
    c.p_table = ParseCoeffTable(value, base_dir);
  } else if (key == "p_table_plane") {
    c.p_tables_by_class[0] = ParseCoeffTable(value, base_dir);
  } else if (key == "p_table_edge") {
    c.p_tables_by_class[1] = ParseCoeffTable(value, base_dir);
  } else if (key == "p_table_texture") {
    c.p_tables_by_class[2] = ParseCoeffTable(value, base_dir);
  } else if (key == "gaussian_sigma_max") {
    c.gaussian.sigma_max = ToDouble(key, value);
  } else if (key == "gaussian_j_ref") {
    c.gaussian.j_ref = ToDouble(key, value);
  } else {
    return false;
  }
  return true;
}

[[noreturn]] void UnknownKey(const std::string& section,
                             const std::string& key) {
  Fail(ErrorCode::kConfig, "unknown key '" + key + "' in [" + section + "]");
}

EncoderProfile ParseEncoder(const std::string& name, const pt::ptree& section) {
  EncoderProfile p;
  if (const auto& builtin = BuiltinProfiles(); builtin.count(name)) {
    p = builtin.at(name);
  }
  p.name = name;
  for (const auto& [key, node] : section) {
    const std::string value = Trim(node.data());
    if (key == "encode") {
      p.encode = value;
    } else if (key == "decode") {
      p.decode = value;
    } else if (key == "input_format") {
      p.input_format = ParseImageFormat(value);
    } else if (key == "input_chroma") {
      p.input_chroma = ParseChromaLayout(value);
    } else if (key == "decoded_format") {
      p.decoded_format = ParseImageFormat(value);
    } else if (key == "decoded_chroma") {
      p.decoded_chroma = ParseChromaLayout(value);
    } else if (key == "bitstream_ext") {
      p.bitstream_ext = value;
    } else {
      UnknownKey("encoder." + name, key);
    }
  }
  p.Validate();
  return p;
}

}  // namespace

std::vector<std::string> ParseList(const std::string& value) {
  std::string v = Trim(value);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') Fail(ErrorCode::kConfig, "unterminated list: " + value);
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::string> items;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
      item = item.substr(1, item.size() - 2);
    }
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

CoeffTable ParseCoeffTable(const std::string& value, const fs::path& base_dir) {
  std::string text = Trim(value);
  const bool inline_numbers =
      !text.empty() && (text.front() == '[' || std::isdigit(text.front()) ||
                        text.front() == '.' || text.front() == '-');
  if (!inline_numbers) {
    fs::path path = text;
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) Fail(ErrorCode::kFileNotFound, "cannot open p table " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    std::replace(text.begin(), text.end(), '\n', ',');
  }
  const auto items = ParseList(text);
  if (items.size() != kBlockSize) {
    Fail(ErrorCode::kConfig, "p table needs 64 values, got " +
                                 std::to_string(items.size()));
  }
  CoeffTable table{};
  for (int i = 0; i < kBlockSize; ++i) table[i] = ToDouble("p_table", items[i]);
  return table;
}

Config ParseConfig(const std::string& text, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    Fail(ErrorCode::kConfig, std::string("config syntax error: ") + e.what());
  }

  Config cfg;
  auto resolve = [&base_dir](const std::string& p) {
    fs::path path = p;
    return path.is_relative() ? base_dir / path : path;
  };
  std::map<std::string, const pt::ptree*> variant_sections;
  std::map<std::string, const pt::ptree*> encoder_sections;
  const pt::ptree* bench = nullptr;

  for (const auto& [section, node] : tree) {
    if (section == "jnd") {
      for (const auto& [key, v] : node) {
        if (key == "saliency_map") {
          cfg.saliency_map = resolve(Trim(v.data()));
        } else if (!ApplyJndKey(cfg.jnd, key, v.data())) {
          UnknownKey(section, key);
        }
      }
    } else if (section == "injection") {
      for (const auto& [key, v] : node) {
        if (!ApplyInjectionKey(cfg.injection, key, v.data(), base_dir)) {
          UnknownKey(section, key);
        }
      }
    } else if (section == "loss") {
      for (const auto& [key, v] : node) {
        const std::string& value = v.data();
        if (key == "lambda1") {
          cfg.loss.lambda1 = ToDouble(key, value);
        } else if (key == "lambda2") {
          cfg.loss.lambda2 = ToDouble(key, value);
        } else if (key == "lambda3") {
          cfg.loss.lambda3 = ToDouble(key, value);
        } else if (key == "k") {
          cfg.loss.cutoff = ToInt(key, value);
        } else if (key == "charbonnier_eps") {
          cfg.loss.charbonnier_eps = ToDouble(key, value);
        } else if (key == "msssim_scales") {
          cfg.loss.msssim_max_scales = ToInt(key, value);
        } else {
          UnknownKey(section, key);
        }
      }
    } else if (section == "bench") {
      bench = &node;
    } else if (section.rfind("variant.", 0) == 0) {
      variant_sections[section.substr(8)] = &node;
    } else if (section.rfind("encoder.", 0) == 0) {
      encoder_sections[section.substr(8)] = &node;
    } else if (node.empty() && !node.data().empty()) {
      Fail(ErrorCode::kConfig, "key '" + section + "' outside any section");
    } else {
      Fail(ErrorCode::kConfig, "unknown section [" + section + "]");
    }
  }
  cfg.jnd.Validate();
  cfg.injection.Validate();
  cfg.loss.Validate();

  std::vector<std::string> variant_names = {"identity"};
  std::vector<std::string> encoder_names;
  if (bench) {
    for (const auto& [key, v] : *bench) {
      const std::string& value = v.data();
      if (key == "images") {
        for (const auto& item : ParseList(value)) {
          cfg.bench.images.push_back(resolve(item));
        }
      } else if (key == "qps") {
        cfg.bench.qps.clear();
        for (const auto& item : ParseList(value)) {
          cfg.bench.qps.push_back(ToInt(key, item));
        }
      } else if (key == "variants") {
        variant_names = ParseList(value);
      } else if (key == "encoders") {
        encoder_names = ParseList(value);
      } else if (key == "metrics" || key == "all_metrics") {
        std::vector<MetricKind> kinds;
        for (const auto& item : ParseList(value)) kinds.push_back(ParseMetric(item));
        (key == "metrics" ? cfg.bench.metrics : cfg.bench.all_metrics) = kinds;
      } else if (key == "workers") {
        cfg.bench.workers = ToInt(key, value);
      } else if (key == "anchor") {
        cfg.bench.anchor = Trim(value);
      } else {
        UnknownKey("bench", key);
      }
    }
  }

  for (const auto& name : variant_names) {
    VariantSpec spec{name, name == "identity", cfg.jnd, cfg.injection};
    if (auto it = variant_sections.find(name); it != variant_sections.end()) {
      for (const auto& [key, v] : *it->second) {
        if (key == "identity") {
          spec.identity = ToBool(key, v.data());
        } else if (!ApplyJndKey(spec.jnd, key, v.data()) &&
                   !ApplyInjectionKey(spec.injection, key, v.data(),
                                      base_dir)) {
          UnknownKey("variant." + name, key);
        }
      }
    } else if (name != "identity") {
      spec.injection.strategy = ParseStrategy(name);
    }
    spec.jnd.Validate();
    spec.injection.Validate();
    cfg.bench.variants.push_back(std::move(spec));
  }

  for (const auto& name : encoder_names) {
    if (auto it = encoder_sections.find(name); it != encoder_sections.end()) {
      cfg.bench.encoders.push_back(ParseEncoder(name, *it->second));
    } else if (BuiltinProfiles().count(name)) {
      cfg.bench.encoders.push_back(BuiltinProfiles().at(name));
    } else {
      Fail(ErrorCode::kConfig, "unknown encoder '" + name + "'");
    }
  }
  if (cfg.bench.workers < 0) {
    Fail(ErrorCode::kConfig, "[bench] workers must be >= 0");
  }
  return cfg;
}

Config LoadConfig(const fs::path& path) {
  if (path.empty() || path == "default") return ParseConfig("");
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kFileNotFound, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), path.parent_path().empty() ? fs::path(".")
                                                          : path.parent_path());
}

}  // namespace jndpf
