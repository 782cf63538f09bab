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

#ifndef JNDPF_ENCODER_H_
#define JNDPF_ENCODER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "jndpf/image.h"

namespace jndpf {

// External encoder/decoder pair driven through command templates.
//
// Encode placeholders: {input} {output} {qp} {width} {height}
// Decode placeholders: {bitstream} {decoded} {width} {height}
// Templates are split on whitespace (double quotes group) and run without a
// shell. Bitstream size is the size of the {output} file.
struct EncoderProfile {
  std::string name;
  std::string encode;
  std::string decode;
  ImageFormat input_format = ImageFormat::kY4m;
  ChromaLayout input_chroma = ChromaLayout::k420;
  ImageFormat decoded_format = ImageFormat::kY4m;
  ChromaLayout decoded_chroma = ChromaLayout::k420;
  std::string bitstream_ext = ".bin";

  void Validate() const;
};

// Shipped All-Intra profiles: x264, x265, libaom, vvenc, and "copy" (a stub
// whose encode and decode are plain file copies, used in tests).
const std::map<std::string, EncoderProfile>& BuiltinProfiles();

// Splits a template into argv and substitutes placeholders.
std::vector<std::string> ExpandTemplate(
    const std::string& tmpl, const std::map<std::string, std::string>& vars);

// Resolves an executable name against PATH. Empty if not found.
std::filesystem::path FindExecutable(const std::string& name);

// Runs argv to completion with stdout and stderr appended to `log_path`.
// Throws kBinaryNotFound / kProcessFailed.
void RunProcess(const std::vector<std::string>& argv,
                const std::filesystem::path& log_path);

struct EncodeDecodeResult {
  uint64_t bits = 0;
  std::filesystem::path bitstream;
  std::filesystem::path decoded_path;
  ImagePlane decoded;  // luma of the decoded picture
};

// Writes `input` in the profile's input format under `workdir`, encodes at
// `qp`, decodes, and loads the decoded luma. `workdir` must exist.
EncodeDecodeResult RunEncodeDecode(const ImagePlane& input,
                                   const EncoderProfile& profile, int qp,
                                   const std::filesystem::path& workdir);

// Scratch root: $JNDPF_TMPDIR if set, else the system temp directory.
std::filesystem::path TempRoot();

// Removes its directory on destruction.
class ScopedTempDir {
 public:
  explicit ScopedTempDir(const std::string& prefix);
  ~ScopedTempDir();
  ScopedTempDir(const ScopedTempDir&) = delete;
  ScopedTempDir& operator=(const ScopedTempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace jndpf

#endif  // JNDPF_ENCODER_H_
