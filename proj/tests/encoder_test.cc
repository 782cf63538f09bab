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

#include <cstdlib>
#include <fstream>

#include "jndpf/encoder.h"
#include "test_util.h"

namespace jndpf {
namespace {

namespace fs = std::filesystem;
using testing::CodeOf;

EncoderProfile FakeProfile() {
  EncoderProfile p;
  p.name = "fake";
  p.encode = std::string(JNDPF_FAKE_CODEC) + " encode {input} {output} {qp}";
  p.decode = std::string(JNDPF_FAKE_CODEC) + " decode {bitstream} {decoded}";
  return p;
}

TEST(EncoderTest, ExpandTemplate) {
  const std::map<std::string, std::string> vars = {
      {"input", "/tmp/a b.y4m"}, {"qp", "27"}, {"width", "64"}};
  EXPECT_EQ(ExpandTemplate("enc --qp {qp} -i {input} -s {width}x{width}", vars),
            (std::vector<std::string>{"enc", "--qp", "27", "-i", "/tmp/a b.y4m",
                                      "-s", "64x64"}));
  EXPECT_EQ(ExpandTemplate("tool \"two words\"  \"\" x # {qp} ignored", vars),
            (std::vector<std::string>{"tool", "two words", "", "x"}));
}

TEST(EncoderTest, BuiltinProfilesAreValid) {
  for (const char* name : {"x264", "x265", "libaom", "vvenc", "copy"}) {
    ASSERT_TRUE(BuiltinProfiles().count(name)) << name;
    EXPECT_NO_THROW(BuiltinProfiles().at(name).Validate()) << name;
  }
  EncoderProfile p = BuiltinProfiles().at("x265");
  p.encode = "x265 --input {input} --output {output}";
  EXPECT_EQ(CodeOf([&] { p.Validate(); }), ErrorCode::kConfig);
}

TEST(EncoderTest, ProcessErrors) {
  ScopedTempDir dir("jndpf-test");
  const fs::path log = dir.path() / "run.log";
  EXPECT_TRUE(FindExecutable("nonexistent-encoder-xyz").empty());
  EXPECT_FALSE(FindExecutable("sh").empty());
  EXPECT_EQ(CodeOf([&] { RunProcess({"nonexistent-encoder-xyz"}, log); }),
            ErrorCode::kBinaryNotFound);
  try {
    RunProcess({"sh", "-c", "echo broken pipe dream >&2; exit 4"}, log);
    FAIL() << "expected failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProcessFailed);
    EXPECT_NE(std::string(e.what()).find("exit status 4"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("broken pipe dream"),
              std::string::npos);
  }
}

TEST(EncoderTest, CopyStubRoundTrip) {
  const ImagePlane img = LoadImage(testing::DataDir() / "cat.pgm");
  ScopedTempDir dir("jndpf-test");
  const auto r = RunEncodeDecode(img, BuiltinProfiles().at("copy"), 27,
                                 dir.path());
  EXPECT_EQ(r.bits, 8 * fs::file_size(r.bitstream));
  EXPECT_EQ(r.decoded, img);
}

TEST(EncoderTest, FakeCodecRateFallsWithQp) {
  const ImagePlane img = LoadImage(testing::DataDir() / "camera.pgm");
  ScopedTempDir dir("jndpf-test");
  const auto lo = RunEncodeDecode(img, FakeProfile(), 27, dir.path());
  const auto hi = RunEncodeDecode(img, FakeProfile(), 42, dir.path());
  EXPECT_GT(lo.bits, hi.bits);
  EXPECT_TRUE(lo.decoded.SameShape(img));
}

TEST(EncoderTest, MissingBinaryAndBadDecode) {
  const ImagePlane img = LoadImage(testing::DataDir() / "cat.pgm");
  ScopedTempDir dir("jndpf-test");
  EncoderProfile missing = FakeProfile();
  missing.encode = "nonexistent-encoder-xyz {input} {output} {qp}";
  EXPECT_EQ(CodeOf([&] { RunEncodeDecode(img, missing, 27, dir.path()); }),
            ErrorCode::kBinaryNotFound);

  // A decoder that yields a picture of the wrong size.
  const fs::path other = dir.path() / "other.y4m";
  SaveImage(ImagePlane(16, 16), other);
  EncoderProfile wrong = FakeProfile();
  wrong.decode = "cp " + other.string() + " {decoded} # {bitstream}";
  EXPECT_EQ(CodeOf([&] { RunEncodeDecode(img, wrong, 27, dir.path()); }),
            ErrorCode::kDimensionMismatch);

  EncoderProfile failing = FakeProfile();
  failing.encode = std::string(JNDPF_FAKE_CODEC) + " fail {input} {output} {qp}";
  EXPECT_EQ(CodeOf([&] { RunEncodeDecode(img, failing, 27, dir.path()); }),
            ErrorCode::kProcessFailed);
}

TEST(EncoderTest, RawYuvProfile) {
  const ImagePlane img = LoadImage(testing::DataDir() / "moon.pgm");
  ScopedTempDir dir("jndpf-test");
  EncoderProfile raw;
  raw.name = "rawcopy";
  raw.encode = "cp {input} {output} # {qp} {width} {height}";
  raw.decode = "cp {bitstream} {decoded}";
  raw.input_format = raw.decoded_format = ImageFormat::kRawYuv;
  raw.input_chroma = raw.decoded_chroma = ChromaLayout::k420;
  const auto r = RunEncodeDecode(img, raw, 32, dir.path());
  EXPECT_EQ(r.bits, 8u * (img.size() * 3 / 2));
  EXPECT_EQ(r.decoded, img);
}

TEST(EncoderTest, ScratchDirectories) {
  const char* old = std::getenv("JNDPF_TMPDIR");
  const std::string saved = old ? old : "";
  ScopedTempDir outer("jndpf-test");
  setenv("JNDPF_TMPDIR", outer.path().c_str(), 1);
  EXPECT_EQ(TempRoot(), outer.path());
  fs::path inner_path;
  {
    ScopedTempDir inner("jndpf-inner");
    inner_path = inner.path();
    EXPECT_EQ(inner_path.parent_path(), outer.path());
    std::ofstream(inner_path / "f") << "x";
  }
  EXPECT_FALSE(fs::exists(inner_path));
  if (old) {
    setenv("JNDPF_TMPDIR", saved.c_str(), 1);
  } else {
    unsetenv("JNDPF_TMPDIR");
  }
}

}  // namespace
}  // namespace jndpf
