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

#include "jndpf/encoder.h"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "jndpf/error.h"

extern char** environ;

namespace jndpf {
namespace {

namespace fs = std::filesystem;

bool Contains(const std::string& s, const char* needle) {
  return s.find(needle) != std::string::npos;
}

std::string Extension(ImageFormat format) {
  switch (format) {
    case ImageFormat::kPgm: return ".pgm";
    case ImageFormat::kPng: return ".png";
    case ImageFormat::kY4m: return ".y4m";
    case ImageFormat::kRawYuv: return ".yuv";
  }
  return ".bin";
}

std::string TailOf(const fs::path& log, size_t max_bytes = 2000) {
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  return s.size() > max_bytes ? s.substr(s.size() - max_bytes) : s;
}

EncoderProfile Profile(std::string name, std::string encode,
                       std::string decode, ImageFormat in_format,
                       ImageFormat out_format, std::string ext) {
  EncoderProfile p;
  p.name = std::move(name);
  p.encode = std::move(encode);
  p.decode = std::move(decode);
  p.input_format = in_format;
  p.decoded_format = out_format;
  p.bitstream_ext = std::move(ext);
  return p;
}

}  // namespace

void EncoderProfile::Validate() const {
  auto need = [this](const std::string& tmpl, const char* key,
                     const char* which) {
    if (!Contains(tmpl, key)) {
      Fail(ErrorCode::kConfig, "encoder '" + name + "': " + which +
                                   " template lacks " + key);
    }
  };
  if (name.empty()) Fail(ErrorCode::kConfig, "encoder profile without a name");
  need(encode, "{input}", "encode");
  need(encode, "{output}", "encode");
  need(encode, "{qp}", "encode");
  if (input_format == ImageFormat::kRawYuv) {
    need(encode, "{width}", "encode");
    need(encode, "{height}", "encode");
  }
  need(decode, "{bitstream}", "decode");
  need(decode, "{decoded}", "decode");
  if (input_format != ImageFormat::kY4m &&
      input_format != ImageFormat::kRawYuv) {
    Fail(ErrorCode::kConfig, "encoder '" + name +
                                 "': input_format must be y4m or yuv");
  }
}

const std::map<std::string, EncoderProfile>& BuiltinProfiles() {
  static const auto profiles = [] {
    const std::string ffmpeg_decode =
        "ffmpeg -nostdin -v error -y -i {bitstream} -frames:v 1 "
        "-pix_fmt yuv420p -f yuv4mpegpipe {decoded}";
    std::map<std::string, EncoderProfile> m;
    m["x264"] = Profile(
        "x264",
        "x264 --preset medium --qp {qp} --keyint 1 --no-scenecut --frames 1 "
        "--output {output} {input}",
        ffmpeg_decode, ImageFormat::kY4m, ImageFormat::kY4m, ".264");
    m["x265"] = Profile(
        "x265",
        "x265 --preset medium --qp {qp} --keyint 1 --min-keyint 1 "
        "--no-scenecut --frames 1 --input {input} --output {output}",
        ffmpeg_decode, ImageFormat::kY4m, ImageFormat::kY4m, ".hevc");
    m["libaom"] = Profile(
        "libaom",
        "aomenc --end-usage=q --cq-level={qp} --kf-max-dist=0 --limit=1 "
        "--ivf -o {output} {input}",
        ffmpeg_decode, ImageFormat::kY4m, ImageFormat::kY4m, ".ivf");
    m["vvenc"] = Profile(
        "vvenc",
        "vvencapp -i {input} -s {width}x{height} -c yuv420 --qp {qp} "
        "--preset medium --intraperiod 1 -f 1 -o {output}",
        "vvdecapp -b {bitstream} -o {decoded}", ImageFormat::kRawYuv,
        ImageFormat::kRawYuv, ".266");
    m["copy"] = Profile("copy", "cp {input} {output} # {qp}",
                        "cp {bitstream} {decoded}", ImageFormat::kY4m,
                        ImageFormat::kY4m, ".y4m");
    return m;
  }();
  return profiles;
}

std::vector<std::string> ExpandTemplate(
    const std::string& tmpl, const std::map<std::string, std::string>& vars) {
  std::vector<std::string> argv;
  std::string token;
  bool in_token = false;
  bool quoted = false;
  for (char c : tmpl) {
    if (c == '"') {
      quoted = !quoted;
      in_token = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) argv.push_back(token);
      token.clear();
      in_token = false;
    } else {
      token += c;
      in_token = true;
    }
  }
  if (in_token) argv.push_back(token);
  // A bare '#' starts a comment; the stub profile uses it to mention {qp}.
  for (size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "#") {
      argv.resize(i);
      break;
    }
  }
  for (auto& arg : argv) {
    for (const auto& [key, value] : vars) {
      const std::string placeholder = "{" + key + "}";
      for (size_t pos = arg.find(placeholder); pos != std::string::npos;
           pos = arg.find(placeholder, pos + value.size())) {
        arg.replace(pos, placeholder.size(), value);
      }
    }
  }
  return argv;
}

fs::path FindExecutable(const std::string& name) {
  if (name.empty()) return {};
  if (name.find('/') != std::string::npos) {
    return access(name.c_str(), X_OK) == 0 ? fs::path(name) : fs::path();
  }
  const char* path_env = std::getenv("PATH");
  std::istringstream dirs(path_env ? path_env : "/usr/bin:/bin");
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    const fs::path candidate = fs::path(dir) / name;
    if (access(candidate.c_str(), X_OK) == 0 && !fs::is_directory(candidate)) {
      return candidate;
    }
  }
  return {};
}

void RunProcess(const std::vector<std::string>& argv,
                const fs::path& log_path) {
  if (argv.empty()) Fail(ErrorCode::kInvalidArgument, "empty command");
  const fs::path exe = FindExecutable(argv[0]);
  if (exe.empty()) {
    Fail(ErrorCode::kBinaryNotFound, "executable not found: " + argv[0]);
  }
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null",
                                   O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log_path.c_str(),
                                   O_WRONLY | O_CREAT | O_APPEND, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  pid_t pid = 0;
  const int rc =
      posix_spawn(&pid, exe.c_str(), &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    Fail(ErrorCode::kProcessFailed,
         "failed to spawn " + argv[0] + ": " + std::strerror(rc));
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) {
      Fail(ErrorCode::kProcessFailed, "waitpid failed for " + argv[0]);
    }
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const std::string how =
        WIFEXITED(status) ? "exit status " + std::to_string(WEXITSTATUS(status))
                          : "signal " + std::to_string(WTERMSIG(status));
    Fail(ErrorCode::kProcessFailed,
         argv[0] + " failed with " + how + "\n" + TailOf(log_path));
  }
}

EncodeDecodeResult RunEncodeDecode(const ImagePlane& input,
                                   const EncoderProfile& profile, int qp,
                                   const fs::path& workdir) {
  profile.Validate();
  const std::string stem = profile.name + "_qp" + std::to_string(qp);
  const fs::path input_path = workdir / (stem + "_in" +
                                         Extension(profile.input_format));
  EncodeDecodeResult result;
  result.bitstream = workdir / (stem + profile.bitstream_ext);
  result.decoded_path =
      workdir / (stem + "_dec" + Extension(profile.decoded_format));
  const fs::path log = workdir / (stem + ".log");

  SaveImage(input, input_path, profile.input_format, profile.input_chroma);
  const std::map<std::string, std::string> vars = {
      {"input", input_path.string()},
      {"output", result.bitstream.string()},
      {"bitstream", result.bitstream.string()},
      {"decoded", result.decoded_path.string()},
      {"qp", std::to_string(qp)},
      {"width", std::to_string(input.width())},
      {"height", std::to_string(input.height())}};
  RunProcess(ExpandTemplate(profile.encode, vars), log);
  std::error_code ec;
  const auto size = fs::file_size(result.bitstream, ec);
  if (ec || size == 0) {
    Fail(ErrorCode::kProcessFailed,
         profile.name + " produced no bitstream at " + result.bitstream.string());
  }
  result.bits = 8 * static_cast<uint64_t>(size);

  RunProcess(ExpandTemplate(profile.decode, vars), log);
  RawGeometry raw{input.width(), input.height(), profile.decoded_chroma};
  result.decoded = LoadImage(result.decoded_path, profile.decoded_format, raw);
  if (!result.decoded.SameShape(input)) {
    Fail(ErrorCode::kDimensionMismatch,
         profile.name + ": decoded picture is " +
             std::to_string(result.decoded.width()) + "x" +
             std::to_string(result.decoded.height()) + ", expected " +
             std::to_string(input.width()) + "x" +
             std::to_string(input.height()));
  }
  return result;
}

fs::path TempRoot() {
  if (const char* env = std::getenv("JNDPF_TMPDIR"); env && *env) {
    return env;
  }
  return fs::temp_directory_path();
}

ScopedTempDir::ScopedTempDir(const std::string& prefix) {
  std::random_device rd;
  const fs::path root = TempRoot();
  fs::create_directories(root);
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = root / (prefix + "-" + std::to_string(rd()));
    std::error_code ec;
    if (fs::create_directory(candidate, ec)) {
      path_ = std::move(candidate);
      return;
    }
  }
  Fail(ErrorCode::kUnwritablePath,
       "cannot create a scratch directory under " + root.string());
}

ScopedTempDir::~ScopedTempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace jndpf
