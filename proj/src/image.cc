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

#include "jndpf/image.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace jndpf {
namespace {

namespace fs = std::filesystem;

std::vector<uint8_t> ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Fail(ErrorCode::kFileNotFound, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteAll(const fs::path& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    Fail(ErrorCode::kUnwritablePath, "cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    Fail(ErrorCode::kUnwritablePath, "short write to " + path.string());
  }
}

void RequireExists(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    Fail(ErrorCode::kFileNotFound, "no such file: " + path.string());
  }
}

// Reads one whitespace-delimited PNM header token, skipping '#' comments.
size_t PnmToken(const std::vector<uint8_t>& buf, size_t& pos,
                const fs::path& path) {
  for (;;) {
    while (pos < buf.size() && std::isspace(buf[pos])) ++pos;
    if (pos < buf.size() && buf[pos] == '#') {
      while (pos < buf.size() && buf[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  size_t value = 0;
  size_t digits = 0;
  while (pos < buf.size() && std::isdigit(buf[pos])) {
    value = value * 10 + (buf[pos] - '0');
    ++pos;
    if (++digits > 9) break;
  }
  if (digits == 0 || digits > 9) {
    Fail(ErrorCode::kMalformedHeader, "bad PGM header in " + path.string());
  }
  return value;
}

ImagePlane LoadPgm(const fs::path& path) {
  const auto buf = ReadAll(path);
  if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '5') {
    Fail(ErrorCode::kMalformedHeader, "not a binary PGM (P5): " + path.string());
  }
  size_t pos = 2;
  const size_t w = PnmToken(buf, pos, path);
  const size_t h = PnmToken(buf, pos, path);
  const size_t maxval = PnmToken(buf, pos, path);
  if (w == 0 || h == 0 || maxval == 0 || maxval > 255 || pos >= buf.size() ||
      !std::isspace(buf[pos])) {
    Fail(ErrorCode::kMalformedHeader, "unsupported PGM header in " +
                                          path.string());
  }
  ++pos;
  if (buf.size() - pos < w * h) {
    Fail(ErrorCode::kDimensionMismatch,
         "PGM payload shorter than declared dimensions: " + path.string());
  }
  return ImagePlane(w, h, std::vector<uint8_t>(buf.begin() + pos,
                                               buf.begin() + pos + w * h));
}

void SavePgm(const ImagePlane& plane, const fs::path& path) {
  const std::string header = "P5\n" + std::to_string(plane.width()) + " " +
                             std::to_string(plane.height()) + "\n255\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), plane.samples().begin(), plane.samples().end());
  WriteAll(path, bytes);
}

ImagePlane LoadPng(const fs::path& path) {
  RequireExists(path);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    Fail(ErrorCode::kMalformedHeader,
         "PNG decode failed for " + path.string() + ": " + image.message);
  }
  if ((image.format & PNG_FORMAT_FLAG_COLOR) ||
      (image.format & PNG_FORMAT_FLAG_LINEAR)) {
    png_image_free(&image);
    Fail(ErrorCode::kMalformedHeader,
         "PNG is not 8-bit grayscale: " + path.string());
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<uint8_t> samples(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, samples.data(), 0, nullptr)) {
    Fail(ErrorCode::kMalformedHeader,
         "PNG decode failed for " + path.string() + ": " + image.message);
  }
  return ImagePlane(image.width, image.height, std::move(samples));
}

void SavePng(const ImagePlane& plane, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(plane.width());
  image.height = static_cast<png_uint_32>(plane.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0,
                               plane.samples().data(), 0, nullptr)) {
    Fail(ErrorCode::kUnwritablePath,
         "PNG write failed for " + path.string() + ": " + image.message);
  }
}

// Luma and total sizes of one planar 8-bit frame.
size_t FrameBytes(size_t w, size_t h, ChromaLayout chroma) {
  const size_t luma = w * h;
  switch (chroma) {
    case ChromaLayout::k400: return luma;
    case ChromaLayout::k420: return luma + 2 * ((w + 1) / 2) * ((h + 1) / 2);
    case ChromaLayout::k422: return luma + 2 * ((w + 1) / 2) * h;
    case ChromaLayout::k444: return 3 * luma;
  }
  return luma;
}

std::string Y4mChromaTag(ChromaLayout chroma) {
  switch (chroma) {
    case ChromaLayout::k400: return "mono";
    case ChromaLayout::k420: return "420jpeg";
    case ChromaLayout::k422: return "422";
    case ChromaLayout::k444: return "444";
  }
  return "420jpeg";
}

ImagePlane LoadY4m(const fs::path& path) {
  const auto buf = ReadAll(path);
  const auto eol = std::find(buf.begin(), buf.end(), '\n');
  if (eol == buf.end()) {
    Fail(ErrorCode::kMalformedHeader, "truncated Y4M header: " + path.string());
  }
  std::istringstream header(std::string(buf.begin(), eol));
  std::string token;
  header >> token;
  if (token != "YUV4MPEG2") {
    Fail(ErrorCode::kMalformedHeader, "missing YUV4MPEG2 magic: " +
                                          path.string());
  }
  size_t w = 0;
  size_t h = 0;
  while (header >> token) {
    const char tag = token[0];
    const std::string value = token.substr(1);
    if (tag == 'W') {
      w = std::stoul(value);
    } else if (tag == 'H') {
      h = std::stoul(value);
    } else if (tag == 'C') {
      // Only 8-bit layouts; the chroma planes themselves are never read.
      const bool ok = value.rfind("420", 0) == 0 || value == "444" ||
                      value == "422" || value == "mono";
      const auto p = value.find('p');
      const bool high_depth =
          (p != std::string::npos && p + 1 < value.size() &&
           std::isdigit(static_cast<unsigned char>(value[p + 1]))) ||
          (value.rfind("mono", 0) == 0 && value.size() > 4);
      if (!ok || high_depth) {
        Fail(ErrorCode::kMalformedHeader,
             "unsupported Y4M colorspace C" + value + ": " + path.string());
      }
    }
  }
  if (w == 0 || h == 0) {
    Fail(ErrorCode::kMalformedHeader, "Y4M header lacks W/H: " + path.string());
  }
  auto frame = eol + 1;
  const auto frame_eol = std::find(frame, buf.end(), '\n');
  if (frame_eol == buf.end() ||
      std::string(frame, std::min(frame + 5, frame_eol)) != "FRAME") {
    Fail(ErrorCode::kMalformedHeader, "missing FRAME marker: " + path.string());
  }
  const auto payload = frame_eol + 1;
  if (static_cast<size_t>(buf.end() - payload) < w * h) {
    Fail(ErrorCode::kDimensionMismatch,
         "Y4M frame shorter than declared dimensions: " + path.string());
  }
  return ImagePlane(w, h, std::vector<uint8_t>(payload, payload + w * h));
}

std::vector<uint8_t> PlanarFrame(const ImagePlane& plane, ChromaLayout chroma) {
  std::vector<uint8_t> bytes(plane.samples().begin(), plane.samples().end());
  bytes.resize(FrameBytes(plane.width(), plane.height(), chroma), 128);
  return bytes;
}

void SaveY4m(const ImagePlane& plane, const fs::path& path,
             ChromaLayout chroma) {
  const std::string header = "YUV4MPEG2 W" + std::to_string(plane.width()) +
                             " H" + std::to_string(plane.height()) +
                             " F25:1 Ip A1:1 C" + Y4mChromaTag(chroma) +
                             "\nFRAME\n";
  std::vector<uint8_t> bytes(header.begin(), header.end());
  const auto frame = PlanarFrame(plane, chroma);
  bytes.insert(bytes.end(), frame.begin(), frame.end());
  WriteAll(path, bytes);
}

ImagePlane LoadRaw(const fs::path& path, const RawGeometry& raw) {
  if (raw.width == 0 || raw.height == 0) {
    Fail(ErrorCode::kInvalidArgument,
         "raw YUV input requires explicit width and height");
  }
  RequireExists(path);
  const auto buf = ReadAll(path);
  const size_t frame = FrameBytes(raw.width, raw.height, raw.chroma);
  if (buf.empty() || buf.size() % frame != 0) {
    Fail(ErrorCode::kDimensionMismatch,
         "raw file size " + std::to_string(buf.size()) +
             " is not a multiple of the declared frame size " +
             std::to_string(frame) + ": " + path.string());
  }
  return ImagePlane(raw.width, raw.height,
                    std::vector<uint8_t>(buf.begin(),
                                         buf.begin() + raw.width * raw.height));
}

}  // namespace

FloatPlane ToFloat(const ImagePlane& plane) {
  FloatPlane out(plane.width(), plane.height());
  std::copy(plane.samples().begin(), plane.samples().end(),
            out.samples().begin());
  return out;
}

uint8_t QuantizeSample(double value) {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  const double r = std::round(value);
  return r >= 255.0 ? 255 : static_cast<uint8_t>(r);
}

ImagePlane Quantize(const FloatPlane& plane) {
  ImagePlane out(plane.width(), plane.height());
  std::transform(plane.samples().begin(), plane.samples().end(),
                 out.samples().begin(), QuantizeSample);
  return out;
}

FloatPlane FoldPaddedGradient(const FloatPlane& padded_grad, size_t width,
                              size_t height) {
  FloatPlane out(width, height, 0.0);
  for (size_t y = 0; y < padded_grad.height(); ++y) {
    const size_t sy = std::min(y, height - 1);
    for (size_t x = 0; x < padded_grad.width(); ++x) {
      out.at(std::min(x, width - 1), sy) += padded_grad.at(x, y);
    }
  }
  return out;
}

std::optional<ImageFormat> FormatFromExtension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".pgm") return ImageFormat::kPgm;
  if (ext == ".png") return ImageFormat::kPng;
  if (ext == ".y4m") return ImageFormat::kY4m;
  if (ext == ".yuv" || ext == ".raw" || ext == ".y") return ImageFormat::kRawYuv;
  return std::nullopt;
}

ImageFormat ParseImageFormat(std::string_view name) {
  if (name == "pgm") return ImageFormat::kPgm;
  if (name == "png" || name == "png8-gray") return ImageFormat::kPng;
  if (name == "y4m" || name == "y4m-first-frame-luma") return ImageFormat::kY4m;
  if (name == "yuv" || name == "raw" || name == "raw-yuv") {
    return ImageFormat::kRawYuv;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown image format: " + std::string(name));
}

ChromaLayout ParseChromaLayout(std::string_view name) {
  if (name == "400" || name == "gray" || name == "mono") {
    return ChromaLayout::k400;
  }
  if (name == "420") return ChromaLayout::k420;
  if (name == "422") return ChromaLayout::k422;
  if (name == "444") return ChromaLayout::k444;
  Fail(ErrorCode::kInvalidArgument, "unknown chroma layout: " + std::string(name));
}

ImagePlane LoadImage(const fs::path& path, ImageFormat format,
                     const RawGeometry& raw) {
  switch (format) {
    case ImageFormat::kPgm: return LoadPgm(path);
    case ImageFormat::kPng: return LoadPng(path);
    case ImageFormat::kY4m: return LoadY4m(path);
    case ImageFormat::kRawYuv: return LoadRaw(path, raw);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown image format");
}

ImagePlane LoadImage(const fs::path& path, const RawGeometry& raw) {
  const auto format = FormatFromExtension(path);
  if (!format) {
    Fail(ErrorCode::kInvalidArgument,
         "cannot infer image format from extension: " + path.string());
  }
  return LoadImage(path, *format, raw);
}

void SaveImage(const ImagePlane& plane, const fs::path& path,
               ImageFormat format, ChromaLayout chroma) {
  switch (format) {
    case ImageFormat::kPgm: return SavePgm(plane, path);
    case ImageFormat::kPng: return SavePng(plane, path);
    case ImageFormat::kY4m: return SaveY4m(plane, path, chroma);
    case ImageFormat::kRawYuv: return WriteAll(path, PlanarFrame(plane, chroma));
  }
}

void SaveImage(const ImagePlane& plane, const fs::path& path) {
  const auto format = FormatFromExtension(path);
  if (!format) {
    Fail(ErrorCode::kInvalidArgument,
         "cannot infer image format from extension: " + path.string());
  }
  SaveImage(plane, path, *format);
}

void SavePfm(const FloatPlane& plane, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kUnwritablePath, "cannot write " + path.string());
  out << "Pf\n" << plane.width() << " " << plane.height() << "\n-1.0\n";
  // Rows are stored bottom to top.
  for (size_t y = plane.height(); y-- > 0;) {
    for (double v : plane.Row(y)) {
      const float f = static_cast<float>(v);
      out.write(reinterpret_cast<const char*>(&f), sizeof(f));
    }
  }
  if (!out) Fail(ErrorCode::kUnwritablePath, "short write to " + path.string());
}

FloatPlane LoadPfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kFileNotFound, "cannot open " + path.string());
  std::string magic;
  size_t w = 0, h = 0;
  double scale = 0.0;
  in >> magic >> w >> h >> scale;
  if (!in || magic != "Pf" || w == 0 || h == 0 || scale >= 0.0) {
    Fail(ErrorCode::kMalformedHeader,
         path.string() + ": expected a little-endian grayscale PFM");
  }
  in.get();
  FloatPlane plane(w, h);
  for (size_t y = h; y-- > 0;) {
    for (double& v : plane.Row(y)) {
      float f = 0.0f;
      in.read(reinterpret_cast<char*>(&f), sizeof(f));
      v = f;
    }
  }
  if (!in) Fail(ErrorCode::kMalformedHeader, path.string() + ": truncated data");
  return plane;
}

}  // namespace jndpf
