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

#ifndef JNDPF_IMAGE_H_
#define JNDPF_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jndpf/error.h"

namespace jndpf {

// Row-major single-channel raster. Used with uint8_t for luma images and
// with double for the real-valued intermediate planes.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(size_t width, size_t height, T fill = T{})
      : width_(width), height_(height), samples_(width * height, fill) {
    if (width == 0 || height == 0) {
      Fail(ErrorCode::kInvalidArgument, "plane dimensions must be positive");
    }
  }
  Plane(size_t width, size_t height, std::vector<T> samples)
      : width_(width), height_(height), samples_(std::move(samples)) {
    if (width == 0 || height == 0) {
      Fail(ErrorCode::kInvalidArgument, "plane dimensions must be positive");
    }
    if (samples_.size() != width * height) {
      Fail(ErrorCode::kDimensionMismatch,
           "sample count does not match width x height");
    }
  }

  size_t width() const { return width_; }
  size_t height() const { return height_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  T& at(size_t x, size_t y) { return samples_[y * width_ + x]; }
  const T& at(size_t x, size_t y) const { return samples_[y * width_ + x]; }

  std::span<T> Row(size_t y) { return {samples_.data() + y * width_, width_}; }
  std::span<const T> Row(size_t y) const {
    return {samples_.data() + y * width_, width_};
  }

  std::span<T> samples() { return samples_; }
  std::span<const T> samples() const { return samples_; }

  bool SameShape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  template <typename U>
  bool SameShape(const Plane<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Plane& a, const Plane& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.samples_ == b.samples_;
  }

 private:
  size_t width_ = 0;
  size_t height_ = 0;
  std::vector<T> samples_;
};

using ImagePlane = Plane<uint8_t>;
using FloatPlane = Plane<double>;

FloatPlane ToFloat(const ImagePlane& plane);
// Rounds half away from zero, then clamps to [0, 255].
uint8_t QuantizeSample(double value);
ImagePlane Quantize(const FloatPlane& plane);

template <typename T>
void RequireSameShape(const Plane<T>& a, const Plane<T>& b,
                      const char* what) {
  if (!a.SameShape(b)) {
    Fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": planes differ in dimensions (" +
             std::to_string(a.width()) + "x" + std::to_string(a.height()) +
             " vs " + std::to_string(b.width()) + "x" +
             std::to_string(b.height()) + ")");
  }
}

// Edge-replicated extension of a plane to the next multiple of 8 in each
// dimension. The padded raster is materialized.
template <typename T>
struct PaddedPlane {
  Plane<T> padded;
  size_t width = 0;   // original
  size_t height = 0;  // original

  size_t blocks_x() const { return padded.width() / 8; }
  size_t blocks_y() const { return padded.height() / 8; }

  Plane<T> Crop() const {
    Plane<T> out(width, height);
    for (size_t y = 0; y < height; ++y) {
      auto src = padded.Row(y);
      std::copy(src.begin(), src.begin() + width, out.Row(y).begin());
    }
    return out;
  }
};

inline size_t RoundUpToBlock(size_t n) { return (n + 7) / 8 * 8; }

template <typename T>
PaddedPlane<T> PadToBlocks(const Plane<T>& plane) {
  const size_t pw = RoundUpToBlock(plane.width());
  const size_t ph = RoundUpToBlock(plane.height());
  PaddedPlane<T> out{Plane<T>(pw, ph), plane.width(), plane.height()};
  for (size_t y = 0; y < ph; ++y) {
    auto src = plane.Row(std::min(y, plane.height() - 1));
    auto dst = out.padded.Row(y);
    std::copy(src.begin(), src.end(), dst.begin());
    std::fill(dst.begin() + plane.width(), dst.end(), src.back());
  }
  return out;
}

// Adjoint of edge replication: folds a gradient on the padded raster back
// onto the original samples it was replicated from.
FloatPlane FoldPaddedGradient(const FloatPlane& padded_grad, size_t width,
                              size_t height);

enum class ImageFormat { kPgm, kPng, kY4m, kRawYuv };

enum class ChromaLayout { k400, k420, k422, k444 };

// Required for raw YUV input; optional otherwise.
struct RawGeometry {
  size_t width = 0;
  size_t height = 0;
  ChromaLayout chroma = ChromaLayout::k420;
};

std::optional<ImageFormat> FormatFromExtension(const std::filesystem::path&);
ImageFormat ParseImageFormat(std::string_view name);
ChromaLayout ParseChromaLayout(std::string_view name);

ImagePlane LoadImage(const std::filesystem::path& path, ImageFormat format,
                     const RawGeometry& raw = {});
// Format inferred from the file extension.
ImagePlane LoadImage(const std::filesystem::path& path,
                     const RawGeometry& raw = {});

// Y4M and raw YUV outputs carry neutral (128) chroma in the requested
// layout so that encoders accepting only 4:2:0 can consume them.
void SaveImage(const ImagePlane& plane, const std::filesystem::path& path,
               ImageFormat format, ChromaLayout chroma = ChromaLayout::k420);
void SaveImage(const ImagePlane& plane, const std::filesystem::path& path);

// Single-channel little-endian PFM ("Pf"), for real-valued planes such as
// gradients.
void SavePfm(const FloatPlane& plane, const std::filesystem::path& path);
FloatPlane LoadPfm(const std::filesystem::path& path);

}  // namespace jndpf

#endif  // JNDPF_IMAGE_H_
