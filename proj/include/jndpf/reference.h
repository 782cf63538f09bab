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

#ifndef JNDPF_REFERENCE_H_
#define JNDPF_REFERENCE_H_

#include "jndpf/image.h"
#include "jndpf/injection.h"
#include "jndpf/jnd_model.h"
#include "jndpf/transform.h"

// Straightforward single-threaded versions of the parallel kernels. They
// share no code paths with the fast versions beyond the per-coefficient
// model functions, and serve as ground truth in tests and benchmarks.

namespace jndpf::reference {

// Direct quadruple-sum DCT-II / DCT-III.
DctBlock DctForward(const PixelBlock& block);
PixelBlock DctInverse(const DctBlock& coeffs);

BlockGrid ForwardDctGrid(const FloatPlane& padded);
FloatPlane InverseDctGrid(const BlockGrid& grid);

JndMap ComputeJndMap(const BlockGrid& coeffs, const JndParams& params,
                     const std::vector<double>* saliency = nullptr);

// Full 2-D convolution per output pixel with the block's kernel.
FloatPlane GaussianFilter(const ImagePlane& plane, const JndMap& jnd_map,
                          const GaussianParams& g);

// Unrounded, padded output of the whole pre-filter.
FloatPlane PrefilterUnclamped(const ImagePlane& plane, const JndParams& params,
                              const InjectionConfig& cfg,
                              const ImagePlane* saliency_map = nullptr);
ImagePlane Prefilter(const ImagePlane& plane, const JndParams& params,
                     const InjectionConfig& cfg,
                     const ImagePlane* saliency_map = nullptr);

// Direct 2-D 'valid' correlation with the outer product of the SSIM window.
FloatPlane ValidFilter(const FloatPlane& in);

}  // namespace jndpf::reference

#endif  // JNDPF_REFERENCE_H_
