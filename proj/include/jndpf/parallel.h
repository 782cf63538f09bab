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

#ifndef JNDPF_PARALLEL_H_
#define JNDPF_PARALLEL_H_

#include <cstddef>
#include <span>

namespace jndpf {

// Sets the OpenMP worker count for subsequent kernels; n <= 0 restores the
// runtime default.
void SetThreadCount(int n);
int ThreadCount();

// Pairwise (tree) summation in a fixed order. Kernels write per-block or
// per-row partials into an array and reduce through this, which keeps every
// scalar result bit-identical regardless of the number of threads.
double PairwiseSum(std::span<const double> values);

}  // namespace jndpf

#endif  // JNDPF_PARALLEL_H_
