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

#include "jndpf/parallel.h"

#include <omp.h>

namespace jndpf {
namespace {

int default_threads = 0;

}  // namespace

void SetThreadCount(int n) {
  if (default_threads == 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : default_threads);
}

int ThreadCount() { return omp_get_max_threads(); }

double PairwiseSum(std::span<const double> values) {
  constexpr size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

}  // namespace jndpf
