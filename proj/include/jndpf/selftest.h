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

#ifndef JNDPF_SELFTEST_H_
#define JNDPF_SELFTEST_H_

#include <cstdint>
#include <ostream>

namespace jndpf {

// Runs the built-in numerical checks (DCT properties, injection rule,
// loss gradients by central differences, BD-rate against numeric
// integration) and prints one line per check. Output depends only on
// `seed`. Returns the number of failed checks.
int RunSelfTest(uint64_t seed, std::ostream& out);

}  // namespace jndpf

#endif  // JNDPF_SELFTEST_H_
