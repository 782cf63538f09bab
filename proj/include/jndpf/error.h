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

#ifndef JNDPF_ERROR_H_
#define JNDPF_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jndpf {

enum class ErrorCode {
  kInvalidArgument,
  kFileNotFound,
  kMalformedHeader,
  kDimensionMismatch,
  kUnwritablePath,
  kImageTooSmall,
  kInsufficientPoints,
  kNoOverlap,
  kNonMonotone,
  kBinaryNotFound,
  kProcessFailed,
  kMalformedRow,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace jndpf

#endif  // JNDPF_ERROR_H_
