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

#include "jndpf/error.h"

namespace jndpf {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnwritablePath: return "unwritable-path";
    case ErrorCode::kImageTooSmall: return "image-too-small";
    case ErrorCode::kInsufficientPoints: return "insufficient-points";
    case ErrorCode::kNoOverlap: return "no-overlap";
    case ErrorCode::kNonMonotone: return "non-monotone";
    case ErrorCode::kBinaryNotFound: return "binary-not-found";
    case ErrorCode::kProcessFailed: return "process-failed";
    case ErrorCode::kMalformedRow: return "malformed-row";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace jndpf
