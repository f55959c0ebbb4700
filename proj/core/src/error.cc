// Copyright 2026 The Prunekit Authors
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

#include "prunekit/error.hpp"

namespace prunekit {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kBadMagic: return "bad_magic";
    case ErrorKind::kUnsupportedVersion: return "unsupported_version";
    case ErrorKind::kInvalidHeader: return "invalid_header";
    case ErrorKind::kTruncated: return "truncated";
    case ErrorKind::kLengthMismatch: return "length_mismatch";
    case ErrorKind::kNonFinite: return "non_finite";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kInvariant: return "invariant";
    case ErrorKind::kDimensionMismatch: return "dimension_mismatch";
    case ErrorKind::kRuntime: return "runtime";
  }
  return "unknown";
}

void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace prunekit
