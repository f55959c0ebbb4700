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

#ifndef PRUNEKIT_ERROR_HPP_
#define PRUNEKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace prunekit {

// Every failure raised by the library carries one of these kinds. The CLI
// maps them onto its exit-code contract.
enum class ErrorKind {
  kUsage,
  kInvalidArgument,
  kIo,
  kBadMagic,
  kUnsupportedVersion,
  kInvalidHeader,
  kTruncated,
  kLengthMismatch,
  kNonFinite,
  kSchema,
  kInvariant,
  kDimensionMismatch,
  kRuntime,
};

// Stable snake_case identifier, e.g. "bad_magic".
std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

inline void Require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) Fail(kind, message);
}

}  // namespace prunekit

#endif  // PRUNEKIT_ERROR_HPP_
