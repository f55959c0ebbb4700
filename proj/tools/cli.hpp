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

#ifndef PRUNEKIT_TOOLS_CLI_HPP_
#define PRUNEKIT_TOOLS_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>

#include "prunekit/error.hpp"

namespace prunekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitRuntime = 3;

int ExitCodeFor(ErrorKind kind);

// Runs one invocation. `args` excludes the program name. Diagnostics go to
// `err` as a single "error[<kind>]: ..." line.
int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace prunekit::cli

#endif  // PRUNEKIT_TOOLS_CLI_HPP_
