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

#ifndef PRUNEKIT_TOOLS_SVG_PLOT_HPP_
#define PRUNEKIT_TOOLS_SVG_PLOT_HPP_

#include <string>

#include "prunekit/data_io.hpp"

namespace prunekit::cli {

// Accuracy against pruning ratio, with the no-prune accuracy as a dashed
// horizontal line. Output depends only on the report.
std::string RenderTrajectorySvg(const TrajectoryReport& report);

}  // namespace prunekit::cli

#endif  // PRUNEKIT_TOOLS_SVG_PLOT_HPP_
