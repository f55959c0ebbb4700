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

#ifndef PRUNEKIT_PRUNING_HPP_
#define PRUNEKIT_PRUNING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "prunekit/data_io.hpp"

namespace prunekit {

// Keeps the KeptCount(|scores|, ratio) highest-scoring indices (ordered) or
// lowest-scoring indices (reversed). Ties keep the lower index first in both
// orders, so kept sets are nested as the ratio grows.
PruningPlan MakePlan(const ScoreVector& scores, double ratio, Order order);

// Rows of `source` that survive the plan, in original order. Class plans
// select by label over manifest.n_classes; sample plans by row index.
std::vector<std::uint64_t> KeptRows(const Dataset& source, const PruningPlan& plan);

FeatureSet SelectRows(const FeatureSet& set, std::span<const std::uint64_t> rows);

// Class plans drop whole classes and renumber the kept labels contiguously;
// sample plans drop rows and leave labels unchanged. Survivor order is
// preserved.
Dataset ApplyPlan(const Dataset& source, const PruningPlan& plan);

// Renumbers the labels that occur in `set` to 0..m-1 preserving order and
// returns the compacted data set; used when rows were selected by some other
// partition (e.g. k-means clusters) and arbitrary classes may have vanished.
Dataset CompactLabels(const FeatureSet& set, std::uint32_t n_classes);

}  // namespace prunekit

#endif  // PRUNEKIT_PRUNING_HPP_
