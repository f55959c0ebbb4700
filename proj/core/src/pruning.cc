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

#include "prunekit/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prunekit/error.hpp"

namespace prunekit {

PruningPlan MakePlan(const ScoreVector& scores, double ratio, Order order) {
  Require(!scores.scores.empty(), ErrorKind::kInvalidArgument,
          "cannot plan over an empty score vector");
  Require(ratio >= 0.0 && ratio < 1.0, ErrorKind::kInvalidArgument,
          "pruning ratio must lie in [0, 1), got " + FormatDouble(ratio));
  if (!std::all_of(scores.scores.begin(), scores.scores.end(),
                   [](double s) { return std::isfinite(s); })) {
    Fail(ErrorKind::kInvalidArgument, "non-finite score");
  }
  const std::vector<double>& s = scores.scores;
  const std::uint64_t population = s.size();
  std::vector<std::uint64_t> rank(population);
  std::iota(rank.begin(), rank.end(), 0);
  if (order == Order::kOrdered) {
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return s[a] > s[b]; });
  } else {
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return s[a] < s[b]; });
  }
  const std::uint64_t keep = KeptCount(population, ratio);
  PruningPlan plan;
  plan.granularity = scores.granularity;
  plan.ratio = ratio;
  plan.order = order;
  plan.kept.assign(rank.begin(), rank.begin() + static_cast<std::ptrdiff_t>(keep));
  plan.dropped.assign(rank.begin() + static_cast<std::ptrdiff_t>(keep), rank.end());
  std::sort(plan.kept.begin(), plan.kept.end());
  std::sort(plan.dropped.begin(), plan.dropped.end());
  FinalizePlan(plan);
  return plan;
}

std::vector<std::uint64_t> KeptRows(const Dataset& source, const PruningPlan& plan) {
  const FeatureSet& f = source.features;
  std::vector<std::uint64_t> rows;
  if (plan.granularity == Granularity::kClass) {
    Require(plan.population() == source.manifest.n_classes,
            ErrorKind::kInvalidArgument,
            "class plan covers " + std::to_string(plan.population()) +
                " classes but the source has " +
                std::to_string(source.manifest.n_classes));
    Require(f.labels.has_value(), ErrorKind::kInvalidArgument,
            "class plans need a labeled source");
    Require(plan.label_remap.size() == plan.population(), ErrorKind::kInvariant,
            "class plan has no label remap; call FinalizePlan");
    for (std::uint64_t i = 0; i < f.n_samples; ++i) {
      const std::uint32_t label = f.Label(i);
      Require(label < plan.population(), ErrorKind::kInvalidArgument,
              "label " + std::to_string(label) + " outside the plan population");
      if (plan.label_remap[label] != kDroppedLabel) rows.push_back(i);
    }
  } else {
    Require(plan.population() == f.n_samples, ErrorKind::kInvalidArgument,
            "sample plan covers " + std::to_string(plan.population()) +
                " samples but the source has " + std::to_string(f.n_samples));
    rows = plan.kept;
  }
  return rows;
}

FeatureSet SelectRows(const FeatureSet& set, std::span<const std::uint64_t> rows) {
  FeatureSet out;
  out.dim = set.dim;
  out.n_samples = rows.size();
  out.features.reserve(rows.size() * set.dim);
  if (set.labels) out.labels.emplace().reserve(rows.size());
  for (const std::uint64_t r : rows) {
    Require(r < set.n_samples, ErrorKind::kInvalidArgument,
            "row " + std::to_string(r) + " out of range");
    const auto row = set.Row(r);
    out.features.insert(out.features.end(), row.begin(), row.end());
    if (set.labels) out.labels->push_back(set.Label(r));
  }
  return out;
}

Dataset ApplyPlan(const Dataset& source, const PruningPlan& plan) {
  ValidatePair(source.features, source.manifest);
  const std::vector<std::uint64_t> rows = KeptRows(source, plan);
  Dataset out;
  out.features = SelectRows(source.features, rows);
  if (plan.granularity == Granularity::kClass) {
    for (auto& label : *out.features.labels) {
      label = static_cast<std::uint32_t>(plan.label_remap[label]);
    }
    out.manifest.n_classes = static_cast<std::uint32_t>(plan.kept.size());
    if (source.manifest.class_names) {
      auto& names = out.manifest.class_names.emplace();
      for (const auto c : plan.kept) names.push_back((*source.manifest.class_names)[c]);
    }
    for (const auto c : plan.kept) {
      out.manifest.per_class_counts.push_back(source.manifest.per_class_counts[c]);
    }
  } else {
    out.manifest.n_classes = source.manifest.n_classes;
    out.manifest.class_names = source.manifest.class_names;
    if (out.features.labels) {
      out.manifest.per_class_counts =
          ManifestFromLabels(out.features, out.manifest.n_classes).per_class_counts;
    } else {
      out.manifest.per_class_counts.assign(out.manifest.n_classes, 0);
    }
  }
  return out;
}

Dataset CompactLabels(const FeatureSet& set, std::uint32_t n_classes) {
  Require(set.labels.has_value(), ErrorKind::kInvariant,
          "label compaction requires labels");
  std::vector<std::int64_t> remap(n_classes, kDroppedLabel);
  for (const auto label : *set.labels) {
    Require(label < n_classes, ErrorKind::kInvariant, "label out of range");
    remap[label] = 0;
  }
  std::uint32_t next = 0;
  for (auto& r : remap) {
    if (r != kDroppedLabel) r = next++;
  }
  Dataset out;
  out.features = set;
  for (auto& label : *out.features.labels) {
    label = static_cast<std::uint32_t>(remap[label]);
  }
  out.manifest = ManifestFromLabels(out.features, std::max<std::uint32_t>(next, 1));
  return out;
}

}  // namespace prunekit
