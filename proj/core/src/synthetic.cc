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

#include "prunekit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "prunekit/error.hpp"
#include "prunekit/random.hpp"

namespace prunekit {
namespace {

using json = nlohmann::json;

// Stream namespaces; the low 32 bits carry the class index.
constexpr std::uint64_t kMeanStream = 1ull << 32;
constexpr std::uint64_t kSourceNoiseStream = 2ull << 32;
constexpr std::uint64_t kShiftStream = 3ull << 32;
constexpr std::uint64_t kTargetNoiseStream = 4ull << 32;

void FillClass(Philox& rng, std::span<const double> mean, std::uint32_t count,
               std::uint32_t label, FeatureSet& out) {
  for (std::uint32_t i = 0; i < count; ++i) {
    for (const double m : mean) {
      out.features.push_back(static_cast<float>(m + rng.Normal()));
    }
    out.labels->push_back(label);
  }
}

}  // namespace

void ValidateTaskSpec(const TaskSpec& s) {
  Require(s.n_source_classes > 0, ErrorKind::kInvalidArgument,
          "n_source_classes must be positive");
  Require(s.n_relevant <= s.n_source_classes, ErrorKind::kInvalidArgument,
          "n_relevant must not exceed n_source_classes");
  Require(s.samples_per_class > 0, ErrorKind::kInvalidArgument,
          "samples_per_class must be positive");
  Require(s.dim > 0, ErrorKind::kInvalidArgument, "dim must be positive");
  Require(std::isfinite(s.class_sep) && s.class_sep > 0,
          ErrorKind::kInvalidArgument, "class_sep must be positive");
  Require(std::isfinite(s.target_shift) && s.target_shift >= 0,
          ErrorKind::kInvalidArgument, "target_shift must be non-negative");
  Require(s.n_target_per_class > 0, ErrorKind::kInvalidArgument,
          "n_target_per_class must be positive");
}

SyntheticTask GenerateTask(const TaskSpec& spec) {
  ValidateTaskSpec(spec);
  const std::uint32_t n = spec.n_source_classes;
  const std::uint32_t d = spec.dim;

  SyntheticTask task;
  task.source_means.resize(static_cast<std::size_t>(n) * d);
  for (std::uint32_t c = 0; c < n; ++c) {
    Philox rng(spec.seed, kMeanStream | c);
    for (std::uint32_t j = 0; j < d; ++j) {
      task.source_means[c * d + j] = rng.Normal();
    }
  }
  if (n > 1) {
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) {
        double sq = 0;
        for (std::uint32_t j = 0; j < d; ++j) {
          const double diff = task.source_means[a * d + j] - task.source_means[b * d + j];
          sq += diff * diff;
        }
        min_dist = std::min(min_dist, std::sqrt(sq));
      }
    }
    Require(min_dist > 0, ErrorKind::kRuntime, "degenerate class means drawn");
    const double scale = spec.class_sep / min_dist;
    for (double& m : task.source_means) m *= scale;
  } else {
    // A single class has no pair to separate; put it at the origin.
    std::fill(task.source_means.begin(), task.source_means.end(), 0.0);
  }

  task.target_means.resize(static_cast<std::size_t>(spec.n_relevant) * d);
  for (std::uint32_t c = 0; c < spec.n_relevant; ++c) {
    std::vector<double> direction(d);
    double norm = 0;
    if (spec.target_shift > 0) {
      Philox rng(spec.seed, kShiftStream | c);
      do {
        norm = 0;
        for (auto& v : direction) {
          v = rng.Normal();
          norm += v * v;
        }
      } while (norm == 0);
      norm = std::sqrt(norm);
    }
    for (std::uint32_t j = 0; j < d; ++j) {
      const double offset =
          spec.target_shift > 0 ? spec.target_shift * direction[j] / norm : 0.0;
      task.target_means[c * d + j] = task.source_means[c * d + j] + offset;
    }
  }

  auto& source = task.source.features;
  source.dim = d;
  source.n_samples = static_cast<std::uint64_t>(n) * spec.samples_per_class;
  source.features.reserve(source.n_samples * d);
  source.labels.emplace();
  for (std::uint32_t c = 0; c < n; ++c) {
    Philox rng(spec.seed, kSourceNoiseStream | c);
    FillClass(rng, {task.source_means.data() + c * d, d}, spec.samples_per_class,
              c, source);
  }
  task.source.manifest = ManifestFromLabels(source, n);

  auto& target = task.target.features;
  target.dim = d;
  target.n_samples =
      static_cast<std::uint64_t>(spec.n_relevant) * spec.n_target_per_class;
  target.features.reserve(target.n_samples * d);
  target.labels.emplace();
  for (std::uint32_t c = 0; c < spec.n_relevant; ++c) {
    Philox rng(spec.seed, kTargetNoiseStream | c);
    FillClass(rng, {task.target_means.data() + c * d, d},
              spec.n_target_per_class, c, target);
  }
  // A task with no relevant classes still needs a valid (if empty) manifest.
  task.target.manifest =
      ManifestFromLabels(target, std::max<std::uint32_t>(1, spec.n_relevant));

  for (std::uint32_t c = 0; c < spec.n_relevant; ++c) task.relevant_ids.push_back(c);
  return task;
}

TaskSpec TaskSpecFromJson(std::string_view text,
                          const std::vector<std::string>& extra_keys) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kSchema, std::string("task spec: ") + e.what());
  }
  Require(doc.is_object(), ErrorKind::kSchema, "task spec must be a JSON object");
  static const std::vector<std::string> kKeys = {
      "n_source_classes", "n_relevant", "samples_per_class", "dim",
      "class_sep",        "target_shift", "n_target_per_class", "seed"};
  for (const auto& [key, value] : doc.items()) {
    const bool known =
        std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end() ||
        std::find(extra_keys.begin(), extra_keys.end(), key) != extra_keys.end();
    Require(known, ErrorKind::kSchema, "task spec: unknown key \"" + key + "\"");
  }
  TaskSpec spec;
  auto count = [&](const char* key, std::uint32_t& field) {
    if (const auto it = doc.find(key); it != doc.end()) {
      Require(it->is_number_unsigned(), ErrorKind::kSchema,
              std::string("task spec: ") + key + " must be a non-negative integer");
      const auto v = it->get<std::uint64_t>();
      Require(v <= UINT32_MAX, ErrorKind::kSchema,
              std::string("task spec: ") + key + " is too large");
      field = static_cast<std::uint32_t>(v);
    }
  };
  auto real = [&](const char* key, double& field) {
    if (const auto it = doc.find(key); it != doc.end()) {
      Require(it->is_number(), ErrorKind::kSchema,
              std::string("task spec: ") + key + " must be a number");
      field = it->get<double>();
    }
  };
  count("n_source_classes", spec.n_source_classes);
  count("n_relevant", spec.n_relevant);
  count("samples_per_class", spec.samples_per_class);
  count("dim", spec.dim);
  real("class_sep", spec.class_sep);
  real("target_shift", spec.target_shift);
  count("n_target_per_class", spec.n_target_per_class);
  if (const auto it = doc.find("seed"); it != doc.end()) {
    Require(it->is_number_unsigned(), ErrorKind::kSchema,
            "task spec: seed must be a non-negative integer");
    spec.seed = it->get<std::uint64_t>();
  }
  try {
    ValidateTaskSpec(spec);
  } catch (const Error& e) {
    Fail(ErrorKind::kSchema, std::string("task spec: ") + e.what());
  }
  return spec;
}

std::string TaskSpecToJson(const TaskSpec& s) {
  json doc;
  doc["n_source_classes"] = s.n_source_classes;
  doc["n_relevant"] = s.n_relevant;
  doc["samples_per_class"] = s.samples_per_class;
  doc["dim"] = s.dim;
  doc["class_sep"] = s.class_sep;
  doc["target_shift"] = s.target_shift;
  doc["n_target_per_class"] = s.n_target_per_class;
  doc["seed"] = s.seed;
  return doc.dump(2) + "\n";
}

}  // namespace prunekit
