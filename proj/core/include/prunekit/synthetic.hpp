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

#ifndef PRUNEKIT_SYNTHETIC_HPP_
#define PRUNEKIT_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "prunekit/data_io.hpp"

namespace prunekit {

// Seeded Gaussian source/target pair with known relevant source classes.
struct TaskSpec {
  std::uint32_t n_source_classes = 20;
  std::uint32_t n_relevant = 10;
  std::uint32_t samples_per_class = 200;
  std::uint32_t dim = 16;
  double class_sep = 8.0;
  double target_shift = 0.5;
  std::uint32_t n_target_per_class = 50;
  std::uint64_t seed = 0;

  bool operator==(const TaskSpec&) const = default;
};

void ValidateTaskSpec(const TaskSpec& spec);

struct SyntheticTask {
  Dataset source;
  Dataset target;
  std::vector<std::uint32_t> relevant_ids;
  std::vector<double> source_means;  // n_source_classes x dim
  std::vector<double> target_means;  // n_relevant x dim
};

// Source classes are unit-variance isotropic Gaussians. Their means are
// standard-normal draws rescaled so the closest pair sits exactly class_sep
// apart. Target class c (c < n_relevant) is centred on source mean c moved
// by a random vector of norm target_shift. Every class draws from its own
// generator stream, so sample noise for class c is independent of how many
// classes the task has.
SyntheticTask GenerateTask(const TaskSpec& spec);

// Task specs travel as JSON objects with the field names above. Unknown keys
// are rejected unless listed in `extra_keys`.
TaskSpec TaskSpecFromJson(std::string_view text,
                          const std::vector<std::string>& extra_keys = {});
std::string TaskSpecToJson(const TaskSpec& spec);

}  // namespace prunekit

#endif  // PRUNEKIT_SYNTHETIC_HPP_
