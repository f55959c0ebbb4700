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

#ifndef PRUNEKIT_DATA_IO_HPP_
#define PRUNEKIT_DATA_IO_HPP_

// On-disk formats and the document types that flow between modules.
//
// Feature file (".dpf"), all integers little-endian:
//
//   offset  size  field
//   0       4     magic "DPTL"
//   4       2     version (u16) = 1
//   6       2     flags (u16); bit 0 = labels present, other bits zero
//   8       8     n_samples (u64)
//   16      4     dim (u32)
//   20      4     reserved (u32) = 0
//   24      ...   n_samples * dim f32, row-major
//   ...     ...   n_samples u32 labels, if flagged
//
// Manifests, scores, plans and reports are JSON with sorted keys so equal
// values always serialize to equal bytes.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prunekit {

inline constexpr std::size_t kFeatureHeaderBytes = 24;
inline constexpr std::uint16_t kFeatureFormatVersion = 1;

struct FeatureSet {
  std::uint64_t n_samples = 0;
  std::uint32_t dim = 1;
  std::vector<float> features;  // n_samples * dim, row-major
  std::optional<std::vector<std::uint32_t>> labels;

  bool has_labels() const { return labels.has_value(); }
  std::span<const float> Row(std::size_t i) const {
    return {features.data() + i * dim, dim};
  }
  std::span<float> MutableRow(std::size_t i) {
    return {features.data() + i * dim, dim};
  }
  std::uint32_t Label(std::size_t i) const { return (*labels)[i]; }
};

// Bitwise equality: floats are compared by representation, not value.
bool BitwiseEqual(const FeatureSet& a, const FeatureSet& b);

// Throws kInvariant (shape) or kNonFinite.
void ValidateFeatureSet(const FeatureSet& set);

struct ClassManifest {
  std::uint32_t n_classes = 0;
  std::optional<std::vector<std::string>> class_names;
  std::vector<std::uint64_t> per_class_counts;

  bool operator==(const ClassManifest&) const = default;
};

void ValidateManifest(const ClassManifest& manifest);
// Label range and count consistency between a labeled set and its manifest.
void ValidatePair(const FeatureSet& set, const ClassManifest& manifest);
ClassManifest ManifestFromLabels(const FeatureSet& set, std::uint32_t n_classes);

// A labeled feature set together with its class partition.
struct Dataset {
  FeatureSet features;
  ClassManifest manifest;
};

enum class Granularity { kClass, kSample };
enum class Order { kOrdered, kReversed };

std::string_view GranularityName(Granularity g);
Granularity ParseGranularity(std::string_view name);
std::string_view OrderName(Order order);
Order ParseOrder(std::string_view name);

struct ScoreVector {
  Granularity granularity = Granularity::kClass;
  std::string method;
  std::vector<double> scores;
  std::optional<std::uint64_t> seed;

  bool operator==(const ScoreVector&) const = default;
};

inline constexpr std::int64_t kDroppedLabel = -1;

struct PruningPlan {
  Granularity granularity = Granularity::kClass;
  double ratio = 0.0;
  Order order = Order::kOrdered;
  std::vector<std::uint64_t> kept;     // ascending
  std::vector<std::uint64_t> dropped;  // ascending
  // Class granularity only: old class index -> new contiguous index, or
  // kDroppedLabel. Derived from `kept`; not serialized.
  std::vector<std::int64_t> label_remap;

  std::uint64_t population() const { return kept.size() + dropped.size(); }
  bool operator==(const PruningPlan&) const = default;
};

// max(1, ceil((1 - ratio) * population)); ratio must lie in [0, 1).
std::uint64_t KeptCount(std::uint64_t population, double ratio);

// Checks the partition and kept-count invariants; fills label_remap.
void FinalizePlan(PruningPlan& plan);

struct TrajectoryReport {
  std::vector<double> ratios;
  std::vector<double> accuracy;
  double baseline_accuracy = 0.0;
  std::vector<double> winning;
  std::optional<double> best_winning;
  double epsilon = 0.0;
  std::string method;
  std::string mode;
  std::vector<std::uint64_t> seeds;
  // per_seed_accuracy[r][s] is the accuracy at ratios[r] for seeds[s].
  std::vector<std::vector<double>> per_seed_accuracy;

  bool operator==(const TrajectoryReport&) const = default;
};

void ValidateReport(const TrajectoryReport& report);

// Binary feature files.
std::string EncodeFeatureSet(const FeatureSet& set);
FeatureSet DecodeFeatureSet(std::string_view bytes);
void WriteFeatureSet(const std::filesystem::path& path, const FeatureSet& set);
FeatureSet ReadFeatureSet(const std::filesystem::path& path);

// JSON documents. The Encode*/Decode* pairs operate on the exact file text.
std::string EncodeManifest(const ClassManifest& manifest);
ClassManifest DecodeManifest(std::string_view text);
void WriteManifest(const std::filesystem::path& path, const ClassManifest& m);
ClassManifest ReadManifest(const std::filesystem::path& path);

std::string EncodeScores(const ScoreVector& scores);
ScoreVector DecodeScores(std::string_view text);
void WriteScores(const std::filesystem::path& path, const ScoreVector& scores);
ScoreVector ReadScores(const std::filesystem::path& path);

std::string EncodePlan(const PruningPlan& plan);
PruningPlan DecodePlan(std::string_view text);
void WritePlan(const std::filesystem::path& path, const PruningPlan& plan);
PruningPlan ReadPlan(const std::filesystem::path& path);

std::string EncodeReport(const TrajectoryReport& report);
TrajectoryReport DecodeReport(std::string_view text);
void WriteReport(const std::filesystem::path& path,
                 const TrajectoryReport& report);
TrajectoryReport ReadReport(const std::filesystem::path& path);

// One row per (ratio, seed): ratio,seed,accuracy,mode,method
std::string EncodeReportCsv(const TrajectoryReport& report);
void WriteReportCsv(const std::filesystem::path& path,
                    const TrajectoryReport& report);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace prunekit

#endif  // PRUNEKIT_DATA_IO_HPP_
