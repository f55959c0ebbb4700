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

#include "prunekit/data_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "prunekit/error.hpp"

namespace prunekit {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'D', 'P', 'T', 'L'};
constexpr std::uint16_t kFlagLabels = 1;

template <typename T>
void PutLe(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T GetLe(std::string_view bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<unsigned char>(bytes[offset + i]))
             << (8 * i);
  }
  return value;
}

// ---- JSON helpers -------------------------------------------------------

json ParseJson(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kSchema, std::string(what) + ": " + e.what());
  }
}

const json& Field(const json& doc, const char* key, std::string_view what) {
  Require(doc.is_object(), ErrorKind::kSchema,
          std::string(what) + ": document is not an object");
  const auto it = doc.find(key);
  Require(it != doc.end(), ErrorKind::kSchema,
          std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

void CheckKeys(const json& doc, std::initializer_list<const char*> allowed,
               std::string_view what) {
  for (const auto& [key, value] : doc.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    Require(known, ErrorKind::kSchema,
            std::string(what) + ": unknown key \"" + key + "\"");
  }
}

std::uint64_t AsCount(const json& v, std::string_view what) {
  Require(v.is_number_unsigned() ||
              (v.is_number_integer() && v.get<std::int64_t>() >= 0),
          ErrorKind::kSchema,
          std::string(what) + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double AsFinite(const json& v, std::string_view what) {
  Require(v.is_number(), ErrorKind::kSchema,
          std::string(what) + ": expected a number");
  const double d = v.get<double>();
  Require(std::isfinite(d), ErrorKind::kSchema,
          std::string(what) + ": non-finite number");
  return d;
}

std::string AsString(const json& v, std::string_view what) {
  Require(v.is_string(), ErrorKind::kSchema,
          std::string(what) + ": expected a string");
  return v.get<std::string>();
}

const json& AsArray(const json& v, std::string_view what) {
  Require(v.is_array(), ErrorKind::kSchema,
          std::string(what) + ": expected an array");
  return v;
}

std::vector<double> AsDoubles(const json& v, std::string_view what) {
  std::vector<double> out;
  for (const auto& e : AsArray(v, what)) out.push_back(AsFinite(e, what));
  return out;
}

std::vector<std::uint64_t> AsCounts(const json& v, std::string_view what) {
  std::vector<std::uint64_t> out;
  for (const auto& e : AsArray(v, what)) out.push_back(AsCount(e, what));
  return out;
}

json FiniteOrThrow(double d, std::string_view what) {
  Require(std::isfinite(d), ErrorKind::kInvariant,
          std::string(what) + ": refusing to write a non-finite value");
  return d;
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

// ---- Feature sets -------------------------------------------------------

bool BitwiseEqual(const FeatureSet& a, const FeatureSet& b) {
  if (a.n_samples != b.n_samples || a.dim != b.dim ||
      a.features.size() != b.features.size() || a.labels != b.labels) {
    return false;
  }
  return a.features.empty() ||
         std::memcmp(a.features.data(), b.features.data(),
                     a.features.size() * sizeof(float)) == 0;
}

void ValidateFeatureSet(const FeatureSet& set) {
  Require(set.dim > 0, ErrorKind::kInvariant, "feature dim must be positive");
  Require(set.features.size() == set.n_samples * set.dim,
          ErrorKind::kInvariant,
          "feature block holds " + std::to_string(set.features.size()) +
              " values, expected n_samples * dim = " +
              std::to_string(set.n_samples * set.dim));
  if (set.labels) {
    Require(set.labels->size() == set.n_samples, ErrorKind::kInvariant,
            "label count " + std::to_string(set.labels->size()) +
                " does not match n_samples " + std::to_string(set.n_samples));
  }
  for (std::size_t i = 0; i < set.features.size(); ++i) {
    if (!std::isfinite(set.features[i])) {
      Fail(ErrorKind::kNonFinite, "non-finite feature at sample " +
                                      std::to_string(i / set.dim) + ", column " +
                                      std::to_string(i % set.dim));
    }
  }
}

std::string EncodeFeatureSet(const FeatureSet& set) {
  ValidateFeatureSet(set);
  std::string out;
  out.reserve(kFeatureHeaderBytes + set.features.size() * 4 +
              (set.labels ? set.labels->size() * 4 : 0));
  out.append(kMagic, 4);
  PutLe<std::uint16_t>(out, kFeatureFormatVersion);
  PutLe<std::uint16_t>(out, set.labels ? kFlagLabels : 0);
  PutLe<std::uint64_t>(out, set.n_samples);
  PutLe<std::uint32_t>(out, set.dim);
  PutLe<std::uint32_t>(out, 0);
  for (const float f : set.features) {
    PutLe<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
  }
  if (set.labels) {
    for (const std::uint32_t label : *set.labels) PutLe(out, label);
  }
  return out;
}

FeatureSet DecodeFeatureSet(std::string_view bytes) {
  Require(bytes.size() >= kFeatureHeaderBytes, ErrorKind::kTruncated,
          "feature file truncated: expected at least " +
              std::to_string(kFeatureHeaderBytes) + " header bytes, got " +
              std::to_string(bytes.size()));
  Require(std::memcmp(bytes.data(), kMagic, 4) == 0, ErrorKind::kBadMagic,
          "feature file has bad magic \"" + std::string(bytes.substr(0, 4)) +
              "\" (expected \"DPTL\")");
  const auto version = GetLe<std::uint16_t>(bytes, 4);
  Require(version == kFeatureFormatVersion, ErrorKind::kUnsupportedVersion,
          "unsupported feature file version " + std::to_string(version));
  const auto flags = GetLe<std::uint16_t>(bytes, 6);
  Require((flags & ~kFlagLabels) == 0, ErrorKind::kInvalidHeader,
          "feature file sets reserved flag bits");
  FeatureSet set;
  set.n_samples = GetLe<std::uint64_t>(bytes, 8);
  set.dim = GetLe<std::uint32_t>(bytes, 16);
  Require(set.dim > 0, ErrorKind::kInvalidHeader,
          "feature file declares dim = 0");
  Require(GetLe<std::uint32_t>(bytes, 20) == 0, ErrorKind::kInvalidHeader,
          "feature file reserved header field is non-zero");

  const bool has_labels = (flags & kFlagLabels) != 0;
  // Guard the size computation against absurd headers before multiplying.
  const std::uint64_t max_values = (UINT64_MAX - kFeatureHeaderBytes) / 8;
  Require(set.n_samples <= max_values / set.dim, ErrorKind::kInvalidHeader,
          "feature file declares an impossible payload size");
  const std::uint64_t n_values = set.n_samples * set.dim;
  const std::uint64_t expected = kFeatureHeaderBytes + n_values * 4 +
                                 (has_labels ? set.n_samples * 4 : 0);
  Require(bytes.size() >= expected, ErrorKind::kTruncated,
          "feature file truncated: expected " + std::to_string(expected) +
              " bytes, got " + std::to_string(bytes.size()));
  Require(bytes.size() == expected, ErrorKind::kLengthMismatch,
          "feature file length mismatch: header declares " +
              std::to_string(expected) + " bytes, file has " +
              std::to_string(bytes.size()));

  set.features.resize(n_values);
  std::size_t offset = kFeatureHeaderBytes;
  for (std::uint64_t i = 0; i < n_values; ++i, offset += 4) {
    set.features[i] = std::bit_cast<float>(GetLe<std::uint32_t>(bytes, offset));
  }
  if (has_labels) {
    std::vector<std::uint32_t> labels(set.n_samples);
    for (auto& label : labels) {
      label = GetLe<std::uint32_t>(bytes, offset);
      offset += 4;
    }
    set.labels = std::move(labels);
  }
  ValidateFeatureSet(set);
  return set;
}

void WriteFeatureSet(const std::filesystem::path& path, const FeatureSet& set) {
  WriteFileBytes(path, EncodeFeatureSet(set));
}

FeatureSet ReadFeatureSet(const std::filesystem::path& path) {
  return DecodeFeatureSet(ReadFileBytes(path));
}

// ---- Manifests ----------------------------------------------------------

void ValidateManifest(const ClassManifest& m) {
  Require(m.n_classes > 0, ErrorKind::kInvariant,
          "manifest n_classes must be positive");
  Require(m.per_class_counts.size() == m.n_classes, ErrorKind::kInvariant,
          "manifest per_class_counts has " +
              std::to_string(m.per_class_counts.size()) +
              " entries, expected " + std::to_string(m.n_classes));
  if (m.class_names) {
    Require(m.class_names->size() == m.n_classes, ErrorKind::kInvariant,
            "manifest class_names has " +
                std::to_string(m.class_names->size()) + " entries, expected " +
                std::to_string(m.n_classes));
  }
}

void ValidatePair(const FeatureSet& set, const ClassManifest& manifest) {
  ValidateManifest(manifest);
  if (!set.labels) return;
  std::vector<std::uint64_t> counts(manifest.n_classes, 0);
  for (std::size_t i = 0; i < set.labels->size(); ++i) {
    const std::uint32_t label = (*set.labels)[i];
    if (label >= manifest.n_classes) {
      Fail(ErrorKind::kInvariant, "label " + std::to_string(label) + " at sample " +
                                      std::to_string(i) + " is out of range for " +
                                      std::to_string(manifest.n_classes) + " classes");
    }
    ++counts[label];
  }
  std::uint64_t total = 0;
  for (const auto c : manifest.per_class_counts) total += c;
  Require(total == set.n_samples, ErrorKind::kInvariant,
          "manifest counts sum to " + std::to_string(total) +
              " but the feature set has " + std::to_string(set.n_samples) +
              " samples");
  Require(counts == manifest.per_class_counts, ErrorKind::kInvariant,
          "manifest per_class_counts disagree with the label histogram");
}

ClassManifest ManifestFromLabels(const FeatureSet& set,
                                 std::uint32_t n_classes) {
  Require(set.labels.has_value(), ErrorKind::kInvariant,
          "cannot build a manifest for an unlabeled feature set");
  ClassManifest manifest;
  manifest.n_classes = n_classes;
  manifest.per_class_counts.assign(n_classes, 0);
  for (const std::uint32_t label : *set.labels) {
    if (label >= n_classes) {
      Fail(ErrorKind::kInvariant, "label " + std::to_string(label) + " out of range");
    }
    ++manifest.per_class_counts[label];
  }
  return manifest;
}

std::string EncodeManifest(const ClassManifest& m) {
  ValidateManifest(m);
  json doc;
  doc["n_classes"] = m.n_classes;
  doc["class_names"] = m.class_names ? json(*m.class_names) : json(nullptr);
  doc["per_class_counts"] = m.per_class_counts;
  return Dump(doc);
}

ClassManifest DecodeManifest(std::string_view text) {
  constexpr std::string_view kWhat = "manifest";
  const json doc = ParseJson(text, kWhat);
  Field(doc, "n_classes", kWhat);
  CheckKeys(doc, {"n_classes", "class_names", "per_class_counts"}, kWhat);
  ClassManifest m;
  const std::uint64_t n = AsCount(Field(doc, "n_classes", kWhat), kWhat);
  Require(n > 0 && n <= UINT32_MAX, ErrorKind::kSchema,
          "manifest: n_classes out of range");
  m.n_classes = static_cast<std::uint32_t>(n);
  if (const auto it = doc.find("class_names"); it != doc.end() && !it->is_null()) {
    std::vector<std::string> names;
    for (const auto& e : AsArray(*it, kWhat)) names.push_back(AsString(e, kWhat));
    m.class_names = std::move(names);
  }
  m.per_class_counts = AsCounts(Field(doc, "per_class_counts", kWhat), kWhat);
  try {
    ValidateManifest(m);
  } catch (const Error& e) {
    Fail(ErrorKind::kSchema, e.what());
  }
  return m;
}

void WriteManifest(const std::filesystem::path& path, const ClassManifest& m) {
  WriteFileBytes(path, EncodeManifest(m));
}

ClassManifest ReadManifest(const std::filesystem::path& path) {
  return DecodeManifest(ReadFileBytes(path));
}

// ---- Enums --------------------------------------------------------------

std::string_view GranularityName(Granularity g) {
  return g == Granularity::kClass ? "class" : "sample";
}

Granularity ParseGranularity(std::string_view name) {
  if (name == "class") return Granularity::kClass;
  if (name == "sample") return Granularity::kSample;
  Fail(ErrorKind::kSchema,
       "granularity must be \"class\" or \"sample\", got \"" +
           std::string(name) + "\"");
}

std::string_view OrderName(Order order) {
  return order == Order::kOrdered ? "ordered" : "reversed";
}

Order ParseOrder(std::string_view name) {
  if (name == "ordered") return Order::kOrdered;
  if (name == "reversed") return Order::kReversed;
  Fail(ErrorKind::kSchema, "order must be \"ordered\" or \"reversed\", got \"" +
                               std::string(name) + "\"");
}

// ---- Scores -------------------------------------------------------------

std::string EncodeScores(const ScoreVector& s) {
  json doc;
  doc["method"] = s.method;
  doc["granularity"] = GranularityName(s.granularity);
  doc["seed"] = s.seed ? json(*s.seed) : json(nullptr);
  json scores = json::array();
  for (const double v : s.scores) scores.push_back(FiniteOrThrow(v, "scores"));
  doc["scores"] = std::move(scores);
  return Dump(doc);
}

ScoreVector DecodeScores(std::string_view text) {
  constexpr std::string_view kWhat = "scores";
  const json doc = ParseJson(text, kWhat);
  Field(doc, "method", kWhat);
  CheckKeys(doc, {"method", "granularity", "seed", "scores"}, kWhat);
  ScoreVector s;
  s.method = AsString(Field(doc, "method", kWhat), kWhat);
  s.granularity = ParseGranularity(AsString(Field(doc, "granularity", kWhat), kWhat));
  if (const auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    s.seed = AsCount(*it, kWhat);
  }
  s.scores = AsDoubles(Field(doc, "scores", kWhat), kWhat);
  return s;
}

void WriteScores(const std::filesystem::path& path, const ScoreVector& s) {
  WriteFileBytes(path, EncodeScores(s));
}

ScoreVector ReadScores(const std::filesystem::path& path) {
  return DecodeScores(ReadFileBytes(path));
}

// ---- Plans --------------------------------------------------------------

std::uint64_t KeptCount(std::uint64_t population, double ratio) {
  Require(ratio >= 0.0 && ratio < 1.0, ErrorKind::kInvalidArgument,
          "pruning ratio must lie in [0, 1), got " + FormatDouble(ratio));
  const double exact = (1.0 - ratio) * static_cast<double>(population);
  // (1 - 0.3) * 20 evaluates to 13.999999999999998; treat values within
  // rounding noise of an integer as that integer before taking the ceiling.
  const double nearest = std::round(exact);
  const double slack = 1e-9 * std::max(1.0, exact);
  const double kept =
      std::abs(exact - nearest) <= slack ? nearest : std::ceil(exact);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(kept));
}

void FinalizePlan(PruningPlan& plan) {
  const std::uint64_t population = plan.population();
  Require(population > 0, ErrorKind::kInvariant, "plan has an empty population");
  std::vector<char> seen(population, 0);
  auto mark = [&](const std::vector<std::uint64_t>& indices, const char* name) {
    // Messages are built only on failure; this loop runs once per index.
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] >= population) {
        Fail(ErrorKind::kInvariant, std::string("plan ") + name + " index " +
                                        std::to_string(indices[i]) +
                                        " outside population " +
                                        std::to_string(population));
      }
      if (i > 0 && indices[i - 1] >= indices[i]) {
        Fail(ErrorKind::kInvariant,
             std::string("plan ") + name + " indices must be strictly ascending");
      }
      if (seen[indices[i]]) {
        Fail(ErrorKind::kInvariant, "plan index " + std::to_string(indices[i]) +
                                        " is both kept and dropped");
      }
      seen[indices[i]] = 1;
    }
  };
  mark(plan.kept, "kept");
  mark(plan.dropped, "dropped");
  Require(plan.kept.size() == KeptCount(population, plan.ratio),
          ErrorKind::kInvariant,
          "plan keeps " + std::to_string(plan.kept.size()) + " of " +
              std::to_string(population) + ", ratio " +
              FormatDouble(plan.ratio) + " requires " +
              std::to_string(KeptCount(population, plan.ratio)));
  plan.label_remap.clear();
  if (plan.granularity == Granularity::kClass) {
    plan.label_remap.assign(population, kDroppedLabel);
    for (std::size_t i = 0; i < plan.kept.size(); ++i) {
      plan.label_remap[plan.kept[i]] = static_cast<std::int64_t>(i);
    }
  }
}

std::string EncodePlan(const PruningPlan& plan) {
  json doc;
  doc["granularity"] = GranularityName(plan.granularity);
  doc["ratio"] = FiniteOrThrow(plan.ratio, "ratio");
  doc["order"] = OrderName(plan.order);
  doc["kept"] = plan.kept;
  doc["dropped"] = plan.dropped;
  return Dump(doc);
}

PruningPlan DecodePlan(std::string_view text) {
  constexpr std::string_view kWhat = "plan";
  const json doc = ParseJson(text, kWhat);
  Field(doc, "granularity", kWhat);
  CheckKeys(doc, {"granularity", "ratio", "order", "kept", "dropped"}, kWhat);
  PruningPlan plan;
  plan.granularity =
      ParseGranularity(AsString(Field(doc, "granularity", kWhat), kWhat));
  plan.ratio = AsFinite(Field(doc, "ratio", kWhat), kWhat);
  Require(plan.ratio >= 0.0 && plan.ratio < 1.0, ErrorKind::kSchema,
          "plan: ratio must lie in [0, 1)");
  plan.order = ParseOrder(AsString(Field(doc, "order", kWhat), kWhat));
  plan.kept = AsCounts(Field(doc, "kept", kWhat), kWhat);
  plan.dropped = AsCounts(Field(doc, "dropped", kWhat), kWhat);
  try {
    FinalizePlan(plan);
  } catch (const Error& e) {
    Fail(ErrorKind::kSchema, std::string("plan: ") + e.what());
  }
  return plan;
}

void WritePlan(const std::filesystem::path& path, const PruningPlan& plan) {
  WriteFileBytes(path, EncodePlan(plan));
}

PruningPlan ReadPlan(const std::filesystem::path& path) {
  return DecodePlan(ReadFileBytes(path));
}

// ---- Reports ------------------------------------------------------------

void ValidateReport(const TrajectoryReport& r) {
  Require(!r.ratios.empty(), ErrorKind::kInvariant, "report has no ratios");
  Require(r.accuracy.size() == r.ratios.size(), ErrorKind::kInvariant,
          "report accuracy and ratios differ in length");
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    Require(r.ratios[i] >= 0.0 && r.ratios[i] < 1.0, ErrorKind::kInvariant,
            "report ratio outside [0, 1)");
    Require(i == 0 || r.ratios[i - 1] < r.ratios[i], ErrorKind::kInvariant,
            "report ratios must be strictly ascending");
    Require(std::isfinite(r.accuracy[i]), ErrorKind::kInvariant,
            "report accuracy is non-finite");
  }
  Require(r.epsilon >= 0.0, ErrorKind::kInvariant, "report epsilon is negative");
  std::vector<double> winning;
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    if (r.accuracy[i] >= r.baseline_accuracy - r.epsilon) {
      winning.push_back(r.ratios[i]);
    }
  }
  Require(winning == r.winning, ErrorKind::kInvariant,
          "report winning set disagrees with accuracy >= baseline");
  const std::optional<double> best =
      winning.empty() ? std::nullopt : std::optional<double>(winning.back());
  Require(best == r.best_winning, ErrorKind::kInvariant,
          "report best_winning is not the largest winning ratio");
  if (!r.per_seed_accuracy.empty()) {
    Require(r.per_seed_accuracy.size() == r.ratios.size(), ErrorKind::kInvariant,
            "report per_seed_accuracy rows differ from ratios");
    for (const auto& row : r.per_seed_accuracy) {
      Require(row.size() == r.seeds.size(), ErrorKind::kInvariant,
              "report per_seed_accuracy row length differs from seeds");
    }
  }
}

std::string EncodeReport(const TrajectoryReport& r) {
  ValidateReport(r);
  json doc;
  doc["ratios"] = r.ratios;
  doc["accuracy"] = r.accuracy;
  doc["baseline_accuracy"] = r.baseline_accuracy;
  doc["winning"] = r.winning;
  doc["best_winning"] = r.best_winning ? json(*r.best_winning) : json(nullptr);
  doc["epsilon"] = r.epsilon;
  doc["method"] = r.method;
  doc["mode"] = r.mode;
  doc["seeds"] = r.seeds;
  doc["per_seed_accuracy"] = r.per_seed_accuracy;
  return Dump(doc);
}

TrajectoryReport DecodeReport(std::string_view text) {
  constexpr std::string_view kWhat = "report";
  const json doc = ParseJson(text, kWhat);
  Field(doc, "ratios", kWhat);
  CheckKeys(doc,
            {"ratios", "accuracy", "baseline_accuracy", "winning",
             "best_winning", "epsilon", "method", "mode", "seeds",
             "per_seed_accuracy"},
            kWhat);
  TrajectoryReport r;
  r.ratios = AsDoubles(Field(doc, "ratios", kWhat), kWhat);
  r.accuracy = AsDoubles(Field(doc, "accuracy", kWhat), kWhat);
  r.baseline_accuracy = AsFinite(Field(doc, "baseline_accuracy", kWhat), kWhat);
  r.winning = AsDoubles(Field(doc, "winning", kWhat), kWhat);
  if (const auto& best = Field(doc, "best_winning", kWhat); !best.is_null()) {
    r.best_winning = AsFinite(best, kWhat);
  }
  if (const auto it = doc.find("epsilon"); it != doc.end()) {
    r.epsilon = AsFinite(*it, kWhat);
  }
  if (const auto it = doc.find("method"); it != doc.end()) {
    r.method = AsString(*it, kWhat);
  }
  if (const auto it = doc.find("mode"); it != doc.end()) {
    r.mode = AsString(*it, kWhat);
  }
  if (const auto it = doc.find("seeds"); it != doc.end()) {
    r.seeds = AsCounts(*it, kWhat);
  }
  if (const auto it = doc.find("per_seed_accuracy"); it != doc.end()) {
    for (const auto& row : AsArray(*it, kWhat)) {
      r.per_seed_accuracy.push_back(AsDoubles(row, kWhat));
    }
  }
  try {
    ValidateReport(r);
  } catch (const Error& e) {
    Fail(ErrorKind::kSchema, std::string("report: ") + e.what());
  }
  return r;
}

void WriteReport(const std::filesystem::path& path, const TrajectoryReport& r) {
  WriteFileBytes(path, EncodeReport(r));
}

TrajectoryReport ReadReport(const std::filesystem::path& path) {
  return DecodeReport(ReadFileBytes(path));
}

std::string EncodeReportCsv(const TrajectoryReport& r) {
  ValidateReport(r);
  std::string out = "ratio,seed,accuracy,mode,method\n";
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    for (std::size_t s = 0; s < r.seeds.size(); ++s) {
      out += FormatDouble(r.ratios[i]);
      out += ',';
      out += std::to_string(r.seeds[s]);
      out += ',';
      out += FormatDouble(r.per_seed_accuracy[i][s]);
      out += ',';
      out += r.mode;
      out += ',';
      out += r.method;
      out += '\n';
    }
  }
  return out;
}

void WriteReportCsv(const std::filesystem::path& path,
                    const TrajectoryReport& r) {
  WriteFileBytes(path, EncodeReportCsv(r));
}

// ---- Plumbing -----------------------------------------------------------

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Require(!in.bad(), ErrorKind::kIo, "failed reading " + path.string());
  return std::move(buffer).str();
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorKind::kIo, "cannot open " + path.string() +
                                          " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  Require(out.good(), ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace prunekit
