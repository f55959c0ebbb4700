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

#include "prunekit/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "prunekit/error.hpp"
#include "prunekit/random.hpp"

namespace prunekit {
namespace {

void RequireLabeled(const MlpModel& model, const FeatureSet& source) {
  Require(source.dim == model.input_dim(), ErrorKind::kDimensionMismatch,
          "source dim " + std::to_string(source.dim) +
              " does not match model input " + std::to_string(model.input_dim()));
  Require(source.labels.has_value(), ErrorKind::kInvariant,
          "sample-wise scoring requires labels");
  for (const std::uint32_t label : *source.labels) {
    Require(label < model.output_dim(), ErrorKind::kInvariant,
            "label " + std::to_string(label) + " out of range");
  }
}

ScoreVector SampleScores(std::string_view method, std::vector<double> scores) {
  ScoreVector out;
  out.granularity = Granularity::kSample;
  out.method = std::string(method);
  out.scores = std::move(scores);
  return out;
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

ScoreVector LmScoresFromPredictions(const Matrix& predictions) {
  Require(predictions.rows > 0, ErrorKind::kInvalidArgument, "empty target set");
  Require(predictions.cols > 0, ErrorKind::kInvalidArgument,
          "predictions have no classes");
  std::vector<std::uint64_t> counts(predictions.cols, 0);
  for (std::size_t j = 0; j < predictions.rows; ++j) {
    ++counts[ArgMax(predictions.Row(j))];
  }
  ScoreVector out;
  out.granularity = Granularity::kClass;
  out.method = std::string(kMethodLm);
  out.scores.assign(counts.begin(), counts.end());
  return out;
}

ScoreVector LmScores(const MlpModel& model, const FeatureSet& targets,
                     std::uint32_t n_classes) {
  Require(model.output_dim() == n_classes, ErrorKind::kDimensionMismatch,
          "model predicts " + std::to_string(model.output_dim()) +
              " classes, expected " + std::to_string(n_classes));
  Require(targets.dim == model.input_dim(), ErrorKind::kDimensionMismatch,
          "target dim " + std::to_string(targets.dim) +
              " does not match model input " + std::to_string(model.input_dim()));
  Require(targets.n_samples > 0, ErrorKind::kInvalidArgument, "empty target set");
  return LmScoresFromPredictions(Forward(model, targets));
}

ScoreVector GrandScores(const MlpModel& model, const FeatureSet& source) {
  RequireLabeled(model, source);
  std::vector<double> scores(source.n_samples);
  for (std::size_t j = 0; j < source.n_samples; ++j) {
    scores[j] = std::sqrt(
        SampleGradient(model, source.Row(j), source.Label(j)).SquaredNorm());
  }
  return SampleScores(kMethodGrand, std::move(scores));
}

ScoreVector El2nScores(const MlpModel& model, const FeatureSet& source) {
  RequireLabeled(model, source);
  const Matrix probs = Softmax(Forward(model, source));
  std::vector<double> scores(source.n_samples);
  for (std::size_t j = 0; j < source.n_samples; ++j) {
    const auto p = probs.Row(j);
    double sq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double err = static_cast<double>(p[k]) - (k == source.Label(j) ? 1.0 : 0.0);
      sq += err * err;
    }
    scores[j] = std::sqrt(sq);
  }
  return SampleScores(kMethodEl2n, std::move(scores));
}

ScoreVector ModerateScores(const FeatureSet& features, std::uint32_t n_classes) {
  const ClusterModel centroids = ClusterModelFromLabels(features, n_classes);
  std::vector<double> distance(features.n_samples);
  std::vector<std::vector<double>> per_class(n_classes);
  for (std::size_t j = 0; j < features.n_samples; ++j) {
    const auto centroid = centroids.Centroid(features.Label(j));
    const auto row = features.Row(j);
    double sq = 0.0;
    for (std::size_t d = 0; d < row.size(); ++d) {
      const double diff = static_cast<double>(row[d]) - centroid[d];
      sq += diff * diff;
    }
    distance[j] = std::sqrt(sq);
    per_class[features.Label(j)].push_back(distance[j]);
  }
  std::vector<double> median(n_classes);
  for (std::uint32_t c = 0; c < n_classes; ++c) median[c] = Median(per_class[c]);
  std::vector<double> scores(features.n_samples);
  for (std::size_t j = 0; j < features.n_samples; ++j) {
    scores[j] = std::abs(distance[j] - median[features.Label(j)]);
  }
  return SampleScores(kMethodModerate, std::move(scores));
}

ScoreVector RandomScores(std::uint64_t n, std::uint64_t seed,
                         Granularity granularity) {
  Require(n >= 1, ErrorKind::kInvalidArgument, "random scores need n >= 1");
  Philox rng(seed, 0);
  const std::vector<std::uint64_t> perm = RandomPermutation(n, rng);
  ScoreVector out;
  out.granularity = granularity;
  out.method = std::string(kMethodRandom);
  out.seed = seed;
  out.scores.resize(n);
  for (std::uint64_t rank = 0; rank < n; ++rank) {
    out.scores[perm[rank]] = static_cast<double>(rank);
  }
  return out;
}

}  // namespace prunekit
