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

#ifndef PRUNEKIT_SCORING_HPP_
#define PRUNEKIT_SCORING_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "prunekit/data_io.hpp"
#include "prunekit/tensor_nn.hpp"

namespace prunekit {

inline constexpr std::string_view kMethodLm = "lm";
inline constexpr std::string_view kMethodFm = "fm";
inline constexpr std::string_view kMethodRandom = "random";
inline constexpr std::string_view kMethodGrand = "grand";
inline constexpr std::string_view kMethodEl2n = "el2n";
inline constexpr std::string_view kMethodModerate = "moderate";

// Cluster count used for feature mapping when the caller does not choose
// one. Small data sets need a smaller K (k may not exceed the sample count).
inline constexpr std::uint32_t kDefaultClusterCount = 2000;

// ---- Label mapping ------------------------------------------------------

// scores[i] = number of targets whose top source prediction is class i.
ScoreVector LmScores(const MlpModel& model, const FeatureSet& targets,
                     std::uint32_t n_classes);

// The same count taken over any per-sample prediction matrix (logits or
// probabilities); rows are argmaxed with lowest-index tie-break.
ScoreVector LmScoresFromPredictions(const Matrix& predictions);

// ---- Feature mapping ----------------------------------------------------

struct ClusterModel {
  std::uint32_t k = 0;
  std::uint32_t dim = 0;
  std::vector<double> centroids;  // k x dim
  double inertia = 0.0;
  std::uint32_t n_iters = 0;
  // Inertia after initialization and after every Lloyd iteration.
  std::vector<double> inertia_trace;
  // Cluster of every fitted point: the nearest final centroid for k-means,
  // the label for ClusterModelFromLabels.
  std::vector<std::uint32_t> assignments;

  std::span<const double> Centroid(std::uint32_t c) const {
    return {centroids.data() + static_cast<std::size_t>(c) * dim, dim};
  }
};

struct KMeansOptions {
  std::uint32_t k = kDefaultClusterCount;
  std::uint64_t seed = 0;
  std::uint32_t max_iters = 100;
  double tol = 1e-6;
};

// k-means++ seeding followed by Lloyd iterations. Stops when no assignment
// changes, when the largest centroid move drops below tol, or after
// max_iters. An empty cluster is reseeded with the point farthest from its
// own centroid.
ClusterModel KMeansFit(const FeatureSet& features, const KMeansOptions& options);

// Centroids are the per-label means (supervised clustering).
ClusterModel ClusterModelFromLabels(const FeatureSet& features,
                                    std::uint32_t n_classes);

// Nearest centroid in Euclidean distance; ties resolve to the lowest index.
std::uint32_t FmResponsiveness(const ClusterModel& cluster,
                               std::span<const float> t);

// scores[i] = number of targets whose nearest centroid is i.
ScoreVector FmScores(const ClusterModel& cluster, const FeatureSet& targets);

// ---- Sample-wise baselines ----------------------------------------------

// L2 norm of the per-sample loss gradient over all parameters, at the
// supplied parameters.
ScoreVector GrandScores(const MlpModel& model, const FeatureSet& source);

// |softmax(logits) - onehot(y)|_2, in [0, sqrt(2)].
ScoreVector El2nScores(const MlpModel& model, const FeatureSet& source);

// |d_j - median_c(d)| where d_j is the distance of sample j to its class
// centroid. Smaller means more moderate.
ScoreVector ModerateScores(const FeatureSet& features, std::uint32_t n_classes);

// Seeded uniform permutation, scores[i] = rank of i.
ScoreVector RandomScores(std::uint64_t n, std::uint64_t seed,
                         Granularity granularity = Granularity::kSample);

}  // namespace prunekit

#endif  // PRUNEKIT_SCORING_HPP_
