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

#include <algorithm>
#include <cmath>
#include <limits>

#include "prunekit/error.hpp"
#include "prunekit/random.hpp"
#include "prunekit/scoring.hpp"

namespace prunekit {
namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sq += diff * diff;
  }
  return sq;
}

double SquaredDistance(std::span<const float> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = static_cast<double>(a[j]) - b[j];
    sq += diff * diff;
  }
  return sq;
}

class PointTable {
 public:
  explicit PointTable(const FeatureSet& f)
      : n_(f.n_samples), dim_(f.dim), values_(f.features.begin(), f.features.end()) {}

  std::size_t size() const { return n_; }
  std::span<const double> operator[](std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<double> values_;
};

// Nearest centroid for every point; returns the resulting inertia.
double Assign(const PointTable& x, const ClusterModel& model,
              std::vector<std::uint32_t>& assignment) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint32_t best = 0;
    double best_sq = SquaredDistance(x[i], model.Centroid(0));
    for (std::uint32_t c = 1; c < model.k; ++c) {
      const double sq = SquaredDistance(x[i], model.Centroid(c));
      if (sq < best_sq) {
        best_sq = sq;
        best = c;
      }
    }
    assignment[i] = best;
    inertia += best_sq;
  }
  return inertia;
}

void ComputeMeans(const PointTable& x, const std::vector<std::uint32_t>& assignment,
                  ClusterModel& model, std::vector<std::uint64_t>& counts) {
  std::fill(model.centroids.begin(), model.centroids.end(), 0.0);
  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint32_t c = assignment[i];
    ++counts[c];
    double* centroid = model.centroids.data() + static_cast<std::size_t>(c) * model.dim;
    for (std::uint32_t j = 0; j < model.dim; ++j) centroid[j] += x[i][j];
  }
  for (std::uint32_t c = 0; c < model.k; ++c) {
    if (counts[c] == 0) continue;
    double* centroid = model.centroids.data() + static_cast<std::size_t>(c) * model.dim;
    for (std::uint32_t j = 0; j < model.dim; ++j) {
      centroid[j] /= static_cast<double>(counts[c]);
    }
  }
}

void KMeansPlusPlus(const PointTable& x, Philox& rng, ClusterModel& model) {
  const std::size_t n = x.size();
  auto place = [&](std::uint32_t c, std::size_t point) {
    std::copy(x[point].begin(), x[point].end(),
              model.centroids.begin() + static_cast<std::ptrdiff_t>(c) * model.dim);
  };
  place(0, rng.Below(n));
  std::vector<double> nearest_sq(n);
  for (std::size_t i = 0; i < n; ++i) nearest_sq[i] = SquaredDistance(x[i], model.Centroid(0));
  for (std::uint32_t c = 1; c < model.k; ++c) {
    double total = 0.0;
    for (const double v : nearest_sq) total += v;
    std::size_t chosen = n;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double cumulative = 0.0;
      std::size_t last_positive = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest_sq[i] <= 0.0) continue;
        last_positive = i;
        cumulative += nearest_sq[i];
        if (cumulative > target) {
          chosen = i;
          break;
        }
      }
      if (chosen == n) chosen = last_positive;
    } else {
      // Every point coincides with a chosen centroid.
      chosen = rng.Below(n);
    }
    place(c, chosen);
    for (std::size_t i = 0; i < n; ++i) {
      nearest_sq[i] = std::min(nearest_sq[i], SquaredDistance(x[i], model.Centroid(c)));
    }
  }
}

// Moves the farthest point of a multi-member cluster into each empty
// cluster, then recomputes every mean.
void ReseedEmpty(const PointTable& x, std::vector<std::uint32_t>& assignment,
                 ClusterModel& model, std::vector<std::uint64_t>& counts) {
  bool reseeded = false;
  for (std::uint32_t e = 0; e < model.k; ++e) {
    if (counts[e] != 0) continue;
    std::size_t farthest = x.size();
    double farthest_sq = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::uint32_t c = assignment[i];
      if (counts[c] <= 1) continue;
      const double sq = SquaredDistance(x[i], model.Centroid(c));
      if (sq > farthest_sq) {
        farthest_sq = sq;
        farthest = i;
      }
    }
    // k <= n guarantees a multi-member cluster exists while one is empty.
    --counts[assignment[farthest]];
    assignment[farthest] = e;
    counts[e] = 1;
    std::copy(x[farthest].begin(), x[farthest].end(),
              model.centroids.begin() + static_cast<std::ptrdiff_t>(e) * model.dim);
    reseeded = true;
  }
  if (reseeded) ComputeMeans(x, assignment, model, counts);
}

}  // namespace

ClusterModel KMeansFit(const FeatureSet& features, const KMeansOptions& options) {
  Require(features.n_samples > 0, ErrorKind::kInvalidArgument,
          "k-means needs at least one point");
  Require(options.k >= 1, ErrorKind::kInvalidArgument, "k must be at least 1");
  Require(options.k <= features.n_samples, ErrorKind::kInvalidArgument,
          "k = " + std::to_string(options.k) + " exceeds the " +
              std::to_string(features.n_samples) + " available points");
  Require(options.max_iters >= 1, ErrorKind::kInvalidArgument,
          "max_iters must be at least 1");
  Require(std::isfinite(options.tol) && options.tol >= 0.0,
          ErrorKind::kInvalidArgument, "tol must be non-negative");

  const PointTable x(features);
  ClusterModel model;
  model.k = options.k;
  model.dim = features.dim;
  model.centroids.assign(static_cast<std::size_t>(model.k) * model.dim, 0.0);

  Philox rng(options.seed, 0);
  KMeansPlusPlus(x, rng, model);

  std::vector<std::uint32_t> assignment(x.size());
  std::vector<std::uint64_t> counts(model.k);
  model.inertia_trace.push_back(Assign(x, model, assignment));

  std::vector<std::uint32_t> next(x.size());
  std::vector<double> previous;
  for (std::uint32_t iter = 1; iter <= options.max_iters; ++iter) {
    previous = model.centroids;
    ComputeMeans(x, assignment, model, counts);
    ReseedEmpty(x, assignment, model, counts);
    double movement = 0.0;
    for (std::uint32_t c = 0; c < model.k; ++c) {
      movement = std::max(
          movement, std::sqrt(SquaredDistance(
                        model.Centroid(c),
                        {previous.data() + static_cast<std::size_t>(c) * model.dim,
                         model.dim})));
    }
    model.inertia_trace.push_back(Assign(x, model, next));
    model.n_iters = iter;
    const bool stable = next == assignment;
    assignment.swap(next);
    if (stable || movement < options.tol) break;
  }
  model.inertia = model.inertia_trace.back();
  model.assignments = std::move(assignment);
  return model;
}

ClusterModel ClusterModelFromLabels(const FeatureSet& features,
                                    std::uint32_t n_classes) {
  Require(features.labels.has_value(), ErrorKind::kInvariant,
          "label clustering requires labels");
  Require(n_classes >= 1, ErrorKind::kInvalidArgument, "n_classes must be positive");
  const PointTable x(features);
  ClusterModel model;
  model.k = n_classes;
  model.dim = features.dim;
  model.centroids.assign(static_cast<std::size_t>(model.k) * model.dim, 0.0);
  for (const std::uint32_t label : *features.labels) {
    Require(label < n_classes, ErrorKind::kInvariant, "label out of range");
  }
  std::vector<std::uint64_t> counts(model.k);
  ComputeMeans(x, *features.labels, model, counts);
  for (std::uint32_t c = 0; c < model.k; ++c) {
    Require(counts[c] > 0, ErrorKind::kInvalidArgument,
            "class " + std::to_string(c) + " has no samples");
  }
  model.assignments = *features.labels;
  for (std::size_t i = 0; i < x.size(); ++i) {
    model.inertia += SquaredDistance(x[i], model.Centroid(model.assignments[i]));
  }
  model.inertia_trace.push_back(model.inertia);
  return model;
}

std::uint32_t FmResponsiveness(const ClusterModel& cluster,
                               std::span<const float> t) {
  Require(t.size() == cluster.dim, ErrorKind::kDimensionMismatch,
          "target dim " + std::to_string(t.size()) +
              " does not match centroid dim " + std::to_string(cluster.dim));
  Require(cluster.k >= 1, ErrorKind::kInvariant, "cluster model has no centroids");
  std::uint32_t best = 0;
  double best_sq = SquaredDistance(t, cluster.Centroid(0));
  for (std::uint32_t c = 1; c < cluster.k; ++c) {
    const double sq = SquaredDistance(t, cluster.Centroid(c));
    if (sq < best_sq) {
      best_sq = sq;
      best = c;
    }
  }
  return best;
}

ScoreVector FmScores(const ClusterModel& cluster, const FeatureSet& targets) {
  Require(targets.dim == cluster.dim, ErrorKind::kDimensionMismatch,
          "target dim " + std::to_string(targets.dim) +
              " does not match centroid dim " + std::to_string(cluster.dim));
  Require(targets.n_samples > 0, ErrorKind::kInvalidArgument, "empty target set");
  std::vector<std::uint64_t> counts(cluster.k, 0);
  for (std::size_t j = 0; j < targets.n_samples; ++j) {
    ++counts[FmResponsiveness(cluster, targets.Row(j))];
  }
  ScoreVector out;
  out.granularity = Granularity::kClass;
  out.method = std::string(kMethodFm);
  out.scores.assign(counts.begin(), counts.end());
  return out;
}

}  // namespace prunekit
