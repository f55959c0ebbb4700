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

// Reference implementations used only to check the library. They are written
// for clarity in double precision and share no code with prunekit internals.

#ifndef PRUNEKIT_TESTS_ORACLES_HPP_
#define PRUNEKIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "prunekit/data_io.hpp"
#include "prunekit/tensor_nn.hpp"

namespace prunekit::oracle {

// Straight-line evaluation of the network in double.
inline std::vector<double> Logits(const MlpModel& model, const float* x) {
  std::vector<double> act(x, x + model.input_dim());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer& layer = model.layers[l];
    std::vector<double> next(layer.out);
    for (std::uint32_t o = 0; o < layer.out; ++o) {
      double z = layer.bias[o];
      for (std::uint32_t i = 0; i < layer.in; ++i) z += double(layer.w(o, i)) * act[i];
      const bool hidden = l + 1 < model.layers.size();
      next[o] = hidden ? std::max(0.0, z) : z;
    }
    act = std::move(next);
  }
  return act;
}

// Pre-activations of every hidden unit, for staying clear of ReLU kinks.
inline double SmallestHiddenMargin(const MlpModel& model, const FeatureSet& data) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t n = 0; n < data.n_samples; ++n) {
    std::vector<double> act(data.Row(n).begin(), data.Row(n).end());
    for (std::size_t l = 0; l + 1 < model.layers.size(); ++l) {
      const DenseLayer& layer = model.layers[l];
      std::vector<double> next(layer.out);
      for (std::uint32_t o = 0; o < layer.out; ++o) {
        double z = layer.bias[o];
        for (std::uint32_t i = 0; i < layer.in; ++i) z += double(layer.w(o, i)) * act[i];
        margin = std::min(margin, std::abs(z));
        next[o] = std::max(0.0, z);
      }
      act = std::move(next);
    }
  }
  return margin;
}

inline double CrossEntropy(const std::vector<double>& logits, std::uint32_t label) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (const double z : logits) sum += std::exp(z - m);
  return std::log(sum) + m - logits[label];
}

inline double MeanLoss(const MlpModel& model, const FeatureSet& data,
                       double weight_decay = 0.0) {
  double loss = 0.0;
  for (std::uint64_t n = 0; n < data.n_samples; ++n) {
    loss += CrossEntropy(Logits(model, data.Row(n).data()), data.Label(n));
  }
  loss /= static_cast<double>(data.n_samples);
  double sq = 0.0;
  for (const auto& layer : model.layers) {
    for (const float w : layer.weights) sq += double(w) * w;
  }
  return loss + 0.5 * weight_decay * sq;
}

// Pointers to every parameter in layer order: weights, then bias.
inline std::vector<float*> Parameters(MlpModel& model) {
  std::vector<float*> params;
  for (auto& layer : model.layers) {
    for (float& w : layer.weights) params.push_back(&w);
    for (float& b : layer.bias) params.push_back(&b);
  }
  return params;
}

inline std::vector<float> FlatGradient(const ModelGradient& grad) {
  std::vector<float> flat;
  for (const auto& layer : grad.layers) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  return flat;
}

// Central differences of `loss` with respect to every parameter.
template <typename LossFn>
std::vector<double> FiniteDifferenceGradient(MlpModel model, LossFn loss, double h) {
  std::vector<double> grad;
  for (float* p : Parameters(model)) {
    const float saved = *p;
    *p = static_cast<float>(saved + h);
    const double up = loss(model);
    const double step_up = double(*p) - saved;
    *p = static_cast<float>(saved - h);
    const double down = loss(model);
    const double step_down = saved - double(*p);
    *p = saved;
    grad.push_back((up - down) / (step_up + step_down));
  }
  return grad;
}

// Keeps ceil((1 - ratio) * n) items, computed as n - floor(ratio * n).
inline std::uint64_t KeepCount(std::uint64_t n, double ratio) {
  const double dropped = std::floor(ratio * static_cast<double>(n) + 1e-9);
  return std::max<std::uint64_t>(1, n - static_cast<std::uint64_t>(dropped));
}

// Sort-and-slice plan: rank by score (descending for ordered), ties by index.
inline std::vector<std::uint64_t> KeptIndices(const std::vector<double>& scores,
                                              double ratio, bool reversed) {
  std::vector<std::pair<double, std::uint64_t>> ranked;
  for (std::uint64_t i = 0; i < scores.size(); ++i) {
    ranked.emplace_back(reversed ? scores[i] : -scores[i], i);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::uint64_t> kept;
  for (std::uint64_t i = 0; i < KeepCount(scores.size(), ratio); ++i) {
    kept.push_back(ranked[i].second);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

using Points = std::vector<std::vector<double>>;

inline double PartitionInertia(const Points& pts, const std::vector<int>& assign, int k) {
  const std::size_t d = pts[0].size();
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    std::vector<double> mean(d, 0.0);
    int count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (assign[i] != c) continue;
      ++count;
      for (std::size_t j = 0; j < d; ++j) mean[j] += pts[i][j];
    }
    if (count == 0) continue;
    for (double& m : mean) m /= count;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (assign[i] != c) continue;
      for (std::size_t j = 0; j < d; ++j) total += (pts[i][j] - mean[j]) * (pts[i][j] - mean[j]);
    }
  }
  return total;
}

// Exhaustive minimum over all k^n assignments.
inline double OptimalInertia(const Points& pts, int k) {
  std::vector<int> assign(pts.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    best = std::min(best, PartitionInertia(pts, assign, k));
    std::size_t i = 0;
    while (i < assign.size() && ++assign[i] == k) assign[i++] = 0;
    if (i == assign.size()) break;
  }
  return best;
}

inline double SquaredDistance(const float* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

// Per-class means of a labeled set, row-major n_classes x dim.
inline std::vector<double> ClassMeans(const FeatureSet& set, std::uint32_t n_classes) {
  std::vector<double> means(std::size_t(n_classes) * set.dim, 0.0);
  std::vector<double> counts(n_classes, 0.0);
  for (std::uint64_t n = 0; n < set.n_samples; ++n) {
    const std::uint32_t c = set.Label(n);
    counts[c] += 1.0;
    for (std::uint32_t j = 0; j < set.dim; ++j) means[c * set.dim + j] += set.Row(n)[j];
  }
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    for (std::uint32_t j = 0; j < set.dim; ++j) {
      if (counts[c] > 0) means[c * set.dim + j] /= counts[c];
    }
  }
  return means;
}

inline std::uint32_t NearestMean(const float* x, const std::vector<double>& means,
                                 std::uint32_t dim) {
  const std::uint32_t k = static_cast<std::uint32_t>(means.size() / dim);
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t c = 0; c < k; ++c) {
    const double d = SquaredDistance(x, means.data() + std::size_t(c) * dim, dim);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Nearest-class-mean classifier accuracy: means from `train`, scored on `test`.
inline double NearestMeanAccuracy(const FeatureSet& train, const FeatureSet& test,
                                  std::uint32_t n_classes) {
  const std::vector<double> means = ClassMeans(train, n_classes);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n < test.n_samples; ++n) {
    hits += NearestMean(test.Row(n).data(), means, test.dim) == test.Label(n);
  }
  return static_cast<double>(hits) / static_cast<double>(test.n_samples);
}

}  // namespace prunekit::oracle

#endif  // PRUNEKIT_TESTS_ORACLES_HPP_
