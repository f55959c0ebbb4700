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

#include "prunekit/tensor_nn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>

#include "prunekit/error.hpp"
#include "prunekit/random.hpp"

namespace prunekit {
namespace {

constexpr std::uint64_t kInitStream = 0x1000;

std::string FormatFloat(float value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// Per-sample scratch buffers, reused across samples.
struct Workspace {
  std::vector<std::vector<float>> act;    // act[l] is the input of layer l
  std::vector<std::vector<float>> pre;    // pre-activation of layer l
  std::vector<std::vector<float>> delta;  // dLoss/dpre of layer l

  explicit Workspace(const MlpModel& m) {
    act.resize(m.layers.size() + 1);
    pre.resize(m.layers.size());
    delta.resize(m.layers.size());
    act[0].resize(m.input_dim());
    for (std::size_t l = 0; l < m.layers.size(); ++l) {
      pre[l].resize(m.layers[l].out);
      delta[l].resize(m.layers[l].out);
      act[l + 1].resize(m.layers[l].out);
    }
  }
};

void ForwardSample(const MlpModel& m, std::span<const float> x, Workspace& ws) {
  std::copy(x.begin(), x.end(), ws.act[0].begin());
  const std::size_t last = m.layers.size() - 1;
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const DenseLayer& layer = m.layers[l];
    const std::vector<float>& a = ws.act[l];
    std::vector<float>& z = ws.pre[l];
    for (std::uint32_t o = 0; o < layer.out; ++o) {
      const float* w = layer.weights.data() + static_cast<std::size_t>(o) * layer.in;
      float s = layer.bias[o];
      for (std::uint32_t i = 0; i < layer.in; ++i) s += w[i] * a[i];
      z[o] = s;
      ws.act[l + 1][o] = l == last ? s : (s > 0.0f ? s : 0.0f);
    }
  }
}

// Cross-entropy of the current logits in ws; writes dLoss/dlogits into the
// last delta buffer.
float SoftmaxCrossEntropy(Workspace& ws, std::uint32_t label) {
  const std::vector<float>& z = ws.pre.back();
  std::vector<float>& g = ws.delta.back();
  const float max_logit = *std::max_element(z.begin(), z.end());
  float sum = 0.0f;
  for (std::size_t k = 0; k < z.size(); ++k) {
    g[k] = std::exp(z[k] - max_logit);
    sum += g[k];
  }
  for (std::size_t k = 0; k < z.size(); ++k) g[k] /= sum;
  g[label] -= 1.0f;
  return max_logit + std::log(sum) - z[label];
}

// Propagates ws.delta.back() to every layer and adds dLoss/dparams to grad.
void BackwardSample(const MlpModel& m, Workspace& ws, ModelGradient& grad) {
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    const DenseLayer& layer = m.layers[l];
    DenseLayer& g = grad.layers[l];
    const std::vector<float>& delta = ws.delta[l];
    const std::vector<float>& a = ws.act[l];
    for (std::uint32_t o = 0; o < layer.out; ++o) {
      float* gw = g.weights.data() + static_cast<std::size_t>(o) * layer.in;
      for (std::uint32_t i = 0; i < layer.in; ++i) gw[i] += delta[o] * a[i];
      g.bias[o] += delta[o];
    }
    if (l == 0) break;
    std::vector<float>& prev = ws.delta[l - 1];
    const std::vector<float>& prev_pre = ws.pre[l - 1];
    for (std::uint32_t i = 0; i < layer.in; ++i) {
      if (prev_pre[i] > 0.0f) {
        float s = 0.0f;
        for (std::uint32_t o = 0; o < layer.out; ++o) s += layer.w(o, i) * delta[o];
        prev[i] = s;
      } else {
        prev[i] = 0.0f;
      }
    }
  }
}

ModelGradient ZeroGradient(const MlpModel& m) {
  ModelGradient g;
  g.layers.reserve(m.layers.size());
  for (const auto& layer : m.layers) {
    DenseLayer z;
    z.in = layer.in;
    z.out = layer.out;
    z.weights.assign(layer.weights.size(), 0.0f);
    z.bias.assign(layer.bias.size(), 0.0f);
    g.layers.push_back(std::move(z));
  }
  return g;
}

void CheckInputs(const MlpModel& m, const FeatureSet& data) {
  Require(data.dim == m.input_dim(), ErrorKind::kDimensionMismatch,
          "input dim " + std::to_string(data.dim) + " does not match model input " +
              std::to_string(m.input_dim()));
  Require(data.features.size() == data.n_samples * data.dim,
          ErrorKind::kInvariant, "feature block size mismatch");
}

void CheckLabels(const MlpModel& m, const FeatureSet& data) {
  Require(data.labels.has_value(), ErrorKind::kInvariant,
          "operation requires a labeled feature set");
  for (const std::uint32_t label : *data.labels) {
    Require(label < m.output_dim(), ErrorKind::kInvariant,
            "label " + std::to_string(label) + " out of range for " +
                std::to_string(m.output_dim()) + " outputs");
  }
}

// Sum of per-sample losses over `rows`; gradient is accumulated unscaled.
float AccumulateRows(const MlpModel& m, const FeatureSet& data,
                     std::span<const std::uint64_t> rows, Workspace& ws,
                     ModelGradient& grad) {
  float total = 0.0f;
  for (const std::uint64_t r : rows) {
    ForwardSample(m, data.Row(r), ws);
    total += SoftmaxCrossEntropy(ws, data.Label(r));
    BackwardSample(m, ws, grad);
  }
  return total;
}

void ScaleAndDecay(const MlpModel& m, ModelGradient& grad, std::size_t n,
                   float weight_decay) {
  const float count = static_cast<float>(n);
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    auto& g = grad.layers[l];
    const auto& p = m.layers[l];
    for (std::size_t i = 0; i < g.weights.size(); ++i) {
      g.weights[i] = g.weights[i] / count + weight_decay * p.weights[i];
    }
    for (float& b : g.bias) b = b / count;
  }
}

float WeightPenalty(const MlpModel& m, float weight_decay) {
  if (weight_decay == 0.0f) return 0.0f;
  float sq = 0.0f;
  for (const auto& layer : m.layers) {
    for (const float w : layer.weights) sq += w * w;
  }
  return 0.5f * weight_decay * sq;
}

}  // namespace

std::size_t MlpModel::ParameterCount() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.weights.size() + layer.bias.size();
  return n;
}

bool BitwiseEqual(const MlpModel& a, const MlpModel& b) {
  if (a.layer_dims != b.layer_dims || a.layers.size() != b.layers.size()) {
    return false;
  }
  auto same = [](const std::vector<float>& x, const std::vector<float>& y) {
    return x.size() == y.size() &&
           (x.empty() || std::memcmp(x.data(), y.data(), x.size() * sizeof(float)) == 0);
  };
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    if (!same(a.layers[l].weights, b.layers[l].weights) ||
        !same(a.layers[l].bias, b.layers[l].bias)) {
      return false;
    }
  }
  return true;
}

void ValidateModel(const MlpModel& m) {
  Require(m.layer_dims.size() >= 2, ErrorKind::kInvariant,
          "a model needs at least two layer dims");
  Require(m.layers.size() + 1 == m.layer_dims.size(), ErrorKind::kInvariant,
          "layer count does not match layer_dims");
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& layer = m.layers[l];
    Require(layer.in == m.layer_dims[l] && layer.out == m.layer_dims[l + 1] &&
                layer.in > 0 && layer.out > 0,
            ErrorKind::kInvariant, "layer " + std::to_string(l) + " has bad shape");
    Require(layer.weights.size() == static_cast<std::size_t>(layer.in) * layer.out &&
                layer.bias.size() == layer.out,
            ErrorKind::kInvariant,
            "layer " + std::to_string(l) + " parameter sizes do not match shape");
    for (const float w : layer.weights) {
      Require(std::isfinite(w), ErrorKind::kNonFinite, "non-finite weight");
    }
    for (const float b : layer.bias) {
      Require(std::isfinite(b), ErrorKind::kNonFinite, "non-finite bias");
    }
  }
}

MlpModel InitModel(std::span<const std::uint32_t> dims, std::uint64_t seed) {
  Require(dims.size() >= 2, ErrorKind::kInvalidArgument,
          "a model needs at least two layer dims");
  for (const auto d : dims) {
    Require(d > 0, ErrorKind::kInvalidArgument, "layer dims must be positive");
  }
  MlpModel m;
  m.layer_dims.assign(dims.begin(), dims.end());
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.in = dims[l];
    layer.out = dims[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
    Philox rng(seed, kInitStream + l);
    layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
    for (float& w : layer.weights) {
      // Rounding to float can land exactly on the bound, never beyond it.
      w = static_cast<float>(rng.Uniform(-bound, bound));
    }
    layer.bias.assign(layer.out, 0.0f);
    m.layers.push_back(std::move(layer));
  }
  m.lineage.push_back("init seed=" + std::to_string(seed));
  return m;
}

Matrix Forward(const MlpModel& model, const FeatureSet& inputs) {
  CheckInputs(model, inputs);
  Workspace ws(model);
  Matrix out(inputs.n_samples, model.output_dim());
  for (std::size_t r = 0; r < inputs.n_samples; ++r) {
    ForwardSample(model, inputs.Row(r), ws);
    std::copy(ws.act.back().begin(), ws.act.back().end(), out.MutableRow(r).begin());
  }
  return out;
}

FeatureSet ExtractFeatures(const MlpModel& model, const FeatureSet& inputs) {
  CheckInputs(model, inputs);
  if (model.hidden_layer_count() == 0) return inputs;
  const std::size_t rep = model.layers.size() - 1;
  FeatureSet out;
  out.n_samples = inputs.n_samples;
  out.dim = model.representation_dim();
  out.features.resize(out.n_samples * out.dim);
  out.labels = inputs.labels;
  Workspace ws(model);
  for (std::size_t r = 0; r < inputs.n_samples; ++r) {
    ForwardSample(model, inputs.Row(r), ws);
    std::copy(ws.act[rep].begin(), ws.act[rep].end(), out.MutableRow(r).begin());
  }
  return out;
}

Matrix ApplyHead(const MlpModel& model, const FeatureSet& representation) {
  const DenseLayer& head = model.layers.back();
  Require(representation.dim == head.in, ErrorKind::kDimensionMismatch,
          "representation dim does not match the head input");
  Matrix out(representation.n_samples, head.out);
  for (std::size_t r = 0; r < representation.n_samples; ++r) {
    const auto a = representation.Row(r);
    for (std::uint32_t o = 0; o < head.out; ++o) {
      const float* w = head.weights.data() + static_cast<std::size_t>(o) * head.in;
      float s = head.bias[o];
      for (std::uint32_t i = 0; i < head.in; ++i) s += w[i] * a[i];
      out.at(r, o) = s;
    }
  }
  return out;
}

Matrix Softmax(const Matrix& logits) {
  Matrix out(logits.rows, logits.cols);
  for (std::size_t r = 0; r < logits.rows; ++r) {
    const auto z = logits.Row(r);
    auto p = out.MutableRow(r);
    const float max_logit = *std::max_element(z.begin(), z.end());
    float sum = 0.0f;
    for (std::size_t k = 0; k < z.size(); ++k) {
      p[k] = std::exp(z[k] - max_logit);
      sum += p[k];
    }
    for (float& v : p) v /= sum;
  }
  return out;
}

std::uint32_t ArgMax(std::span<const float> row) {
  std::uint32_t best = 0;
  for (std::uint32_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return best;
}

double ModelGradient::SquaredNorm() const {
  double sq = 0.0;
  for (const auto& layer : layers) {
    for (const float w : layer.weights) sq += static_cast<double>(w) * w;
    for (const float b : layer.bias) sq += static_cast<double>(b) * b;
  }
  return sq;
}

LossAndGrad ComputeLossAndGrad(const MlpModel& model, const FeatureSet& batch,
                               float weight_decay) {
  CheckInputs(model, batch);
  CheckLabels(model, batch);
  Require(batch.n_samples > 0, ErrorKind::kInvalidArgument, "empty batch");
  std::vector<std::uint64_t> rows(batch.n_samples);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  Workspace ws(model);
  LossAndGrad result;
  result.grad = ZeroGradient(model);
  const float total = AccumulateRows(model, batch, rows, ws, result.grad);
  ScaleAndDecay(model, result.grad, rows.size(), weight_decay);
  result.loss = total / static_cast<float>(rows.size()) +
                WeightPenalty(model, weight_decay);
  return result;
}

ModelGradient SampleGradient(const MlpModel& model, std::span<const float> x,
                             std::uint32_t label) {
  Require(x.size() == model.input_dim(), ErrorKind::kDimensionMismatch,
          "sample dim does not match model input");
  Require(label < model.output_dim(), ErrorKind::kInvariant,
          "label out of range");
  Workspace ws(model);
  ModelGradient grad = ZeroGradient(model);
  ForwardSample(model, x, ws);
  SoftmaxCrossEntropy(ws, label);
  BackwardSample(model, ws, grad);
  return grad;
}

void ValidateTrainConfig(const TrainConfig& c) {
  Require(c.batch_size > 0, ErrorKind::kInvalidArgument,
          "batch_size must be positive");
  Require(std::isfinite(c.learning_rate) && c.learning_rate >= 0.0f,
          ErrorKind::kInvalidArgument, "learning_rate must be non-negative");
  Require(c.momentum >= 0.0f && c.momentum < 1.0f, ErrorKind::kInvalidArgument,
          "momentum must lie in [0, 1)");
  Require(std::isfinite(c.weight_decay) && c.weight_decay >= 0.0f,
          ErrorKind::kInvalidArgument, "weight_decay must be non-negative");
}

TrainResult Train(MlpModel model, const FeatureSet& data,
                  const TrainConfig& config) {
  ValidateTrainConfig(config);
  ValidateModel(model);
  CheckInputs(model, data);
  CheckLabels(model, data);
  Require(data.n_samples > 0, ErrorKind::kInvalidArgument,
          "cannot train on an empty data set");

  TrainResult result;
  ModelGradient velocity = ZeroGradient(model);
  Workspace ws(model);
  const std::size_t n = data.n_samples;
  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    Philox rng(config.seed, epoch);
    const std::vector<std::uint64_t> order = RandomPermutation(n, rng);
    float epoch_total = 0.0f;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t count = std::min<std::size_t>(config.batch_size, n - start);
      const std::span<const std::uint64_t> rows(order.data() + start, count);
      ModelGradient grad = ZeroGradient(model);
      const float batch_total = AccumulateRows(model, data, rows, ws, grad);
      if (!std::isfinite(batch_total)) {
        Fail(ErrorKind::kRuntime,
             "non-finite training loss at epoch " + std::to_string(epoch) +
                 ", batch starting at " + std::to_string(start) +
                 " (learning_rate " + std::to_string(config.learning_rate) + ")");
      }
      epoch_total += batch_total;
      ScaleAndDecay(model, grad, count, config.weight_decay);
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        auto step = [&](std::vector<float>& p, std::vector<float>& v,
                        const std::vector<float>& g) {
          for (std::size_t i = 0; i < p.size(); ++i) {
            v[i] = config.momentum * v[i] + g[i];
            p[i] -= config.learning_rate * v[i];
          }
        };
        step(model.layers[l].weights, velocity.layers[l].weights, grad.layers[l].weights);
        step(model.layers[l].bias, velocity.layers[l].bias, grad.layers[l].bias);
      }
    }
    result.epoch_loss.push_back(epoch_total / static_cast<float>(n) +
                                WeightPenalty(model, config.weight_decay));
  }
  model.lineage.push_back(
      "train seed=" + std::to_string(config.seed) +
      " epochs=" + std::to_string(config.epochs) +
      " batch=" + std::to_string(config.batch_size) +
      " lr=" + FormatFloat(config.learning_rate) +
      " momentum=" + FormatFloat(config.momentum) +
      " wd=" + FormatFloat(config.weight_decay) + " n=" + std::to_string(n));
  result.model = std::move(model);
  return result;
}

double Accuracy(const MlpModel& model, const FeatureSet& data) {
  CheckInputs(model, data);
  Require(data.labels.has_value(), ErrorKind::kInvariant,
          "accuracy requires labels");
  Require(data.n_samples > 0, ErrorKind::kInvalidArgument,
          "accuracy of an empty data set is undefined");
  const Matrix logits = Forward(model, data);
  std::uint64_t correct = 0;
  for (std::size_t r = 0; r < data.n_samples; ++r) {
    if (ArgMax(logits.Row(r)) == data.Label(r)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.n_samples);
}

}  // namespace prunekit
