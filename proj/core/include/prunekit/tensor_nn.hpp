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

#ifndef PRUNEKIT_TENSOR_NN_HPP_
#define PRUNEKIT_TENSOR_NN_HPP_

// Minimal deterministic multilayer perceptron: dense layers, ReLU on hidden
// layers, softmax cross-entropy, mini-batch SGD with momentum.
//
// All arithmetic is 32-bit with a fixed sequential reduction order, so a
// given (model, data, config) always produces the same bits.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "prunekit/data_io.hpp"

namespace prunekit {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0f) {}

  std::span<const float> Row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<float> MutableRow(std::size_t i) {
    return {data.data() + i * cols, cols};
  }
  float& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  float at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct DenseLayer {
  std::uint32_t in = 0;
  std::uint32_t out = 0;
  std::vector<float> weights;  // out x in, row-major
  std::vector<float> bias;     // out

  float& w(std::uint32_t o, std::uint32_t i) { return weights[o * in + i]; }
  float w(std::uint32_t o, std::uint32_t i) const { return weights[o * in + i]; }
};

struct MlpModel {
  // [d_in, h_1, ..., h_L, n_classes]
  std::vector<std::uint32_t> layer_dims;
  std::vector<DenseLayer> layers;
  // Provenance recorded into checkpoints ("init seed=1", "train ...").
  std::vector<std::string> lineage;

  std::uint32_t input_dim() const { return layer_dims.front(); }
  std::uint32_t output_dim() const { return layer_dims.back(); }
  // Width of the representation space: the input of the final layer.
  std::uint32_t representation_dim() const {
    return layer_dims[layer_dims.size() - 2];
  }
  std::size_t hidden_layer_count() const { return layers.size() - 1; }
  std::size_t ParameterCount() const;
};

// Parameter-wise bit equality (lineage ignored).
bool BitwiseEqual(const MlpModel& a, const MlpModel& b);
void ValidateModel(const MlpModel& model);

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), one generator stream per
// layer; biases zero.
MlpModel InitModel(std::span<const std::uint32_t> layer_dims, std::uint64_t seed);

Matrix Forward(const MlpModel& model, const FeatureSet& inputs);

// Penultimate activations. A model without hidden layers returns its inputs
// unchanged. Labels are carried over.
FeatureSet ExtractFeatures(const MlpModel& model, const FeatureSet& inputs);

// Applies only the final layer to representation vectors:
// Forward(m, x) == ApplyHead(m, ExtractFeatures(m, x)).
Matrix ApplyHead(const MlpModel& model, const FeatureSet& representation);

// Row-wise softmax.
Matrix Softmax(const Matrix& logits);

// Index of the largest entry; ties resolve to the lowest index.
std::uint32_t ArgMax(std::span<const float> row);

struct ModelGradient {
  std::vector<DenseLayer> layers;  // same shapes as the model

  double SquaredNorm() const;
};

struct LossAndGrad {
  float loss = 0.0f;  // mean cross-entropy (+ 0.5 * wd * |W|^2)
  ModelGradient grad;
};

// Mean softmax cross-entropy over the batch and its gradient. weight_decay
// adds 0.5 * wd * sum(W^2) over weight matrices (biases are not decayed).
LossAndGrad ComputeLossAndGrad(const MlpModel& model, const FeatureSet& batch,
                               float weight_decay = 0.0f);

// Gradient of the loss of one labeled sample.
ModelGradient SampleGradient(const MlpModel& model, std::span<const float> x,
                             std::uint32_t label);

struct TrainConfig {
  std::uint32_t epochs = 30;
  std::uint32_t batch_size = 64;
  float learning_rate = 0.05f;
  float momentum = 0.9f;
  float weight_decay = 0.0f;
  std::uint64_t seed = 0;
};

// epochs == 0 and learning_rate == 0 are allowed and leave the model as is.
void ValidateTrainConfig(const TrainConfig& config);

struct TrainResult {
  MlpModel model;
  std::vector<float> epoch_loss;
};

// Sample order is reshuffled every epoch from (config.seed, epoch). The last
// partial batch is kept. Throws kRuntime on a non-finite loss.
TrainResult Train(MlpModel model, const FeatureSet& data,
                  const TrainConfig& config);

// Fraction of samples whose argmax logit equals the label.
double Accuracy(const MlpModel& model, const FeatureSet& data);

// Checkpoint: "DPTM" | u16 version | u16 flags | u32 header bytes |
// u32 reserved | JSON header | per layer: weights f32[out*in], bias f32[out].
std::string EncodeCheckpoint(const MlpModel& model);
MlpModel DecodeCheckpoint(std::string_view bytes);
void WriteCheckpoint(const std::filesystem::path& path, const MlpModel& model);
MlpModel ReadCheckpoint(const std::filesystem::path& path);

}  // namespace prunekit

#endif  // PRUNEKIT_TENSOR_NN_HPP_
