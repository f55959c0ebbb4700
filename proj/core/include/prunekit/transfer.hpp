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

#ifndef PRUNEKIT_TRANSFER_HPP_
#define PRUNEKIT_TRANSFER_HPP_

// Pretrain -> finetune harness and pruning-ratio sweeps.
//
// A sweep cell is (ratio, seed): score the source once per seed, build the
// plan for the ratio, pretrain a source model on the pruned source, then
// finetune on the target by linear probe (LP) or full finetune (FF) and
// measure held-out accuracy. Cells are pure functions of their inputs, so
// running them concurrently never changes the report.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "prunekit/data_io.hpp"
#include "prunekit/tensor_nn.hpp"

namespace prunekit {

enum class Method { kLm, kFm, kRandom, kGrand, kEl2n, kModerate };
enum class FinetuneMode { kLp, kFf };

std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);
std::string_view FinetuneModeName(FinetuneMode mode);
FinetuneMode ParseFinetuneMode(std::string_view name);

// lm/fm prune classes; the other methods prune individual samples.
Granularity MethodGranularity(Method method);

// Source model: layer dims [source.dim, hidden..., pruned n_classes].
MlpModel Pretrain(const Dataset& source, std::span<const std::uint32_t> hidden,
                  const TrainConfig& config);

struct TargetSplit {
  FeatureSet train;
  FeatureSet test;
  std::uint32_t n_classes = 0;
};

// Per-class seeded shuffle, then the first floor(train_fraction * count)
// members of each class go to train. Needs >= 5 samples in every class.
TargetSplit SplitTarget(const Dataset& target, std::uint64_t seed,
                        double train_fraction = 0.8);

struct ProbeResult {
  MlpModel head;  // [representation_dim, n_classes]
  double test_accuracy = 0.0;
};

// Trains a fresh linear head on frozen representations (extracted once).
ProbeResult LinearProbe(const MlpModel& model, const TargetSplit& split,
                        const TrainConfig& config);

struct FinetuneResult {
  MlpModel model;
  double test_accuracy = 0.0;
};

// Replaces the head with a fresh [representation_dim, n_classes] layer and
// trains every parameter.
FinetuneResult FullFinetune(const MlpModel& model, const TargetSplit& split,
                            const TrainConfig& config);

struct HarnessConfig {
  std::vector<std::uint32_t> surrogate_hidden = {32};
  // The narrow penultimate layer forces the source model to spend its
  // capacity on the classes it is pretrained on.
  std::vector<std::uint32_t> source_hidden = {64, 2};
  TrainConfig surrogate_train = {.epochs = 10};
  TrainConfig pretrain_train;
  TrainConfig finetune_train;
  std::uint32_t fm_clusters = 40;
  std::uint32_t kmeans_max_iters = 100;
  double kmeans_tol = 1e-6;
  Order order = Order::kOrdered;
  double train_fraction = 0.8;
  // A ratio wins when accuracy >= baseline - epsilon.
  double epsilon = 0.0;
  unsigned jobs = 1;
};

// Per-seed state shared by every ratio of a sweep.
struct TrialSetup {
  std::uint64_t seed = 0;
  TargetSplit split;
  std::optional<MlpModel> surrogate;
  ScoreVector scores;
  // FM only: k-means cluster of every source sample.
  std::vector<std::uint32_t> pseudo_labels;
};

// Splits the target, trains the surrogate on the full source when the
// method needs one, and scores the source exactly once.
TrialSetup PrepareTrial(const Dataset& source, const Dataset& target,
                        Method method, std::uint64_t seed,
                        const HarnessConfig& config);

// Moderate keeps its lowest scores first, so its "ordered" plan keeps the
// smallest deviations; every other method keeps its highest scores.
PruningPlan PlanForRatio(const TrialSetup& trial, Method method, double ratio,
                         Order order);

// The pretraining set a plan selects, with labels renumbered contiguously.
Dataset PrunedSource(const Dataset& source, const TrialSetup& trial,
                     const PruningPlan& plan);

// One sweep cell: plan -> prune -> pretrain -> finetune -> test accuracy.
double RunCell(const Dataset& source, const TrialSetup& trial, Method method,
               FinetuneMode mode, double ratio, const HarnessConfig& config);

// Averages per-seed accuracies and fills in the winning-subset fields.
// ratios must be ascending and start at 0 (the no-prune baseline).
TrajectoryReport AssembleReport(std::span<const double> ratios,
                                std::span<const std::uint64_t> seeds,
                                std::vector<std::vector<double>> per_seed_accuracy,
                                double epsilon, std::string_view method,
                                std::string_view mode);

TrajectoryReport RunTrajectory(const Dataset& source, const Dataset& target,
                               Method method, FinetuneMode mode,
                               std::span<const double> ratios,
                               std::span<const std::uint64_t> seeds,
                               const HarnessConfig& config);

// Calls fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
// rethrown on the caller, lowest index first.
void ParallelFor(std::size_t n, unsigned jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace prunekit

#endif  // PRUNEKIT_TRANSFER_HPP_
