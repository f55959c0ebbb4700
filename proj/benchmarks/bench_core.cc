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

#include <benchmark/benchmark.h>

#include "prunekit/pruning.hpp"
#include "prunekit/random.hpp"
#include "prunekit/scoring.hpp"
#include "prunekit/tensor_nn.hpp"

namespace prunekit {
namespace {

FeatureSet Gaussian(std::uint64_t n, std::uint32_t dim, std::uint64_t seed) {
  Philox rng(seed, 0);
  FeatureSet set;
  set.n_samples = n;
  set.dim = dim;
  set.features.resize(n * dim);
  for (float& x : set.features) x = static_cast<float>(rng.Normal());
  return set;
}

void BM_Forward(benchmark::State& state) {
  const std::vector<std::uint32_t> dims = {16, 64, 2, 20};
  const MlpModel model = InitModel(dims, 1);
  const FeatureSet x = Gaussian(state.range(0), 16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Forward(model, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(500)->Arg(4000);

void BM_LmScores(benchmark::State& state) {
  const std::vector<std::uint32_t> dims = {16, 32, 20};
  const MlpModel model = InitModel(dims, 1);
  const FeatureSet x = Gaussian(state.range(0), 16, 3);
  for (auto _ : state) benchmark::DoNotOptimize(LmScores(model, x, 20));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LmScores)->Arg(500)->Arg(4000);

void BM_KMeansFit(benchmark::State& state) {
  const FeatureSet x = Gaussian(4000, 16, 4);
  KMeansOptions options;
  options.k = static_cast<std::uint32_t>(state.range(0));
  options.max_iters = 20;
  for (auto _ : state) benchmark::DoNotOptimize(KMeansFit(x, options));
}
BENCHMARK(BM_KMeansFit)->Arg(40)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_MakePlan(benchmark::State& state) {
  const ScoreVector scores = RandomScores(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(MakePlan(scores, 0.5, Order::kOrdered));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MakePlan)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace prunekit

BENCHMARK_MAIN();
