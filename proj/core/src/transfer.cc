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

#include "prunekit/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "prunekit/error.hpp"
#include "prunekit/pruning.hpp"
#include "prunekit/random.hpp"
#include "prunekit/scoring.hpp"

namespace prunekit {
namespace {

constexpr std::uint32_t kMinPerClassForSplit = 5;

TrainConfig WithSeed(TrainConfig config, std::uint64_t seed) {
  config.seed = seed;
  return config;
}

bool NeedsSurrogate(Method method) { return method != Method::kRandom; }

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kLm: return "lm";
    case Method::kFm: return "fm";
    case Method::kRandom: return "random";
    case Method::kGrand: return "grand";
    case Method::kEl2n: return "el2n";
    case Method::kModerate: return "moderate";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (const Method m : {Method::kLm, Method::kFm, Method::kRandom, Method::kGrand,
                         Method::kEl2n, Method::kModerate}) {
    if (MethodName(m) == name) return m;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown method \"" + std::string(name) +
                                        "\" (expected lm, fm, random, grand, "
                                        "el2n or moderate)");
}

std::string_view FinetuneModeName(FinetuneMode mode) {
  return mode == FinetuneMode::kLp ? "lp" : "ff";
}

FinetuneMode ParseFinetuneMode(std::string_view name) {
  if (name == "lp") return FinetuneMode::kLp;
  if (name == "ff") return FinetuneMode::kFf;
  Fail(ErrorKind::kInvalidArgument,
       "unknown finetune mode \"" + std::string(name) + "\" (expected lp or ff)");
}

Granularity MethodGranularity(Method method) {
  return method == Method::kLm || method == Method::kFm ? Granularity::kClass
                                                        : Granularity::kSample;
}

MlpModel Pretrain(const Dataset& source, std::span<const std::uint32_t> hidden,
                  const TrainConfig& config) {
  ValidatePair(source.features, source.manifest);
  std::vector<std::uint32_t> dims = {source.features.dim};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(source.manifest.n_classes);
  return Train(InitModel(dims, config.seed), source.features, config).model;
}

TargetSplit SplitTarget(const Dataset& target, std::uint64_t seed,
                        double train_fraction) {
  ValidatePair(target.features, target.manifest);
  Require(target.features.has_labels(), ErrorKind::kInvalidArgument,
          "target must be labeled");
  Require(train_fraction > 0.0 && train_fraction < 1.0, ErrorKind::kInvalidArgument,
          "train_fraction must lie in (0, 1)");
  const std::uint32_t n_classes = target.manifest.n_classes;
  std::vector<std::vector<std::uint64_t>> members(n_classes);
  for (std::uint64_t i = 0; i < target.features.n_samples; ++i) {
    members[target.features.Label(i)].push_back(i);
  }
  std::vector<std::uint64_t> train_rows;
  std::vector<std::uint64_t> test_rows;
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    const std::size_t count = members[c].size();
    Require(count >= kMinPerClassForSplit, ErrorKind::kInvalidArgument,
            "target class " + std::to_string(c) + " has " + std::to_string(count) +
                " samples; a train/test split needs at least " +
                std::to_string(kMinPerClassForSplit));
    Philox rng(seed, c);
    const std::vector<std::uint64_t> perm = RandomPermutation(count, rng);
    const std::size_t n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::floor(train_fraction * count + 1e-9)), 1,
        count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      (i < n_train ? train_rows : test_rows).push_back(members[c][perm[i]]);
    }
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  TargetSplit split;
  split.train = SelectRows(target.features, train_rows);
  split.test = SelectRows(target.features, test_rows);
  split.n_classes = n_classes;
  return split;
}

ProbeResult LinearProbe(const MlpModel& model, const TargetSplit& split,
                        const TrainConfig& config) {
  const FeatureSet train = ExtractFeatures(model, split.train);
  const FeatureSet test = ExtractFeatures(model, split.test);
  const std::uint32_t dims[] = {model.representation_dim(), split.n_classes};
  ProbeResult result;
  result.head = Train(InitModel(dims, config.seed), train, config).model;
  result.test_accuracy = Accuracy(result.head, test);
  return result;
}

FinetuneResult FullFinetune(const MlpModel& model, const TargetSplit& split,
                            const TrainConfig& config) {
  ValidateModel(model);
  MlpModel start = model;
  const std::uint32_t dims[] = {model.representation_dim(), split.n_classes};
  start.layers.back() = InitModel(dims, config.seed).layers.front();
  start.layer_dims.back() = split.n_classes;
  start.lineage.push_back("reinit head seed=" + std::to_string(config.seed) +
                          " classes=" + std::to_string(split.n_classes));
  FinetuneResult result;
  result.model = Train(std::move(start), split.train, config).model;
  result.test_accuracy = Accuracy(result.model, split.test);
  return result;
}

TrialSetup PrepareTrial(const Dataset& source, const Dataset& target,
                        Method method, std::uint64_t seed,
                        const HarnessConfig& config) {
  ValidatePair(source.features, source.manifest);
  Require(source.features.has_labels(), ErrorKind::kInvalidArgument,
          "source must be labeled");
  Require(target.features.dim == source.features.dim, ErrorKind::kDimensionMismatch,
          "target dim " + std::to_string(target.features.dim) +
              " does not match source dim " + std::to_string(source.features.dim));
  TrialSetup trial;
  trial.seed = seed;
  trial.split = SplitTarget(target, DeriveSeed(seed, "split"), config.train_fraction);
  if (NeedsSurrogate(method)) {
    trial.surrogate = Pretrain(source, config.surrogate_hidden,
                               WithSeed(config.surrogate_train,
                                        DeriveSeed(seed, "surrogate")));
  }
  const FeatureSet& src = source.features;
  switch (method) {
    case Method::kLm:
      trial.scores = LmScores(*trial.surrogate, trial.split.train,
                              source.manifest.n_classes);
      break;
    case Method::kFm: {
      const FeatureSet reps = ExtractFeatures(*trial.surrogate, src);
      KMeansOptions options;
      options.k = config.fm_clusters;
      options.seed = DeriveSeed(seed, "kmeans");
      options.max_iters = config.kmeans_max_iters;
      options.tol = config.kmeans_tol;
      ClusterModel clusters = KMeansFit(reps, options);
      trial.scores = FmScores(clusters, ExtractFeatures(*trial.surrogate, trial.split.train));
      trial.pseudo_labels = std::move(clusters.assignments);
      break;
    }
    case Method::kRandom:
      trial.scores = RandomScores(src.n_samples, DeriveSeed(seed, "random"));
      break;
    case Method::kGrand:
      trial.scores = GrandScores(*trial.surrogate, src);
      break;
    case Method::kEl2n:
      trial.scores = El2nScores(*trial.surrogate, src);
      break;
    case Method::kModerate:
      trial.scores = ModerateScores(ExtractFeatures(*trial.surrogate, src),
                                    source.manifest.n_classes);
      break;
  }
  return trial;
}

PruningPlan PlanForRatio(const TrialSetup& trial, Method method, double ratio,
                         Order order) {
  if (method == Method::kModerate) {
    order = order == Order::kOrdered ? Order::kReversed : Order::kOrdered;
  }
  return MakePlan(trial.scores, ratio, order);
}

Dataset PrunedSource(const Dataset& source, const TrialSetup& trial,
                     const PruningPlan& plan) {
  if (trial.pseudo_labels.empty()) return ApplyPlan(source, plan);
  // Feature mapping prunes k-means clusters, then pretrains on the true
  // labels of the surviving samples.
  Require(trial.pseudo_labels.size() == source.features.n_samples,
          ErrorKind::kInvariant, "pseudo labels do not cover the source");
  std::vector<std::uint64_t> rows;
  for (std::uint64_t i = 0; i < trial.pseudo_labels.size(); ++i) {
    if (plan.label_remap.at(trial.pseudo_labels[i]) != kDroppedLabel) rows.push_back(i);
  }
  return CompactLabels(SelectRows(source.features, rows), source.manifest.n_classes);
}

double RunCell(const Dataset& source, const TrialSetup& trial, Method method,
               FinetuneMode mode, double ratio, const HarnessConfig& config) {
  const PruningPlan plan = PlanForRatio(trial, method, ratio, config.order);
  const Dataset pruned = PrunedSource(source, trial, plan);
  const MlpModel model =
      Pretrain(pruned, config.source_hidden,
               WithSeed(config.pretrain_train, DeriveSeed(trial.seed, "pretrain")));
  const TrainConfig finetune =
      WithSeed(config.finetune_train, DeriveSeed(trial.seed, "finetune"));
  return mode == FinetuneMode::kLp
             ? LinearProbe(model, trial.split, finetune).test_accuracy
             : FullFinetune(model, trial.split, finetune).test_accuracy;
}

TrajectoryReport AssembleReport(std::span<const double> ratios,
                                std::span<const std::uint64_t> seeds,
                                std::vector<std::vector<double>> per_seed_accuracy,
                                double epsilon, std::string_view method,
                                std::string_view mode) {
  Require(!ratios.empty() && ratios.front() == 0.0, ErrorKind::kInvalidArgument,
          "a sweep must start at ratio 0, the no-prune baseline");
  Require(!seeds.empty(), ErrorKind::kInvalidArgument, "a sweep needs at least one seed");
  Require(per_seed_accuracy.size() == ratios.size(), ErrorKind::kInvariant,
          "per-seed accuracy rows do not match ratios");
  Require(std::isfinite(epsilon) && epsilon >= 0.0, ErrorKind::kInvalidArgument,
          "epsilon must be non-negative");
  TrajectoryReport report;
  report.ratios.assign(ratios.begin(), ratios.end());
  report.seeds.assign(seeds.begin(), seeds.end());
  report.epsilon = epsilon;
  report.method = std::string(method);
  report.mode = std::string(mode);
  for (const auto& row : per_seed_accuracy) {
    Require(row.size() == seeds.size(), ErrorKind::kInvariant,
            "per-seed accuracy row does not match seeds");
    double sum = 0.0;
    for (const double a : row) sum += a;
    report.accuracy.push_back(sum / static_cast<double>(row.size()));
  }
  report.per_seed_accuracy = std::move(per_seed_accuracy);
  report.baseline_accuracy = report.accuracy.front();
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    if (report.accuracy[i] >= report.baseline_accuracy - epsilon) {
      report.winning.push_back(report.ratios[i]);
    }
  }
  if (!report.winning.empty()) report.best_winning = report.winning.back();
  ValidateReport(report);
  return report;
}

TrajectoryReport RunTrajectory(const Dataset& source, const Dataset& target,
                               Method method, FinetuneMode mode,
                               std::span<const double> ratios,
                               std::span<const std::uint64_t> seeds,
                               const HarnessConfig& config) {
  Require(!ratios.empty() && ratios.front() == 0.0, ErrorKind::kInvalidArgument,
          "a sweep must start at ratio 0, the no-prune baseline");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    Require(ratios[i] >= 0.0 && ratios[i] < 1.0, ErrorKind::kInvalidArgument,
            "ratio " + FormatDouble(ratios[i]) + " outside [0, 1)");
    Require(i == 0 || ratios[i - 1] < ratios[i], ErrorKind::kInvalidArgument,
            "ratios must be strictly ascending");
  }
  Require(!seeds.empty(), ErrorKind::kInvalidArgument, "a sweep needs at least one seed");

  std::vector<TrialSetup> trials(seeds.size());
  ParallelFor(seeds.size(), config.jobs, [&](std::size_t s) {
    trials[s] = PrepareTrial(source, target, method, seeds[s], config);
  });

  std::vector<std::vector<double>> per_seed(ratios.size(),
                                            std::vector<double>(seeds.size()));
  ParallelFor(ratios.size() * seeds.size(), config.jobs, [&](std::size_t cell) {
    const std::size_t r = cell / seeds.size();
    const std::size_t s = cell % seeds.size();
    per_seed[r][s] = RunCell(source, trials[s], method, mode, ratios[r], config);
  });
  return AssembleReport(ratios, seeds, std::move(per_seed), config.epsilon,
                        MethodName(method), FinetuneModeName(mode));
}

void ParallelFor(std::size_t n, unsigned jobs,
                 const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
            failed = true;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace prunekit
