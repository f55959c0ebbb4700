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

// Acceptance suite P1-P10. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails or overruns its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "prunekit/data_io.hpp"
#include "prunekit/error.hpp"
#include "prunekit/pruning.hpp"
#include "prunekit/random.hpp"
#include "prunekit/scoring.hpp"
#include "prunekit/synthetic.hpp"
#include "prunekit/tensor_nn.hpp"
#include "prunekit/transfer.hpp"
#include "test_util.hpp"

namespace prunekit {
namespace {

using testing::DataPath;
using testing::RandomSet;
using testing::TempDir;

struct Verdict {
  bool ok = true;
  std::string detail;

  void Check(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

std::uint32_t Uniform(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// ---- P1 ------------------------------------------------------------------

Verdict Conservation() {
  Verdict v;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200 && v.ok; ++trial) {
    const std::uint32_t dim = Uniform(rng, 1, 12);
    const std::uint32_t classes = Uniform(rng, 2, 30);
    const std::uint64_t n = Uniform(rng, 1, 300);
    const std::vector<std::uint32_t> dims = {dim, Uniform(rng, 2, 16), classes};
    const MlpModel model = InitModel(dims, rng());
    const FeatureSet targets = RandomSet(rng, n, dim, 0);
    const ScoreVector lm = LmScores(model, targets, classes);
    v.Check(lm.scores.size() == classes && Sum(lm.scores) == double(n),
            "lm sum != n at trial " + std::to_string(trial));

    const FeatureSet points = RandomSet(rng, Uniform(rng, 3, 200), dim, 0);
    KMeansOptions options;
    options.k = Uniform(rng, 1, std::min<std::uint32_t>(20, points.n_samples));
    options.seed = rng();
    const ClusterModel cluster = KMeansFit(points, options);
    const ScoreVector fm = FmScores(cluster, targets);
    v.Check(fm.scores.size() == options.k && Sum(fm.scores) == double(n),
            "fm sum != n at trial " + std::to_string(trial));
  }
  if (v.ok) v.detail = "200 instances, lm and fm counts sum to n";
  return v;
}

// ---- P2 ------------------------------------------------------------------

// Gram-Schmidt on a Gaussian matrix, row-major.
std::vector<double> RandomOrthogonal(std::mt19937_64& rng, std::uint32_t d) {
  std::normal_distribution<double> normal;
  std::vector<double> q(std::size_t(d) * d);
  for (double& x : q) x = normal(rng);
  for (std::uint32_t i = 0; i < d; ++i) {
    double* row = &q[std::size_t(i) * d];
    for (std::uint32_t j = 0; j < i; ++j) {
      const double* prev = &q[std::size_t(j) * d];
      double dot = 0.0;
      for (std::uint32_t k = 0; k < d; ++k) dot += row[k] * prev[k];
      for (std::uint32_t k = 0; k < d; ++k) row[k] -= dot * prev[k];
    }
    double norm = 0.0;
    for (std::uint32_t k = 0; k < d; ++k) norm += row[k] * row[k];
    norm = std::sqrt(norm);
    for (std::uint32_t k = 0; k < d; ++k) row[k] /= norm;
  }
  return q;
}

template <typename T>
std::vector<double> Rotate(const std::vector<double>& q, std::uint32_t d, const T* x) {
  std::vector<double> y(d, 0.0);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t k = 0; k < d; ++k) y[i] += q[std::size_t(i) * d + k] * double(x[k]);
  }
  return y;
}

Verdict Invariance() {
  Verdict v;
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 20 && v.ok; ++trial) {
    const std::uint32_t dim = Uniform(rng, 2, 10);
    const std::uint32_t classes = Uniform(rng, 2, 25);
    const std::vector<std::uint32_t> dims = {dim, 16, classes};
    const MlpModel model = InitModel(dims, rng());
    const FeatureSet targets = RandomSet(rng, 200, dim, 0);
    const ScoreVector from_logits = LmScores(model, targets, classes);
    const ScoreVector from_probs = LmScoresFromPredictions(Softmax(Forward(model, targets)));
    v.Check(from_logits.scores == from_probs.scores,
            "lm changed under softmax at trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 20 && v.ok; ++trial) {
    const std::uint32_t dim = Uniform(rng, 2, 10);
    const FeatureSet points = RandomSet(rng, 120, dim, 0);
    const FeatureSet targets = RandomSet(rng, 200, dim, 0);
    KMeansOptions options;
    options.k = Uniform(rng, 2, 12);
    options.seed = rng();
    const ClusterModel cluster = KMeansFit(points, options);
    const std::vector<double> q = RandomOrthogonal(rng, dim);

    ClusterModel rotated = cluster;
    for (std::uint32_t c = 0; c < cluster.k; ++c) {
      const std::vector<double> y = Rotate(q, dim, cluster.Centroid(c).data());
      std::copy(y.begin(), y.end(), rotated.centroids.begin() + std::size_t(c) * dim);
    }
    FeatureSet moved = targets;
    for (std::uint64_t n = 0; n < targets.n_samples; ++n) {
      const std::vector<double> y = Rotate(q, dim, targets.Row(n).data());
      std::transform(y.begin(), y.end(), moved.MutableRow(n).begin(),
                     [](double x) { return static_cast<float>(x); });
    }
    v.Check(FmScores(cluster, targets).scores == FmScores(rotated, moved).scores,
            "fm changed under rotation at trial " + std::to_string(trial));
  }
  if (v.ok) v.detail = "20 softmax trials and 20 rotation trials, counts identical";
  return v;
}

// ---- P3 ------------------------------------------------------------------

Verdict KMeansOracle() {
  Verdict v;
  std::mt19937_64 rng(303);
  int optimal = 0;
  int local = 0;
  for (int trial = 0; trial < 10 && v.ok; ++trial) {
    const std::uint32_t n = Uniform(rng, 4, 12);
    const std::uint32_t dim = Uniform(rng, 1, 3);
    const std::uint32_t k = Uniform(rng, 1, 3);
    const FeatureSet set = RandomSet(rng, n, dim, 0);
    KMeansOptions options;
    options.k = k;
    options.seed = rng();
    options.max_iters = 1000;
    options.tol = 0.0;
    const ClusterModel fit = KMeansFit(set, options);
    const std::string at = " at trial " + std::to_string(trial);

    for (std::size_t i = 1; i < fit.inertia_trace.size(); ++i) {
      // One part in 1e12 absorbs re-summation rounding between iterations.
      v.Check(fit.inertia_trace[i] <= fit.inertia_trace[i - 1] * (1 + 1e-12),
              "inertia increased" + at);
    }
    oracle::Points pts;
    std::vector<int> assign;
    for (std::uint64_t i = 0; i < n; ++i) {
      pts.emplace_back(set.Row(i).begin(), set.Row(i).end());
      assign.push_back(static_cast<int>(fit.assignments[i]));
    }
    const double achieved = oracle::PartitionInertia(pts, assign, k);
    v.Check(std::abs(achieved - fit.inertia) <= 1e-9 * std::max(1.0, achieved),
            "reported inertia disagrees with its partition" + at);
    const double best = oracle::OptimalInertia(pts, static_cast<int>(k));
    if (achieved - best <= 1e-9) {
      ++optimal;
      continue;
    }
    // Not the global optimum: it must be a Lloyd fixed point.
    bool fixed_point = true;
    for (std::uint64_t i = 0; i < n; ++i) {
      fixed_point &= oracle::NearestMean(set.Row(i).data(), fit.centroids, dim) ==
                     fit.assignments[i];
    }
    v.Check(fixed_point, "suboptimal and not every point at its nearest centroid" + at);
    ++local;
  }
  if (v.ok) {
    v.detail = std::to_string(optimal) + " global optima, " + std::to_string(local) +
               " local optima with every point at its nearest centroid, traces non-increasing";
  }
  return v;
}

// ---- P4 ------------------------------------------------------------------

// Integer class means and integer targets keep every distance and logit
// exact in float, so argmax and argmin agree including ties.
Verdict FmEqualsLm() {
  Verdict v;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> mean_coord(-10, 10);
  std::uniform_int_distribution<int> offset(-3, 3);
  std::uniform_int_distribution<int> target_coord(-12, 12);
  for (int trial = 0; trial < 20 && v.ok; ++trial) {
    const std::uint32_t dim = Uniform(rng, 1, 6);
    const std::uint32_t classes = Uniform(rng, 2, 8);
    FeatureSet source;
    source.dim = dim;
    source.labels.emplace();
    std::vector<float> means;
    for (std::uint32_t c = 0; c < classes; ++c) {
      std::vector<float> mu(dim);
      for (float& m : mu) m = static_cast<float>(mean_coord(rng));
      means.insert(means.end(), mu.begin(), mu.end());
      const std::uint32_t pairs = Uniform(rng, 1, 4);
      for (std::uint32_t p = 0; p < pairs; ++p) {
        std::vector<float> delta(dim);
        for (float& d : delta) d = static_cast<float>(offset(rng));
        for (const float sign : {1.0f, -1.0f}) {
          for (std::uint32_t j = 0; j < dim; ++j) source.features.push_back(mu[j] + sign * delta[j]);
          source.labels->push_back(c);
        }
      }
    }
    source.n_samples = source.labels->size();
    FeatureSet targets;
    targets.dim = dim;
    targets.n_samples = Uniform(rng, 1, 150);
    targets.features.resize(targets.n_samples * dim);
    for (float& x : targets.features) x = static_cast<float>(target_coord(rng));

    // logit_c = 2 mu_c . x - |mu_c|^2 = |x|^2 - |x - mu_c|^2.
    const std::vector<std::uint32_t> dims = {dim, classes};
    MlpModel model = InitModel(dims, 0);
    for (std::uint32_t c = 0; c < classes; ++c) {
      float sq = 0.0f;
      for (std::uint32_t j = 0; j < dim; ++j) {
        const float m = means[c * dim + j];
        model.layers[0].w(c, j) = 2.0f * m;
        sq += m * m;
      }
      model.layers[0].bias[c] = -sq;
    }
    const ClusterModel cluster = ClusterModelFromLabels(source, classes);
    v.Check(std::equal(cluster.centroids.begin(), cluster.centroids.end(), means.begin()),
            "class means are not the constructed means at trial " + std::to_string(trial));
    v.Check(FmScores(cluster, targets).scores == LmScores(model, targets, classes).scores,
            "fm != lm at trial " + std::to_string(trial));
  }
  if (v.ok) v.detail = "20 tasks, fm_scores == lm_scores";
  return v;
}

// ---- P5 ------------------------------------------------------------------

Verdict Gradients() {
  Verdict v;
  std::mt19937_64 rng(505);
  double worst_coord = 0.0;
  double worst_norm = 0.0;
  int models = 0;
  const double h = 1e-3;
  for (std::uint64_t seed = 0; models < 6 && seed < 200 && v.ok; ++seed) {
    const std::vector<std::uint32_t> dims = {3, 6, 4};  // 52 parameters
    const MlpModel model = InitModel(dims, 1000 + seed);
    const FeatureSet batch = RandomSet(rng, 8, 3, 4);
    // Skip draws where a perturbation could cross a ReLU kink.
    if (oracle::SmallestHiddenMargin(model, batch) < 0.05) continue;
    ++models;
    const float wd = models % 2 == 0 ? 0.01f : 0.0f;

    const std::vector<float> analytic = oracle::FlatGradient(ComputeLossAndGrad(model, batch, wd).grad);
    const std::vector<double> numeric = oracle::FiniteDifferenceGradient(
        model, [&](const MlpModel& m) { return oracle::MeanLoss(m, batch, wd); }, h);
    v.Check(analytic.size() == numeric.size() && model.ParameterCount() <= 100,
            "gradient size mismatch");
    for (std::size_t i = 0; i < numeric.size() && v.ok; ++i) {
      // Coordinates below 1e-3 are compared on absolute error at that scale.
      const double err = std::abs(analytic[i] - numeric[i]) / std::max(std::abs(numeric[i]), 1e-3);
      worst_coord = std::max(worst_coord, err);
    }

    const ScoreVector grand = GrandScores(model, batch);
    for (std::uint64_t n = 0; n < batch.n_samples; ++n) {
      const FeatureSet one = SelectRows(batch, std::vector<std::uint64_t>{n});
      const std::vector<double> g = oracle::FiniteDifferenceGradient(
          model, [&](const MlpModel& m) { return oracle::MeanLoss(m, one); }, h);
      double sq = 0.0;
      for (const double x : g) sq += x * x;
      const double norm = std::sqrt(sq);
      worst_norm = std::max(worst_norm, std::abs(grand.scores[n] - norm) / std::max(norm, 1e-3));
    }
  }
  v.Check(models == 6, "could not draw six kink-free models");
  v.Check(worst_coord <= 1e-3, "loss gradient relative error " + Sci(worst_coord));
  v.Check(worst_norm <= 1e-3, "grand norm relative error " + Sci(worst_norm));
  if (v.ok) {
    v.detail = "6 models, max coordinate error " + Sci(worst_coord) + ", max grand error " +
               Sci(worst_norm);
  }
  return v;
}

// ---- P6 / P7 -------------------------------------------------------------

constexpr std::uint64_t kReferenceSeeds[] = {0, 1, 2};

struct SeedRun {
  SyntheticTask task;
  TrajectoryReport lm;        // ratios 0, 0.3, 0.5
  TrajectoryReport random;    // ratios 0, 0.5
  TrajectoryReport reversed;  // ratios 0, 0.3
  std::uint32_t relevant_kept = 0;
  double oracle_accuracy = 0.0;
  double oracle_pruned_accuracy = 0.0;
};

const std::vector<SeedRun>& ReferenceRuns() {
  static const std::vector<SeedRun> runs = [] {
    std::vector<SeedRun> out;
    HarnessConfig config;
    config.jobs = 1;
    for (const std::uint64_t seed : kReferenceSeeds) {
      TaskSpec spec;
      spec.seed = seed;
      SeedRun run;
      run.task = GenerateTask(spec);
      const Dataset& source = run.task.source;
      const Dataset& target = run.task.target;
      const std::vector<std::uint64_t> seeds = {seed};

      const TrialSetup trial = PrepareTrial(source, target, Method::kLm, seed, config);
      const PruningPlan half = PlanForRatio(trial, Method::kLm, 0.5, Order::kOrdered);
      for (const std::uint64_t c : half.kept) {
        run.relevant_kept += std::count(run.task.relevant_ids.begin(),
                                        run.task.relevant_ids.end(), c);
      }
      // Independent reference: nearest class mean on raw target features.
      run.oracle_accuracy =
          oracle::NearestMeanAccuracy(trial.split.train, trial.split.test, trial.split.n_classes);
      // The same classifier on features of the LM-pruned source model.
      const Dataset pruned = PrunedSource(source, trial, half);
      const MlpModel model = Pretrain(pruned, config.source_hidden, [&] {
        TrainConfig c = config.pretrain_train;
        c.seed = DeriveSeed(seed, "pretrain");
        return c;
      }());
      run.oracle_pruned_accuracy =
          oracle::NearestMeanAccuracy(ExtractFeatures(model, trial.split.train),
                                      ExtractFeatures(model, trial.split.test),
                                      trial.split.n_classes);

      const std::vector<double> lm_ratios = {0.0, 0.3, 0.5};
      run.lm = RunTrajectory(source, target, Method::kLm, FinetuneMode::kLp, lm_ratios, seeds,
                             config);
      const std::vector<double> rnd_ratios = {0.0, 0.5};
      run.random = RunTrajectory(source, target, Method::kRandom, FinetuneMode::kLp, rnd_ratios,
                                 seeds, config);
      HarnessConfig rev = config;
      rev.order = Order::kReversed;
      const std::vector<double> rev_ratios = {0.0, 0.3};
      run.reversed = RunTrajectory(source, target, Method::kLm, FinetuneMode::kLp, rev_ratios,
                                   seeds, rev);
      out.push_back(std::move(run));
    }
    return out;
  }();
  return runs;
}

Verdict WinningSubset() {
  Verdict v;
  const auto& runs = ReferenceRuns();
  double base = 0, lm = 0, rnd = 0, nm = 0, nm_pruned = 0;
  std::string kept;
  for (const SeedRun& run : runs) {
    v.Check(run.relevant_kept >= 9, "(a) only " + std::to_string(run.relevant_kept) +
                                        " relevant classes kept");
    kept += std::to_string(run.relevant_kept) + "/";
    base += run.lm.accuracy[0] / runs.size();
    lm += run.lm.accuracy[2] / runs.size();
    rnd += run.random.accuracy[1] / runs.size();
    nm += run.oracle_accuracy / runs.size();
    nm_pruned += run.oracle_pruned_accuracy / runs.size();
  }
  kept.pop_back();
  const std::string numbers = "relevant kept " + kept + ", no-prune " + Fmt(base) + ", lm@0.5 " +
                              Fmt(lm) + ", random@0.5 " + Fmt(rnd) + ", nearest-mean raw " +
                              Fmt(nm) + " / lm-pruned features " + Fmt(nm_pruned);
  v.Check(lm >= base - 0.01, "(b) " + numbers);
  v.Check(rnd <= lm - 0.02, "(c) " + numbers);
  if (v.ok) v.detail = numbers;
  return v;
}

Verdict ReversedOrder() {
  Verdict v;
  const auto& runs = ReferenceRuns();
  double ordered = 0, reversed = 0;
  for (const SeedRun& run : runs) {
    ordered += run.lm.accuracy[1] / runs.size();
    reversed += run.reversed.accuracy[1] / runs.size();
  }
  const std::string numbers = "ordered@0.3 " + Fmt(ordered) + ", reversed@0.3 " + Fmt(reversed);
  v.Check(reversed <= ordered - 0.02, numbers);
  if (v.ok) v.detail = numbers + " (trajectories shared with P6)";
  return v;
}

// ---- P8 ------------------------------------------------------------------

Verdict Determinism() {
  Verdict v;
  TempDir dir("accept-p8");
  int runs = 0;
  for (const auto& [method, mode] : {std::pair{"lm", "lp"}, std::pair{"fm", "ff"}}) {
    std::string json[2], csv[2];
    for (int i = 0; i < 2; ++i) {
      const std::string tag = std::string(method) + std::to_string(i);
      const std::vector<std::string> args = {
          "trajectory", "--spec", DataPath("task.json").string(), "--method", method,
          "--mode", mode, "--ratio-grid", "0:0.75:0.25", "--seeds", "0,1,2",
          "--jobs", i == 0 ? "1" : "4",
          "--out", (dir / (tag + ".json")).string(), "--csv", (dir / (tag + ".csv")).string()};
      std::ostringstream out, err;
      const int code = cli::Run(args, out, err);
      v.Check(code == 0, "trajectory exited " + std::to_string(code) + ": " + err.str());
      if (code != 0) return v;
      json[i] = ReadFileBytes(dir / (tag + ".json"));
      csv[i] = ReadFileBytes(dir / (tag + ".csv"));
      ++runs;
    }
    v.Check(json[0] == json[1], std::string(method) + " report JSON differs across --jobs");
    v.Check(csv[0] == csv[1], std::string(method) + " CSV differs across --jobs");
  }
  if (v.ok) v.detail = std::to_string(runs) + " runs, jobs 1 and 4 byte-identical for lm/lp and fm/ff";
  return v;
}

// ---- P9 ------------------------------------------------------------------

Verdict PlanOracle() {
  Verdict v;
  std::mt19937_64 rng(909);
  int ties = 0;
  for (int trial = 0; trial < 500 && v.ok; ++trial) {
    const std::uint32_t n = Uniform(rng, 1, 80);
    // Few distinct values force ties in most instances.
    const std::uint32_t distinct = Uniform(rng, 1, n);
    ScoreVector sv;
    sv.granularity = trial % 2 ? Granularity::kSample : Granularity::kClass;
    sv.method = "test";
    for (std::uint32_t i = 0; i < n; ++i) sv.scores.push_back(double(Uniform(rng, 0, distinct - 1)) / 4);
    std::vector<double> sorted = sv.scores;
    std::sort(sorted.begin(), sorted.end());
    ties += std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();

    std::vector<double> ladder = {0.0};
    for (int i = 0; i < 6; ++i) ladder.push_back(std::uniform_real_distribution<double>(0, 0.999)(rng));
    ladder.push_back(std::floor(ladder.back() * n) / n);  // exact multiple of 1/n
    std::sort(ladder.begin(), ladder.end());
    const std::string at = " at trial " + std::to_string(trial);
    for (const Order order : {Order::kOrdered, Order::kReversed}) {
      std::vector<std::uint64_t> previous;
      for (std::size_t r = 0; r < ladder.size(); ++r) {
        const PruningPlan plan = MakePlan(sv, ladder[r], order);
        const auto expected = oracle::KeptIndices(sv.scores, ladder[r], order == Order::kReversed);
        v.Check(plan.kept == expected, "kept set differs from oracle" + at);
        std::vector<std::uint64_t> all = plan.kept;
        all.insert(all.end(), plan.dropped.begin(), plan.dropped.end());
        std::sort(all.begin(), all.end());
        std::vector<std::uint64_t> iota(n);
        std::iota(iota.begin(), iota.end(), 0);
        v.Check(all == iota, "kept and dropped do not partition" + at);
        if (r > 0) {
          v.Check(std::includes(previous.begin(), previous.end(), plan.kept.begin(),
                                plan.kept.end()),
                  "kept sets not nested" + at);
        }
        previous = plan.kept;
      }
    }
  }
  if (v.ok) v.detail = "500 instances (" + std::to_string(ties) + " with ties), 8-ratio ladders nested";
  return v;
}

// ---- P10 -----------------------------------------------------------------

Verdict Goldens() {
  Verdict v;
  const FeatureSet labeled = ReadFeatureSet(DataPath("labeled.dpf"));
  v.Check(labeled.n_samples == 3 && labeled.dim == 2 &&
              labeled.features == std::vector<float>{0.5f, -1.25f, 2.0f, 3.0f, -4.75f, 0.125f} &&
              labeled.labels == std::vector<std::uint32_t>{1, 0, 1},
          "labeled.dpf values");
  v.Check(EncodeFeatureSet(labeled) == ReadFileBytes(DataPath("labeled.dpf")),
          "labeled.dpf does not re-encode byte-identically");
  const FeatureSet unlabeled = ReadFeatureSet(DataPath("unlabeled.dpf"));
  v.Check(unlabeled.n_samples == 2 && unlabeled.dim == 3 && !unlabeled.has_labels() &&
              unlabeled.features == std::vector<float>{1, 2, 3, -0.5f, 0, 65504},
          "unlabeled.dpf values");

  const ClassManifest manifest = ReadManifest(DataPath("manifest.json"));
  v.Check(manifest.n_classes == 2 &&
              manifest.class_names == std::vector<std::string>{"cat", "dog"} &&
              manifest.per_class_counts == std::vector<std::uint64_t>{1, 2},
          "manifest.json values");
  const ScoreVector scores = ReadScores(DataPath("scores.json"));
  v.Check(scores.method == "lm" && scores.granularity == Granularity::kClass &&
              scores.scores == std::vector<double>{3, 0, 5, 2} && !scores.seed,
          "scores.json values");
  const PruningPlan plan = ReadPlan(DataPath("plan.json"));
  v.Check(plan.kept == std::vector<std::uint64_t>{0, 2} &&
              plan.dropped == std::vector<std::uint64_t>{1, 3} && plan.ratio == 0.5 &&
              plan.order == Order::kOrdered,
          "plan.json values");
  const TrajectoryReport report = ReadReport(DataPath("report.json"));
  v.Check(report.ratios == std::vector<double>{0.0, 0.2, 0.4} &&
              report.accuracy == std::vector<double>{0.9, 0.905, 0.89} &&
              report.winning == std::vector<double>{0.0, 0.2} && report.best_winning == 0.2 &&
              report.baseline_accuracy == 0.9,
          "report.json values");
  v.Check(EncodeManifest(manifest) == ReadFileBytes(DataPath("manifest.json")) &&
              EncodeScores(scores) == ReadFileBytes(DataPath("scores.json")) &&
              EncodePlan(plan) == ReadFileBytes(DataPath("plan.json")) &&
              EncodeReport(report) == ReadFileBytes(DataPath("report.json")),
          "JSON fixtures do not re-encode byte-identically");

  const auto kind_of = [](const char* name) -> std::string {
    try {
      ReadFeatureSet(DataPath(name));
    } catch (const Error& e) {
      return std::string(ErrorKindName(e.kind()));
    }
    return "none";
  };
  v.Check(kind_of("bad_magic.dpf") == "bad_magic", "bad_magic.dpf raised " + kind_of("bad_magic.dpf"));
  v.Check(kind_of("truncated.dpf") == "truncated", "truncated.dpf raised " + kind_of("truncated.dpf"));
  v.Check(kind_of("future_version.dpf") == "unsupported_version",
          "future_version.dpf raised " + kind_of("future_version.dpf"));
  if (v.ok) v.detail = "7 fixtures match pinned values; bad magic, truncation and version rejected";
  return v;
}

struct Criterion {
  const char* id;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace prunekit

int main() {
  using namespace prunekit;
  const Criterion criteria[] = {
      {"P1", 5, Conservation},  {"P2", 5, Invariance},     {"P3", 10, KMeansOracle},
      {"P4", 5, FmEqualsLm},    {"P5", 10, Gradients},     {"P6", 180, WinningSubset},
      {"P7", 120, ReversedOrder}, {"P8", 240, Determinism}, {"P9", 5, PlanOracle},
      {"P10", 1, Goldens},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && seconds >= c.budget_seconds) {
      v.ok = false;
      v.detail += "; over time budget";
    }
    failures += !v.ok;
    std::printf("%s %s %s [%.2f s, budget %.0f s]\n", c.id, v.ok ? "PASS" : "FAIL",
                v.detail.c_str(), seconds, c.budget_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
