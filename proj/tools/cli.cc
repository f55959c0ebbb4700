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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prunekit/data_io.hpp"
#include "prunekit/pruning.hpp"
#include "prunekit/random.hpp"
#include "prunekit/scoring.hpp"
#include "prunekit/synthetic.hpp"
#include "prunekit/tensor_nn.hpp"
#include "prunekit/transfer.hpp"
#include "svg_plot.hpp"

namespace prunekit::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::vector<std::string_view> SplitList(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T ParseNumber(std::string_view token, std::string_view flag) {
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  Require(res.ec == std::errc() && res.ptr == token.data() + token.size() &&
              !token.empty(),
          ErrorKind::kUsage,
          std::string(flag) + ": cannot parse \"" + std::string(token) + "\"");
  return value;
}

template <typename T>
std::vector<T> ParseList(std::string_view text, std::string_view flag) {
  std::vector<T> values;
  for (const std::string_view token : SplitList(text, ',')) {
    values.push_back(ParseNumber<T>(token, flag));
  }
  return values;
}

// start:stop:step, inclusive of stop when the grid lands on it.
std::vector<double> ParseRatioGrid(std::string_view text) {
  const std::vector<std::string_view> parts = SplitList(text, ':');
  Require(parts.size() == 3, ErrorKind::kUsage,
          "--ratio-grid expects start:stop:step, got \"" + std::string(text) + "\"");
  const double start = ParseNumber<double>(parts[0], "--ratio-grid");
  const double stop = ParseNumber<double>(parts[1], "--ratio-grid");
  const double step = ParseNumber<double>(parts[2], "--ratio-grid");
  Require(step > 0.0 && stop >= start, ErrorKind::kUsage,
          "--ratio-grid needs step > 0 and stop >= start");
  std::vector<double> ratios;
  for (std::uint64_t i = 0;; ++i) {
    const double r = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
    if (r > stop + 1e-9) break;
    ratios.push_back(r);
  }
  return ratios;
}

std::vector<double> ResolveRatios(const std::string& list, const std::string& grid) {
  Require(list.empty() != grid.empty(), ErrorKind::kUsage,
          "give exactly one of --ratios or --ratio-grid");
  return list.empty() ? ParseRatioGrid(grid) : ParseList<double>(list, "--ratios");
}

Dataset LoadDataset(const fs::path& features_path, const std::string& manifest_path) {
  Dataset ds;
  ds.features = ReadFeatureSet(features_path);
  Require(ds.features.has_labels(), ErrorKind::kInvalidArgument,
          features_path.string() + " carries no labels");
  if (!manifest_path.empty()) {
    ds.manifest = ReadManifest(manifest_path);
  } else {
    std::uint32_t max_label = 0;
    for (const std::uint32_t l : *ds.features.labels) max_label = std::max(max_label, l);
    ds.manifest = ManifestFromLabels(ds.features, max_label + 1);
  }
  ValidatePair(ds.features, ds.manifest);
  return ds;
}

struct TrainFlags {
  TrainConfig config;

  void Add(CLI::App* app, std::string_view prefix = "") {
    const std::string p(prefix);
    app->add_option("--" + p + "epochs", config.epochs, "Training epochs")
        ->capture_default_str();
    app->add_option("--" + p + "batch-size", config.batch_size, "Mini-batch size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--" + p + "lr", config.learning_rate, "Learning rate")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_option("--" + p + "momentum", config.momentum, "SGD momentum in [0,1)")
        ->capture_default_str()
        ->check(CLI::Range(0.0f, 0.999999f));
    app->add_option("--" + p + "weight-decay", config.weight_decay,
                    "L2 penalty on weights")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }
};

void RejectUnused(const CLI::App* app, std::string_view method,
                  std::initializer_list<const char*> flags) {
  for (const char* flag : flags) {
    Require(app->count(flag) == 0, ErrorKind::kUsage,
            std::string(flag) + " is not used by method " + std::string(method));
  }
}

void RequireGiven(const CLI::App* app, std::string_view method,
                  std::initializer_list<const char*> flags) {
  for (const char* flag : flags) {
    Require(app->count(flag) > 0, ErrorKind::kUsage,
            "method " + std::string(method) + " needs " + flag);
  }
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void PrintReport(const TrajectoryReport& report, std::ostream& out) {
  out << "method " << report.method << ", mode " << report.mode << ", seeds";
  for (const auto s : report.seeds) out << ' ' << s;
  out << "\n";
  out << "ratio     accuracy  winning\n";
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    const bool wins = std::find(report.winning.begin(), report.winning.end(),
                                report.ratios[i]) != report.winning.end();
    std::ostringstream row;
    row << std::fixed << std::left << std::setw(10) << std::setprecision(4)
        << report.ratios[i] << std::setw(10) << report.accuracy[i]
        << (wins ? "yes" : "no");
    out << row.str() << "\n";
  }
  out << "best_winning "
      << (report.best_winning ? FormatDouble(*report.best_winning) : "none") << "\n";
}

void WriteReportOutputs(const TrajectoryReport& report, const std::string& json_path,
                        const std::string& csv_path, const std::string& plot_path) {
  if (!json_path.empty()) WriteReport(json_path, report);
  if (!csv_path.empty()) WriteReportCsv(csv_path, report);
  if (!plot_path.empty()) WriteFileBytes(plot_path, RenderTrajectorySvg(report));
}

TrainConfig ParseTrainSection(const Json& j, TrainConfig base, const std::string& where) {
  Require(j.is_object(), ErrorKind::kSchema, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "epochs") {
      base.epochs = value.get<std::uint32_t>();
    } else if (key == "batch_size") {
      base.batch_size = value.get<std::uint32_t>();
    } else if (key == "learning_rate") {
      base.learning_rate = value.get<float>();
    } else if (key == "momentum") {
      base.momentum = value.get<float>();
    } else if (key == "weight_decay") {
      base.weight_decay = value.get<float>();
    } else {
      Fail(ErrorKind::kSchema, "unknown key \"" + key + "\" in " + where);
    }
  }
  ValidateTrainConfig(base);
  return base;
}

HarnessConfig ParseHarness(const Json& j) {
  HarnessConfig h;
  Require(j.is_object(), ErrorKind::kSchema, "harness must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "surrogate_hidden") {
        h.surrogate_hidden = value.get<std::vector<std::uint32_t>>();
      } else if (key == "source_hidden") {
        h.source_hidden = value.get<std::vector<std::uint32_t>>();
      } else if (key == "surrogate_train") {
        h.surrogate_train = ParseTrainSection(value, h.surrogate_train, "harness." + key);
      } else if (key == "pretrain_train") {
        h.pretrain_train = ParseTrainSection(value, h.pretrain_train, "harness." + key);
      } else if (key == "finetune_train") {
        h.finetune_train = ParseTrainSection(value, h.finetune_train, "harness." + key);
      } else if (key == "fm_clusters") {
        h.fm_clusters = value.get<std::uint32_t>();
      } else if (key == "kmeans_max_iters") {
        h.kmeans_max_iters = value.get<std::uint32_t>();
      } else if (key == "kmeans_tol") {
        h.kmeans_tol = value.get<double>();
      } else if (key == "train_fraction") {
        h.train_fraction = value.get<double>();
      } else {
        Fail(ErrorKind::kSchema, "unknown key \"" + key + "\" in harness");
      }
    }
  } catch (const Json::exception& e) {
    Fail(ErrorKind::kSchema, std::string("harness: ") + e.what());
  }
  for (const auto w : h.surrogate_hidden) {
    Require(w > 0, ErrorKind::kSchema, "harness widths must be positive");
  }
  for (const auto w : h.source_hidden) {
    Require(w > 0, ErrorKind::kSchema, "harness widths must be positive");
  }
  Require(h.fm_clusters > 0, ErrorKind::kSchema, "harness.fm_clusters must be positive");
  return h;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

int RunGen(const GenArgs& a, std::ostream& out) {
  TaskSpec spec;
  if (!a.spec.empty()) spec = TaskSpecFromJson(ReadFileBytes(a.spec), {"harness"});
  if (a.seed) spec.seed = *a.seed;
  const SyntheticTask task = GenerateTask(spec);
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  Require(!ec, ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  WriteFeatureSet(dir / "source.dpf", task.source.features);
  WriteManifest(dir / "source.manifest.json", task.source.manifest);
  WriteFeatureSet(dir / "target.dpf", task.target.features);
  WriteManifest(dir / "target.manifest.json", task.target.manifest);
  out << "source " << task.source.features.n_samples << " samples, "
      << task.source.manifest.n_classes << " classes\n"
      << "target " << task.target.features.n_samples << " samples, "
      << task.target.manifest.n_classes << " classes\n";
  return kExitOk;
}

struct ScoreArgs {
  std::string method;
  std::string model;
  std::string targets;
  std::string source;
  std::string source_manifest;
  std::uint32_t k = kDefaultClusterCount;
  std::uint32_t kmeans_iters = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string assignments_out;
};

int RunScore(const CLI::App* app, const ScoreArgs& a, std::ostream& out) {
  const Method method = ParseMethod(a.method);
  const std::string_view name = MethodName(method);
  if (method != Method::kFm) {
    RejectUnused(app, name, {"--k", "--kmeans-iters", "--assignments-out"});
  }
  ScoreVector scores;
  switch (method) {
    case Method::kLm: {
      RequireGiven(app, name, {"--model", "--targets"});
      RejectUnused(app, name, {"--source", "--source-manifest", "--seed"});
      const MlpModel model = ReadCheckpoint(a.model);
      scores = LmScores(model, ReadFeatureSet(a.targets), model.output_dim());
      break;
    }
    case Method::kFm: {
      RequireGiven(app, name, {"--source", "--targets"});
      RejectUnused(app, name, {"--source-manifest"});
      FeatureSet source = ReadFeatureSet(a.source);
      FeatureSet targets = ReadFeatureSet(a.targets);
      if (!a.model.empty()) {
        const MlpModel model = ReadCheckpoint(a.model);
        source = ExtractFeatures(model, source);
        targets = ExtractFeatures(model, targets);
      }
      KMeansOptions options;
      options.k = a.k;
      options.seed = a.seed;
      options.max_iters = a.kmeans_iters;
      const ClusterModel clusters = KMeansFit(source, options);
      scores = FmScores(clusters, targets);
      if (!a.assignments_out.empty()) {
        FeatureSet relabeled = ReadFeatureSet(a.source);
        relabeled.labels = clusters.assignments;
        WriteFeatureSet(a.assignments_out, relabeled);
      }
      out << "kmeans inertia " << FormatDouble(clusters.inertia) << " after "
          << clusters.n_iters << " iterations\n";
      break;
    }
    case Method::kRandom: {
      RequireGiven(app, name, {"--source"});
      RejectUnused(app, name, {"--model", "--targets", "--source-manifest"});
      scores = RandomScores(ReadFeatureSet(a.source).n_samples, a.seed);
      break;
    }
    case Method::kGrand:
    case Method::kEl2n: {
      RequireGiven(app, name, {"--model", "--source"});
      RejectUnused(app, name, {"--targets", "--seed"});
      const MlpModel model = ReadCheckpoint(a.model);
      const Dataset source = LoadDataset(a.source, a.source_manifest);
      scores = method == Method::kGrand ? GrandScores(model, source.features)
                                        : El2nScores(model, source.features);
      break;
    }
    case Method::kModerate: {
      RequireGiven(app, name, {"--source"});
      RejectUnused(app, name, {"--targets", "--seed"});
      const Dataset source = LoadDataset(a.source, a.source_manifest);
      const FeatureSet reps = a.model.empty()
                                  ? source.features
                                  : ExtractFeatures(ReadCheckpoint(a.model), source.features);
      scores = ModerateScores(reps, source.manifest.n_classes);
      break;
    }
  }
  WriteScores(a.out, scores);
  out << "scored " << scores.scores.size() << " "
      << (scores.granularity == Granularity::kClass ? "classes" : "samples") << "\n";
  return kExitOk;
}

struct PruneArgs {
  std::string scores;
  double ratio = 0.0;
  std::string order = "ordered";
  std::string out;
};

int RunPrune(const PruneArgs& a, std::ostream& out) {
  const PruningPlan plan = MakePlan(ReadScores(a.scores), a.ratio, ParseOrder(a.order));
  WritePlan(a.out, plan);
  out << "kept " << plan.kept.size() << " of " << plan.population() << " "
      << (plan.granularity == Granularity::kClass ? "classes" : "samples") << "\n";
  return kExitOk;
}

struct TrainArgs {
  std::string source;
  std::string source_manifest;
  std::string plan;
  std::string plan_labels;
  std::string hidden = "64,2";
  TrainFlags train;
  std::uint64_t seed = 0;
  std::string out;
};

int RunTrain(const TrainArgs& a, std::ostream& out) {
  Dataset source = LoadDataset(a.source, a.source_manifest);
  if (!a.plan.empty()) {
    const PruningPlan plan = ReadPlan(a.plan);
    if (!a.plan_labels.empty()) {
      // The plan ranks pseudo classes; keep their samples under true labels.
      Require(plan.granularity == Granularity::kClass, ErrorKind::kUsage,
              "--plan-labels needs a class-granularity plan");
      FeatureSet pseudo = ReadFeatureSet(a.plan_labels);
      Require(pseudo.has_labels() && pseudo.n_samples == source.features.n_samples,
              ErrorKind::kLengthMismatch,
              "--plan-labels must label every source sample");
      TrialSetup trial;
      trial.pseudo_labels = std::move(*pseudo.labels);
      for (const std::uint32_t l : trial.pseudo_labels) {
        Require(l < plan.population(), ErrorKind::kInvariant,
                "pseudo label " + std::to_string(l) + " outside the plan");
      }
      source = PrunedSource(source, trial, plan);
    } else {
      source = ApplyPlan(source, plan);
    }
  } else {
    Require(a.plan_labels.empty(), ErrorKind::kUsage, "--plan-labels needs --plan");
  }
  const std::vector<std::uint32_t> hidden =
      a.hidden.empty() ? std::vector<std::uint32_t>{}
                       : ParseList<std::uint32_t>(a.hidden, "--hidden");
  TrainConfig config = a.train.config;
  config.seed = a.seed;
  const MlpModel model = Pretrain(source, hidden, config);
  WriteCheckpoint(a.out, model);
  out << "trained on " << source.features.n_samples << " samples, "
      << source.manifest.n_classes << " classes\n"
      << "train_accuracy " << FormatDouble(Accuracy(model, source.features)) << "\n";
  return kExitOk;
}

struct TransferArgs {
  std::string model;
  std::string target;
  std::string target_manifest;
  TrainFlags train;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  std::string out;
};

int RunTransfer(const TransferArgs& a, FinetuneMode mode, std::ostream& out) {
  const MlpModel model = ReadCheckpoint(a.model);
  const Dataset target = LoadDataset(a.target, a.target_manifest);
  const TargetSplit split =
      SplitTarget(target, DeriveSeed(a.seed, "split"), a.train_fraction);
  TrainConfig config = a.train.config;
  config.seed = DeriveSeed(a.seed, "finetune");
  double accuracy = 0.0;
  if (mode == FinetuneMode::kLp) {
    const ProbeResult r = LinearProbe(model, split, config);
    if (!a.out.empty()) WriteCheckpoint(a.out, r.head);
    accuracy = r.test_accuracy;
  } else {
    const FinetuneResult r = FullFinetune(model, split, config);
    if (!a.out.empty()) WriteCheckpoint(a.out, r.model);
    accuracy = r.test_accuracy;
  }
  out << "train " << split.train.n_samples << ", test " << split.test.n_samples << "\n"
      << "test_accuracy " << FormatDouble(accuracy) << "\n";
  return kExitOk;
}

struct TrajectoryArgs {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::string source;
  std::string source_manifest;
  std::string target;
  std::string target_manifest;
  std::string method;
  std::string mode = "lp";
  std::string ratios;
  std::string ratio_grid;
  std::string seeds = "0";
  std::string order = "ordered";
  double epsilon = 0.0;
  unsigned jobs = 1;
  std::optional<std::uint32_t> k;
  std::string out;
  std::string csv;
  std::string plot;
};

int RunTrajectoryCommand(const TrajectoryArgs& a, std::ostream& out) {
  const Method method = ParseMethod(a.method);
  const FinetuneMode mode = ParseFinetuneMode(a.mode);
  const std::vector<double> ratios = ResolveRatios(a.ratios, a.ratio_grid);
  const std::vector<std::uint64_t> seeds = ParseList<std::uint64_t>(a.seeds, "--seeds");

  HarnessConfig harness;
  Dataset source;
  Dataset target;
  if (!a.spec.empty()) {
    Require(a.source.empty() && a.target.empty(), ErrorKind::kUsage,
            "--spec cannot be combined with --source/--target");
    const std::string text = ReadFileBytes(a.spec);
    TaskSpec spec = TaskSpecFromJson(text, {"harness"});
    Json root;
    try {
      root = Json::parse(text);
    } catch (const Json::exception& e) {
      Fail(ErrorKind::kSchema, std::string("task spec: ") + e.what());
    }
    if (root.contains("harness")) harness = ParseHarness(root["harness"]);
    if (a.seed) spec.seed = *a.seed;
    SyntheticTask task = GenerateTask(spec);
    source = std::move(task.source);
    target = std::move(task.target);
  } else {
    Require(!a.source.empty() && !a.target.empty(), ErrorKind::kUsage,
            "give --spec, or both --source and --target");
    Require(!a.seed.has_value(), ErrorKind::kUsage,
            "--seed selects the task seed and needs --spec; use --seeds for trials");
    source = LoadDataset(a.source, a.source_manifest);
    target = LoadDataset(a.target, a.target_manifest);
  }
  harness.order = ParseOrder(a.order);
  harness.epsilon = a.epsilon;
  harness.jobs = a.jobs;
  if (a.k) harness.fm_clusters = *a.k;

  const TrajectoryReport report =
      RunTrajectory(source, target, method, mode, ratios, seeds, harness);
  WriteReportOutputs(report, a.out, a.csv, a.plot);
  PrintReport(report, out);
  return kExitOk;
}

struct ReportArgs {
  std::string report;
  std::string csv;
  std::string plot;
};

int RunReport(const ReportArgs& a, std::ostream& out) {
  const TrajectoryReport report = ReadReport(a.report);
  WriteReportOutputs(report, "", a.csv, a.plot);
  PrintReport(report, out);
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kInvalidArgument:
      return kExitUsage;
    case ErrorKind::kRuntime:
      return kExitRuntime;
    default:
      return kExitData;
  }
}

int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app("Dataset pruning for transfer learning: score, prune, pretrain, "
               "finetune and sweep pruning ratios.",
               "prunekit");
  app.require_subcommand(1);
  app.fallthrough(false);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic source/target task");
  gen_cmd->add_option("--spec", gen.spec, "Task spec JSON (defaults apply when omitted)");
  gen_cmd->add_option("--seed", gen.seed, "Override the task seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Directory for the four output files")
      ->required();

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "Score source classes or samples");
  score_cmd->add_option("--method", score.method, "lm, fm, random, grand, el2n or moderate")
      ->required();
  score_cmd->add_option("--model", score.model, "Model checkpoint (surrogate or extractor)");
  score_cmd->add_option("--targets", score.targets, "Target features (lm, fm)");
  score_cmd->add_option("--source", score.source, "Source features");
  score_cmd->add_option("--source-manifest", score.source_manifest,
                        "Source class manifest (labels define classes when omitted)");
  score_cmd->add_option("--k", score.k, "Number of k-means clusters (fm)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  score_cmd->add_option("--kmeans-iters", score.kmeans_iters, "Lloyd iteration cap (fm)")
      ->capture_default_str();
  score_cmd->add_option("--seed", score.seed, "Seed for k-means or random ranks")
      ->capture_default_str();
  score_cmd->add_option("--out", score.out, "Output scores JSON")->required();
  score_cmd->add_option("--assignments-out", score.assignments_out,
                        "Write the source relabeled by cluster (fm)");

  PruneArgs prune;
  CLI::App* prune_cmd = app.add_subcommand("prune", "Turn scores into a pruning plan");
  prune_cmd->add_option("--scores", prune.scores, "Scores JSON")->required();
  prune_cmd->add_option("--ratio", prune.ratio, "Fraction to remove, in [0,1)")->required();
  prune_cmd->add_option("--order", prune.order, "ordered keeps the highest scores, "
                                                "reversed the lowest")
      ->capture_default_str();
  prune_cmd->add_option("--out", prune.out, "Output plan JSON")->required();

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Pretrain a model on (pruned) source data");
  train_cmd->add_option("--source", train.source, "Source features")->required();
  train_cmd->add_option("--source-manifest", train.source_manifest, "Source class manifest");
  train_cmd->add_option("--plan", train.plan, "Pruning plan to apply first");
  train_cmd->add_option("--plan-labels", train.plan_labels,
                        "Source relabeled by cluster, for plans over clusters");
  train_cmd->add_option("--hidden", train.hidden, "Comma-separated hidden widths")
      ->capture_default_str();
  train.train.Add(train_cmd);
  train_cmd->add_option("--seed", train.seed, "Initialization and shuffle seed")
      ->capture_default_str();
  train_cmd->add_option("--out", train.out, "Output checkpoint")->required();

  TransferArgs probe;
  CLI::App* probe_cmd = app.add_subcommand("probe", "Linear probe on frozen representations");
  TransferArgs finetune;
  CLI::App* finetune_cmd = app.add_subcommand("finetune", "Finetune every layer on the target");
  for (auto [cmd, args] : {std::pair{probe_cmd, &probe}, std::pair{finetune_cmd, &finetune}}) {
    cmd->add_option("--model", args->model, "Pretrained checkpoint")->required();
    cmd->add_option("--target", args->target, "Target features")->required();
    cmd->add_option("--target-manifest", args->target_manifest, "Target class manifest");
    args->train.Add(cmd);
    cmd->add_option("--train-fraction", args->train_fraction,
                    "Stratified train share of the target")
        ->capture_default_str();
    cmd->add_option("--seed", args->seed, "Split and training seed")->capture_default_str();
    cmd->add_option("--out", args->out, "Write the trained head or model");
  }

  TrajectoryArgs traj;
  CLI::App* traj_cmd =
      app.add_subcommand("trajectory", "Sweep pruning ratios and report transfer accuracy");
  traj_cmd->add_option("--spec", traj.spec, "Task spec JSON, optionally with a harness section");
  traj_cmd->add_option("--seed", traj.seed, "Override the task seed of --spec");
  traj_cmd->add_option("--source", traj.source, "Source features (instead of --spec)");
  traj_cmd->add_option("--source-manifest", traj.source_manifest, "Source class manifest");
  traj_cmd->add_option("--target", traj.target, "Target features (instead of --spec)");
  traj_cmd->add_option("--target-manifest", traj.target_manifest, "Target class manifest");
  traj_cmd->add_option("--method", traj.method, "lm, fm, random, grand, el2n or moderate")
      ->required();
  traj_cmd->add_option("--mode", traj.mode, "lp or ff")->capture_default_str();
  traj_cmd->add_option("--ratios", traj.ratios, "Comma-separated ratios, starting at 0");
  traj_cmd->add_option("--ratio-grid", traj.ratio_grid, "start:stop:step");
  traj_cmd->add_option("--seeds", traj.seeds, "Comma-separated trial seeds")
      ->capture_default_str();
  traj_cmd->add_option("--order", traj.order, "ordered or reversed")->capture_default_str();
  traj_cmd->add_option("--epsilon", traj.epsilon, "Winning tolerance below the baseline")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  traj_cmd->add_option("--jobs", traj.jobs, "Concurrent (ratio, seed) cells")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  traj_cmd->add_option("--k", traj.k, "Number of k-means clusters (fm)")
      ->check(CLI::PositiveNumber);
  traj_cmd->add_option("--out", traj.out, "Output report JSON")->required();
  traj_cmd->add_option("--csv", traj.csv, "Output per-seed CSV");
  traj_cmd->add_option("--plot", traj.plot, "Output SVG plot");

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "Print a report; re-emit CSV or plot");
  report_cmd->add_option("--report", report.report, "Report JSON")->required();
  report_cmd->add_option("--csv", report.csv, "Output per-seed CSV");
  report_cmd->add_option("--plot", report.plot, "Output SVG plot");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (app.get_subcommands().empty()) {
      out << app.help("", CLI::AppFormatMode::All);
    } else {
      out << app.get_subcommands().front()->help();
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << OneLine(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return RunGen(gen, out);
    if (score_cmd->parsed()) return RunScore(score_cmd, score, out);
    if (prune_cmd->parsed()) return RunPrune(prune, out);
    if (train_cmd->parsed()) return RunTrain(train, out);
    if (probe_cmd->parsed()) return RunTransfer(probe, FinetuneMode::kLp, out);
    if (finetune_cmd->parsed()) return RunTransfer(finetune, FinetuneMode::kFf, out);
    if (traj_cmd->parsed()) return RunTrajectoryCommand(traj, out);
    if (report_cmd->parsed()) return RunReport(report, out);
  } catch (const Error& e) {
    err << "error[" << ErrorKindName(e.kind()) << "]: " << OneLine(e.what()) << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error[runtime]: " << OneLine(e.what()) << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace prunekit::cli
