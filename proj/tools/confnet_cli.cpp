// Copyright 2026 The confnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// confnet command-line driver.
//
//   gen-data        synthetic XOR / noise / shell / grid sets to CSV
//   train           confidence-branch training; model JSON + history CSV
//   confidence-map  model + grid -> x, p, c per grid point
//   ood-eval        detection metrics for one or all scorers
//   sweep-epsilon   grid search over the preprocessing magnitude
//   calibrate       detection threshold from true OOD or misclassified holdout
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confnet/dataset.hpp"
#include "confnet/errors.hpp"
#include "confnet/io_util.hpp"
#include "confnet/metrics.hpp"
#include "confnet/scorers.hpp"
#include "confnet/trainer.hpp"

namespace {

using namespace confnet;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

// Flat `key=value` lines; '#' starts a comment. Keys are long option names
// without the leading dashes. Values given on the command line win.
void ApplyConfigFile(CLI::App& cmd, const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) +
                            ": expected key=value");
    }
    std::string key = CLI::detail::trim_copy(line.substr(0, eq));
    std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) + ": unknown key \"" +
                            key + "\"");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

ScoredSet ScoresFromFiles(const fs::path& in_path, const fs::path& out_path) {
  auto read_scores = [](const fs::path& path) {
    std::istringstream in(ReadFile(path));
    std::string line;
    if (!std::getline(in, line) || CLI::detail::trim_copy(line) != "sample_id,score") {
      throw DataError(path.string() + ": expected header sample_id,score");
    }
    std::vector<double> scores;
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (CLI::detail::trim_copy(line).empty()) continue;
      const auto comma = line.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument("missing column");
        std::size_t used = 0;
        const std::string cell = CLI::detail::trim_copy(line.substr(comma + 1));
        scores.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed score row");
      }
    }
    if (scores.empty()) throw DataError(path.string() + ": no scores");
    return scores;
  };
  ScoredSet set;
  set.scorer = "external";
  set.in_scores = read_scores(in_path);
  set.out_scores = read_scores(out_path);
  return set;
}

void WriteScores(const std::vector<double>& scores, const fs::path& path) {
  std::string out = "sample_id,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out += std::to_string(i) + "," + FormatDouble(scores[i]) + "\n";
  }
  WriteFileAtomic(path, out);
}

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json ReportJson(const std::string& scorer, double epsilon, const MetricReport& report,
                double delta, CalibrationMethod method) {
  return json{{"scorer", scorer},
              {"epsilon", epsilon},
              {"fpr_at_95_tpr", report.fpr_at_95_tpr},
              {"detection_error", report.detection_error},
              {"auroc", report.auroc},
              {"aupr_in", report.aupr_in},
              {"aupr_out", report.aupr_out},
              {"delta", NumberOrNull(delta)},
              {"calibration_method", ToString(method)}};
}

std::vector<ScorerKind> ScorerList(const std::string& name) {
  if (name == "all") return {ScorerKind::kConfidence, ScorerKind::kBaseline, ScorerKind::kOdin};
  return {ParseScorerKind(name)};
}

Matrix RequireDim(Matrix m, const NetworkParams& params, const std::string& what) {
  if (static_cast<std::size_t>(m.cols()) != params.spec.input_dim) {
    throw DataError(what + " has " + std::to_string(m.cols()) + " features, model expects " +
                    std::to_string(params.spec.input_dim));
  }
  return m;
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
  std::string kind;
  std::size_t n = 500;
  double noise = 0.0;
  std::optional<std::uint64_t> seed;
  std::size_t dim = 2;
  double lo = 0.0;
  double hi = 1.0;
  double inner = 1.0;
  double outer = 3.0;
  std::vector<double> grid_min{-1.0, -1.0};
  std::vector<double> grid_max{1.0, 1.0};
  std::size_t resolution = 101;
  std::string out;
};

void RunGenData(const GenDataArgs& a) {
  if (a.kind != "grid" && !a.seed) throw InvalidArgument("gen-data " + a.kind + " requires --seed");
  if (a.kind == "xor") {
    SaveCsv(GenXor(a.n, a.noise, *a.seed), a.out);
  } else if (a.kind == "uniform" || a.kind == "gaussian") {
    const NoiseKind kind = a.kind == "uniform" ? NoiseKind::kUniform : NoiseKind::kGaussian;
    SaveFeatureCsv(GenNoiseOod(a.n, kind, a.dim, *a.seed, a.lo, a.hi), a.out);
  } else if (a.kind == "shell") {
    SaveFeatureCsv(GenUniformShell(a.n, a.dim, a.inner, a.outer, *a.seed), a.out);
  } else if (a.kind == "grid") {
    GridSpec spec{a.grid_min, a.grid_max,
                  std::vector<std::size_t>(a.grid_min.size(), a.resolution)};
    SaveFeatureCsv(GenGrid(spec), a.out);
  } else {
    throw InvalidArgument("unknown dataset kind \"" + a.kind + "\"");
  }
}

struct TrainArgs {
  TrainConfig config;
  bool seed_given = false;
  std::string data;
  std::size_t num_classes = 2;
  std::string model_out;
  std::string history_out;
};

void RunTrain(const TrainArgs& a) {
  if (!a.seed_given) throw InvalidArgument("train requires --seed (flag or config file)");
  const LabeledDataset data = LoadCsv(a.data, a.num_classes);
  const TrainResult result = Train(a.config, data);
  SaveModel(result.params, a.model_out);
  if (!a.history_out.empty()) SaveHistoryCsv(result.history, a.history_out);
  const EpochRecord& last = result.history.back();
  std::cout << "trained " << result.history.size() << " epochs: task_loss=" << last.task_loss
            << " confidence_loss=" << last.confidence_loss << " lambda=" << last.lambda
            << " train_accuracy=" << last.train_accuracy << "\n";
}

struct MapArgs {
  std::string model;
  std::vector<double> grid_min;
  std::vector<double> grid_max;
  std::size_t resolution = 101;
  std::string out;
};

void RunConfidenceMap(const MapArgs& a) {
  const NetworkParams params = LoadModel(a.model);
  const std::size_t d = params.spec.input_dim;
  GridSpec spec;
  spec.min = a.grid_min.empty() ? std::vector<double>(d, -1.5) : a.grid_min;
  spec.max = a.grid_max.empty() ? std::vector<double>(d, 1.5) : a.grid_max;
  spec.resolution.assign(d, a.resolution);
  if (spec.min.size() != d || spec.max.size() != d) {
    throw InvalidArgument("grid bounds need " + std::to_string(d) + " entries per side");
  }
  const Matrix grid = GenGrid(spec);

  std::string out;
  for (std::size_t j = 0; j < d; ++j) out += "x" + std::to_string(j + 1) + ",";
  for (std::size_t k = 0; k < params.spec.num_classes; ++k) out += "p" + std::to_string(k) + ",";
  out += "c\n";
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const Vector x = grid.row(i).transpose();
    const PredictionOutput pred = Forward(params, x);
    for (Eigen::Index j = 0; j < x.size(); ++j) out += FormatDouble(x(j)) + ",";
    for (Eigen::Index k = 0; k < pred.p.size(); ++k) out += FormatDouble(pred.p(k)) + ",";
    out += FormatDouble(pred.c) + "\n";
  }
  WriteFileAtomic(a.out, out);
}

struct EvalArgs {
  std::string model;
  std::string in_data;
  std::string ood_data;
  std::string in_scores;
  std::string ood_scores;
  std::string holdout;
  std::string scorer = "confidence";
  double epsilon = 0.0;
  double temperature = kOdinTemperature;
  std::string method = "true-ood";
  std::optional<double> delta;
  std::string report;
  std::string scores_dir;
};

// Threshold for the requested calibration method. `in`/`out` are the
// evaluation scores; the proxy method rescores the labelled holdout.
double ResolveDelta(const EvalArgs& a, CalibrationMethod method, const MetricReport& report,
                    const NetworkParams* params, ScorerKind kind, const PerturbConfig& config) {
  switch (method) {
    case CalibrationMethod::kTrueOod: return report.calibration.delta;
    case CalibrationMethod::kManual:
      if (!a.delta) throw InvalidArgument("--calibration-method manual requires --delta");
      return *a.delta;
    case CalibrationMethod::kMisclassifiedProxy: {
      if (params == nullptr || a.holdout.empty()) {
        throw InvalidArgument("misclassified-proxy calibration needs --model and --holdout");
      }
      const LabeledDataset holdout = LoadCsv(a.holdout, params->spec.num_classes);
      RequireDim(holdout.features, *params, "holdout");
      const EvalResult eval = Evaluate(*params, holdout);
      const std::vector<double> scores = ScoreAll(kind, *params, holdout.features, config);
      return CalibrateThresholdMisclassified(eval.records, scores).delta;
    }
  }
  throw InvalidArgument("unknown calibration method");
}

void RunOodEval(const EvalArgs& a) {
  const CalibrationMethod method = ParseCalibrationMethod(a.method);
  json reports = json::array();

  if (!a.in_scores.empty() || !a.ood_scores.empty()) {
    if (a.in_scores.empty() || a.ood_scores.empty()) {
      throw InvalidArgument("--in-scores and --ood-scores must be given together");
    }
    if (method == CalibrationMethod::kMisclassifiedProxy) {
      throw InvalidArgument("misclassified-proxy calibration needs a model, not score files");
    }
    const ScoredSet set = ScoresFromFiles(a.in_scores, a.ood_scores);
    const MetricReport report = MakeMetricReport(set.in_scores, set.out_scores);
    const double delta = ResolveDelta(a, method, report, nullptr, ScorerKind::kConfidence, {});
    reports.push_back(ReportJson(set.scorer, a.epsilon, report, delta, method));
  } else {
    if (a.model.empty() || a.in_data.empty() || a.ood_data.empty()) {
      throw InvalidArgument("ood-eval needs --model, --in-data and --ood-data (or score files)");
    }
    const NetworkParams params = LoadModel(a.model);
    const Matrix in = RequireDim(LoadFeatureCsv(a.in_data), params, "in-distribution data");
    const Matrix ood = RequireDim(LoadFeatureCsv(a.ood_data), params, "out-of-distribution data");
    for (ScorerKind kind : ScorerList(a.scorer)) {
      PerturbConfig config;
      config.epsilon = kind == ScorerKind::kBaseline ? 0.0 : a.epsilon;
      config.temperature = a.temperature;
      const ScoredSet set = ScoreSets(kind, params, in, ood, config);
      const MetricReport report = MakeMetricReport(set.in_scores, set.out_scores);
      const double delta = ResolveDelta(a, method, report, &params, kind, config);
      reports.push_back(ReportJson(set.scorer, config.epsilon, report, delta, method));
      if (!a.scores_dir.empty()) {
        fs::create_directories(a.scores_dir);
        WriteScores(set.in_scores, fs::path(a.scores_dir) / (set.scorer + "_in.csv"));
        WriteScores(set.out_scores, fs::path(a.scores_dir) / (set.scorer + "_ood.csv"));
      }
    }
  }

  const json doc = reports.size() == 1 ? reports[0] : reports;
  const std::string text = doc.dump(2) + "\n";
  if (a.report.empty()) {
    std::cout << text;
  } else {
    WriteFileAtomic(a.report, text);
  }
}

struct SweepArgs {
  std::string model;
  std::string in_data;
  std::string ood_data;
  std::string train_data;
  std::vector<double> grid;
  std::string scorer = "confidence";
  double temperature = kOdinTemperature;
};

void RunSweep(const SweepArgs& a) {
  const NetworkParams params = LoadModel(a.model);
  const Matrix in = RequireDim(LoadFeatureCsv(a.in_data), params, "in-distribution data");
  const Matrix ood = RequireDim(LoadFeatureCsv(a.ood_data), params, "out-of-distribution data");
  std::vector<double> grid = a.grid;
  if (grid.empty()) {
    if (a.train_data.empty()) throw InvalidArgument("sweep-epsilon needs --grid or --train-data");
    grid = DefaultEpsilonGrid(FeatureStd(LoadFeatureCsv(a.train_data)).mean());
  }
  PerturbConfig base;
  base.temperature = a.temperature;
  const EpsilonSweep sweep = EpsilonGridSearch(params, in, ood, grid, ParseScorerKind(a.scorer), base);
  std::cout << "epsilon,detection_error\n";
  for (const auto& row : sweep.table) {
    std::cout << FormatDouble(row.epsilon) << "," << FormatDouble(row.detection_error) << "\n";
  }
  std::cout << "best_epsilon=" << FormatDouble(sweep.best_epsilon) << "\n";
}

struct CalibrateArgs {
  std::string model;
  std::string method = "true-ood";
  std::string in_data;
  std::string ood_data;
  std::string holdout;
  std::string scorer = "confidence";
  double epsilon = 0.0;
  double temperature = kOdinTemperature;
};

void RunCalibrate(const CalibrateArgs& a) {
  const NetworkParams params = LoadModel(a.model);
  const ScorerKind kind = ParseScorerKind(a.scorer);
  PerturbConfig config;
  config.epsilon = a.epsilon;
  config.temperature = a.temperature;
  Calibration cal;
  const CalibrationMethod method = ParseCalibrationMethod(a.method);
  if (method == CalibrationMethod::kTrueOod) {
    if (a.in_data.empty() || a.ood_data.empty()) {
      throw InvalidArgument("true-ood calibration needs --in-data and --ood-data");
    }
    const Matrix in = RequireDim(LoadFeatureCsv(a.in_data), params, "in-distribution data");
    const Matrix ood = RequireDim(LoadFeatureCsv(a.ood_data), params, "out-of-distribution data");
    const ScoredSet set = ScoreSets(kind, params, in, ood, config);
    cal = CalibrateThreshold(set.in_scores, set.out_scores);
  } else if (method == CalibrationMethod::kMisclassifiedProxy) {
    if (a.holdout.empty()) throw InvalidArgument("misclassified-proxy calibration needs --holdout");
    const LabeledDataset holdout = LoadCsv(a.holdout, params.spec.num_classes);
    RequireDim(holdout.features, params, "holdout");
    const EvalResult eval = Evaluate(params, holdout);
    cal = CalibrateThresholdMisclassified(eval.records, ScoreAll(kind, params, holdout.features, config));
  } else {
    throw InvalidArgument("calibrate supports true-ood and misclassified-proxy");
  }
  std::cout << "method=" << ToString(method) << " delta=" << FormatDouble(cal.delta)
            << " detection_error=" << FormatDouble(cal.detection_error)
            << (cal.degenerate ? " degenerate=true" : "") << "\n";
}

int Run(int argc, char** argv) {
  CLI::App app{"Learned-confidence classifiers and out-of-distribution detection"};
  app.require_subcommand(1);

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset as CSV");
  gen_cmd->add_option("kind", gen.kind, "xor | uniform | gaussian | shell | grid")
      ->required()
      ->check(CLI::IsMember({"xor", "uniform", "gaussian", "shell", "grid"}));
  gen_cmd->add_option("--n", gen.n, "Number of samples");
  gen_cmd->add_option("--noise", gen.noise, "XOR label-flip probability");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed (required for random kinds)");
  gen_cmd->add_option("--dim", gen.dim, "Feature dimension for noise/shell sets");
  gen_cmd->add_option("--lo", gen.lo, "Remap noise values to [lo, hi]");
  gen_cmd->add_option("--hi", gen.hi);
  gen_cmd->add_option("--inner", gen.inner, "Shell: excluded half-width");
  gen_cmd->add_option("--outer", gen.outer, "Shell: sampling half-width");
  gen_cmd->add_option("--min", gen.grid_min, "Grid lower bounds")->delimiter(',');
  gen_cmd->add_option("--max", gen.grid_max, "Grid upper bounds")->delimiter(',');
  gen_cmd->add_option("--resolution", gen.resolution, "Grid points per axis");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  TrainArgs tr;
  std::string train_config;
  auto* train_cmd = app.add_subcommand("train", "Train a confidence-branch classifier");
  train_cmd->add_option("--config", train_config, "key=value file mirroring these flags");
  train_cmd->add_option("--data", tr.data, "Labelled training CSV")->required();
  train_cmd->add_option("--num-classes", tr.num_classes);
  train_cmd->add_option("--model-out", tr.model_out, "Model JSON path")->required();
  train_cmd->add_option("--history-out", tr.history_out, "History CSV path");
  train_cmd->add_option("--epochs", tr.config.epochs);
  train_cmd->add_option("--batch-size", tr.config.batch_size);
  train_cmd->add_option("--learning-rate", tr.config.learning_rate);
  train_cmd->add_option("--momentum", tr.config.momentum);
  train_cmd->add_option("--beta", tr.config.beta, "Confidence budget");
  train_cmd->add_option("--lambda-init", tr.config.lambda_init);
  train_cmd->add_option("--adjust-factor", tr.config.adjust_factor);
  train_cmd->add_option("--hint-probability", tr.config.hint_probability);
  train_cmd->add_option("--trunk-widths", tr.config.trunk_widths)->delimiter(',');
  train_cmd->add_option("--head-width", tr.config.head_width);
  train_cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&](const std::uint64_t& s) {
        tr.config.seed = s;
        tr.seed_given = true;
      },
      "RNG seed (required)");

  MapArgs map;
  auto* map_cmd = app.add_subcommand("confidence-map", "Evaluate p and c on a grid");
  map_cmd->add_option("--model", map.model)->required();
  map_cmd->add_option("--min", map.grid_min, "Grid lower bounds (default -1.5)")->delimiter(',');
  map_cmd->add_option("--max", map.grid_max, "Grid upper bounds (default 1.5)")->delimiter(',');
  map_cmd->add_option("--resolution", map.resolution);
  map_cmd->add_option("--out", map.out)->required();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("ood-eval", "Detection metrics for in vs out-of-distribution");
  eval_cmd->add_option("--model", ev.model);
  eval_cmd->add_option("--in-data", ev.in_data, "In-distribution CSV");
  eval_cmd->add_option("--ood-data", ev.ood_data, "Out-of-distribution CSV");
  eval_cmd->add_option("--in-scores", ev.in_scores, "Precomputed sample_id,score CSV");
  eval_cmd->add_option("--ood-scores", ev.ood_scores, "Precomputed sample_id,score CSV");
  eval_cmd->add_option("--holdout", ev.holdout, "Labelled holdout for misclassified-proxy");
  eval_cmd->add_option("--scorer", ev.scorer)
      ->check(CLI::IsMember({"confidence", "baseline", "odin", "all"}));
  eval_cmd->add_option("--epsilon", ev.epsilon);
  eval_cmd->add_option("--temperature", ev.temperature);
  eval_cmd->add_option("--calibration-method", ev.method)
      ->check(CLI::IsMember({"true-ood", "misclassified-proxy", "manual"}));
  eval_cmd->add_option("--delta", ev.delta, "Threshold for manual calibration");
  eval_cmd->add_option("--report", ev.report, "Report JSON path (stdout if omitted)");
  eval_cmd->add_option("--scores-dir", ev.scores_dir, "Write per-scorer score CSVs here");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep-epsilon", "Grid search over epsilon");
  sweep_cmd->add_option("--model", sw.model)->required();
  sweep_cmd->add_option("--in-data", sw.in_data)->required();
  sweep_cmd->add_option("--ood-data", sw.ood_data)->required();
  sweep_cmd->add_option("--train-data", sw.train_data, "Scales the default grid by feature std");
  sweep_cmd->add_option("--grid", sw.grid, "Explicit epsilon values")->delimiter(',');
  sweep_cmd->add_option("--scorer", sw.scorer)
      ->check(CLI::IsMember({"confidence", "baseline", "odin"}));
  sweep_cmd->add_option("--temperature", sw.temperature);

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Choose the detection threshold");
  cal_cmd->add_option("--model", cal.model)->required();
  cal_cmd->add_option("--method", cal.method)
      ->check(CLI::IsMember({"true-ood", "misclassified-proxy"}));
  cal_cmd->add_option("--in-data", cal.in_data);
  cal_cmd->add_option("--ood-data", cal.ood_data);
  cal_cmd->add_option("--holdout", cal.holdout);
  cal_cmd->add_option("--scorer", cal.scorer)
      ->check(CLI::IsMember({"confidence", "baseline", "odin"}));
  cal_cmd->add_option("--epsilon", cal.epsilon);
  cal_cmd->add_option("--temperature", cal.temperature);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "confnet: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (gen_cmd->parsed()) RunGenData(gen);
  if (train_cmd->parsed()) {
    if (!train_config.empty()) ApplyConfigFile(*train_cmd, train_config);
    RunTrain(tr);
  }
  if (map_cmd->parsed()) RunConfidenceMap(map);
  if (eval_cmd->parsed()) RunOodEval(ev);
  if (sweep_cmd->parsed()) RunSweep(sw);
  if (cal_cmd->parsed()) RunCalibrate(cal);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "confnet: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "confnet: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "confnet: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    std::cerr << "confnet: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "confnet: data error: " << e.what() << "\n";
    return kExitData;
  }
}
