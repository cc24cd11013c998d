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

#include "confnet/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "confnet/errors.hpp"
#include "confnet/io_util.hpp"
#include "confnet/objective.hpp"

namespace confnet {
namespace {

using nlohmann::json;

void AddScaled(ParamGrads& acc, const ParamGrads& g, double scale) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc[i].weights += scale * g[i].weights;
    acc[i].bias += scale * g[i].bias;
  }
}

json LayerToJson(const std::string& name, const Layer& layer) {
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(layer.weights.size()));
  for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) weights.push_back(layer.weights(r, c));
  }
  std::vector<double> bias(layer.bias.data(), layer.bias.data() + layer.bias.size());
  return json{{"name", name},
              {"rows", layer.weights.rows()},
              {"cols", layer.weights.cols()},
              {"weights", std::move(weights)},
              {"bias", std::move(bias)}};
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw InvalidArgument("train: epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgument("train: batch_size must be >= 1");
  if (!(hint_probability >= 0.0 && hint_probability <= 1.0)) {
    throw InvalidArgument("train: hint_probability must lie in [0, 1]");
  }
  if (!(beta > 0.0)) throw InvalidArgument("train: beta must be > 0");
  if (!(lambda_init > 0.0)) throw InvalidArgument("train: lambda_init must be > 0");
  if (!(adjust_factor > 1.0)) throw InvalidArgument("train: adjust_factor must be > 1");
}

std::size_t ArgMax(const Vector& v) {
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(static_cast<Eigen::Index>(best))) best = static_cast<std::size_t>(i);
  }
  return best;
}

TrainResult Train(const TrainConfig& config, const LabeledDataset& data) {
  config.Validate();
  data.Validate();

  NetworkSpec spec;
  spec.input_dim = data.dim();
  spec.trunk_widths = config.trunk_widths;
  spec.head_width = config.head_width;
  spec.num_classes = data.num_classes;
  spec.Validate();

  // One generator drives init, shuffling and hint masks, in that order.
  std::mt19937_64 rng(config.seed);
  NetworkParams params = InitNetwork(spec, rng());
  OptimizerState opt = MakeOptimizer(params, config.learning_rate, config.momentum);
  BudgetState budget{config.beta, std::clamp(config.lambda_init, kLambdaMin, kLambdaMax),
                     config.adjust_factor};

  const std::size_t n = data.size();
  std::vector<Vector> targets;
  targets.reserve(n);
  for (int label : data.labels) targets.push_back(OneHot(static_cast<std::size_t>(label), spec.num_classes));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  result.history.reserve(config.epochs);
  std::vector<PredictionOutput> outputs;
  std::vector<ForwardTrace> traces;
  std::vector<Vector> batch_targets;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double sum_task = 0.0;
    double sum_conf = 0.0;

    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      const std::size_t b = end - start;
      outputs.resize(b);
      traces.resize(b);
      batch_targets.resize(b);
      for (std::size_t s = 0; s < b; ++s) {
        const std::size_t idx = order[start + s];
        outputs[s] = Forward(params, data.sample(idx), &traces[s]);
        batch_targets[s] = targets[idx];
      }
      const HintMask mask = DrawHintMask(b, rng, config.hint_probability);
      const BatchGradients bg = BatchLossAndGrads(outputs, batch_targets, mask, budget.lambda);
      if (!std::isfinite(bg.loss.total)) {
        throw NumericError("train: non-finite loss in epoch " + std::to_string(epoch));
      }

      ParamGrads grads = ZeroLike(params);
      const double scale = 1.0 / static_cast<double>(b);
      for (std::size_t s = 0; s < b; ++s) {
        const BackwardResult br =
            Backward(params, traces[s], bg.grad_class_logits[s], bg.grad_conf_logit[s]);
        AddScaled(grads, br.param_grads, scale);
      }
      SgdStep(params, grads, opt);
      budget = UpdateLambda(budget, bg.loss.confidence_loss);

      sum_task += bg.loss.task_loss * static_cast<double>(b);
      sum_conf += bg.loss.confidence_loss * static_cast<double>(b);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.task_loss = sum_task / static_cast<double>(n);
    record.confidence_loss = sum_conf / static_cast<double>(n);
    record.lambda = budget.lambda;
    record.train_accuracy = Evaluate(params, data).accuracy;
    result.history.push_back(record);
  }
  result.params = std::move(params);
  return result;
}

EvalResult Evaluate(const NetworkParams& params, const LabeledDataset& data) {
  data.Validate();
  EvalResult result;
  result.records.reserve(data.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const PredictionOutput out = Forward(params, data.sample(i));
    EvalRecord rec;
    rec.predicted = ArgMax(out.p);
    rec.correct = rec.predicted == static_cast<std::size_t>(data.labels[i]);
    rec.confidence = out.c;
    rec.max_softmax = out.p.maxCoeff();
    correct += rec.correct ? 1 : 0;
    result.records.push_back(rec);
  }
  result.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  return result;
}

std::string ModelToJson(const NetworkParams& params) {
  params.CheckConsistent();
  json layers = json::array();
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    layers.push_back(LayerToJson(LayerName(params, i), params.layers[i]));
  }
  json doc{{"version", kModelFormatVersion},
           {"spec",
            {{"input_dim", params.spec.input_dim},
             {"trunk_widths", params.spec.trunk_widths},
             {"head_width", params.spec.head_width},
             {"num_classes", params.spec.num_classes}}},
           {"layers", std::move(layers)}};
  return doc.dump(1) + "\n";
}

NetworkParams ModelFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("model file is not valid JSON: ") + e.what());
  }

  try {
    if (!doc.is_object() || !doc.contains("version")) {
      throw ModelFormatError("model file has no version field");
    }
    const json& version = doc.at("version");
    if (!version.is_string() || version.get<std::string>() != kModelFormatVersion) {
      throw ModelVersionError("unsupported model format version " + version.dump() +
                              " (expected \"" + kModelFormatVersion + "\")");
    }

    const json& js = doc.at("spec");
    NetworkSpec spec;
    spec.input_dim = js.at("input_dim").get<std::size_t>();
    spec.trunk_widths = js.at("trunk_widths").get<std::vector<std::size_t>>();
    spec.head_width = js.at("head_width").get<std::size_t>();
    spec.num_classes = js.at("num_classes").get<std::size_t>();
    try {
      spec.Validate();
    } catch (const InvalidArgument& e) {
      throw ModelShapeError(e.what());
    }

    NetworkParams params = ZeroNetwork(spec);
    const json& layers = doc.at("layers");
    if (!layers.is_array() || layers.size() != params.layers.size()) {
      throw ModelShapeError("model file has " + std::to_string(layers.size()) +
                            " layers, spec implies " + std::to_string(params.layers.size()));
    }
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const json& jl = layers[i];
      Layer& layer = params.layers[i];
      const std::string expected = LayerName(params, i);
      if (jl.at("name").get<std::string>() != expected) {
        throw ModelShapeError("layer " + std::to_string(i) + " is named " +
                              jl.at("name").dump() + ", expected " + expected);
      }
      const auto rows = jl.at("rows").get<std::size_t>();
      const auto cols = jl.at("cols").get<std::size_t>();
      const auto weights = jl.at("weights").get<std::vector<double>>();
      const auto bias = jl.at("bias").get<std::vector<double>>();
      if (rows != layer.out_dim() || cols != layer.in_dim() || weights.size() != rows * cols ||
          bias.size() != rows) {
        throw ModelShapeError("layer " + expected + " has inconsistent shape");
      }
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          layer.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              weights[r * cols + c];
        }
        layer.bias(static_cast<Eigen::Index>(r)) = bias[r];
      }
    }
    params.CheckConsistent();
    return params;
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const NetworkParams& params, const std::filesystem::path& path) {
  WriteFileAtomic(path, ModelToJson(params));
}

NetworkParams LoadModel(const std::filesystem::path& path) { return ModelFromJson(ReadFile(path)); }

void SaveHistoryCsv(const TrainHistory& history, const std::filesystem::path& path) {
  std::string out = "epoch,task_loss,confidence_loss,lambda,train_accuracy\n";
  for (const EpochRecord& r : history) {
    out += std::to_string(r.epoch) + ',' + FormatDouble(r.task_loss) + ',' +
           FormatDouble(r.confidence_loss) + ',' + FormatDouble(r.lambda) + ',' +
           FormatDouble(r.train_accuracy) + '\n';
  }
  WriteFileAtomic(path, out);
}

}  // namespace confnet
