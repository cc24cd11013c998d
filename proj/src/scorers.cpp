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

#include "confnet/scorers.hpp"

#include <algorithm>
#include <cmath>

#include "confnet/errors.hpp"
#include "confnet/metrics.hpp"
#include "confnet/trainer.hpp"

namespace confnet {
namespace {

Vector SignStep(const Vector& x, const Vector& grad, double epsilon,
                const std::optional<std::pair<double, double>>& clip) {
  Vector out = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double g = grad(i);
    const double sign = g > 0.0 ? 1.0 : (g < 0.0 ? -1.0 : 0.0);
    out(i) = x(i) - epsilon * sign;
  }
  if (clip) out = out.cwiseMax(clip->first).cwiseMin(clip->second);
  return out;
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be finite and >= 0");
  }
}

void CheckTemperature(double temperature) {
  if (!(temperature >= 1.0) || !std::isfinite(temperature)) {
    throw InvalidArgument("temperature must be finite and >= 1");
  }
}

}  // namespace

std::string ToString(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kConfidence: return "confidence";
    case ScorerKind::kBaseline: return "baseline";
    case ScorerKind::kOdin: return "odin";
  }
  return "unknown";
}

ScorerKind ParseScorerKind(const std::string& name) {
  if (name == "confidence") return ScorerKind::kConfidence;
  if (name == "baseline") return ScorerKind::kBaseline;
  if (name == "odin") return ScorerKind::kOdin;
  throw InvalidArgument("unknown scorer \"" + name + "\"");
}

void PerturbConfig::Validate() const {
  CheckEpsilon(epsilon);
  CheckTemperature(temperature);
  if (clip && !(clip->first < clip->second)) throw InvalidArgument("clip range needs lo < hi");
}

Vector PreprocessInput(const NetworkParams& params, const Vector& x, double epsilon,
                       const std::optional<std::pair<double, double>>& clip) {
  CheckEpsilon(epsilon);
  if (epsilon == 0.0) return x;
  ForwardTrace trace;
  const PredictionOutput out = Forward(params, x, &trace);
  const Vector no_class_grad = Vector::Zero(out.class_logits.size());
  const BackwardResult br = Backward(params, trace, no_class_grad, -(1.0 - out.c));
  return SignStep(x, br.input_grad, epsilon, clip);
}

double ScoreConfidence(const NetworkParams& params, const Vector& x, double epsilon,
                       const std::optional<std::pair<double, double>>& clip) {
  return Forward(params, PreprocessInput(params, x, epsilon, clip)).c;
}

double ScoreSoftmaxBaseline(const NetworkParams& params, const Vector& x) {
  return Forward(params, x).p.maxCoeff();
}

double TemperatureMaxSoftmax(const Vector& logits, double temperature) {
  CheckTemperature(temperature);
  return Softmax(logits / temperature).maxCoeff();
}

double ScoreOdin(const NetworkParams& params, const Vector& x, double temperature, double epsilon,
                 const std::optional<std::pair<double, double>>& clip) {
  CheckTemperature(temperature);
  CheckEpsilon(epsilon);
  ForwardTrace trace;
  const PredictionOutput out = Forward(params, x, &trace);
  if (epsilon == 0.0) return TemperatureMaxSoftmax(out.class_logits, temperature);

  // Cross-entropy of softmax(z / T) against the predicted class; its gradient
  // with respect to z is (softmax(z / T) - e_k) / T.
  const Vector scaled = Softmax(out.class_logits / temperature);
  Vector grad_logits = scaled;
  grad_logits(static_cast<Eigen::Index>(ArgMax(out.p))) -= 1.0;
  grad_logits /= temperature;
  const BackwardResult br = Backward(params, trace, grad_logits, 0.0);
  const Vector perturbed = SignStep(x, br.input_grad, epsilon, clip);
  return TemperatureMaxSoftmax(Forward(params, perturbed).class_logits, temperature);
}

double Score(ScorerKind kind, const NetworkParams& params, const Vector& x,
             const PerturbConfig& config) {
  switch (kind) {
    case ScorerKind::kConfidence: return ScoreConfidence(params, x, config.epsilon, config.clip);
    case ScorerKind::kBaseline: return ScoreSoftmaxBaseline(params, x);
    case ScorerKind::kOdin:
      return ScoreOdin(params, x, config.temperature, config.epsilon, config.clip);
  }
  throw InvalidArgument("unknown scorer");
}

std::vector<double> ScoreAll(ScorerKind kind, const NetworkParams& params, const Matrix& samples,
                             const PerturbConfig& config) {
  config.Validate();
  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(samples.rows()));
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    scores.push_back(Score(kind, params, samples.row(i).transpose(), config));
  }
  return scores;
}

ScoredSet ScoreSets(ScorerKind kind, const NetworkParams& params, const Matrix& in_samples,
                    const Matrix& out_samples, const PerturbConfig& config) {
  return ScoredSet{ToString(kind), config, ScoreAll(kind, params, in_samples, config),
                   ScoreAll(kind, params, out_samples, config)};
}

std::vector<double> DefaultEpsilonGrid(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("epsilon grid scale must be finite and > 0");
  }
  std::vector<double> grid(21);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 0.02 * scale * static_cast<double>(i) / 20.0;
  }
  return grid;
}

EpsilonSweep EpsilonGridSearch(const NetworkParams& params, const Matrix& holdout_in,
                               const Matrix& holdout_out, std::span<const double> grid,
                               ScorerKind kind, const PerturbConfig& base) {
  if (grid.empty()) throw InvalidArgument("epsilon grid search: empty grid");
  if (holdout_in.rows() == 0 || holdout_out.rows() == 0) {
    throw InvalidArgument("epsilon grid search: empty holdout set");
  }
  EpsilonSweep sweep;
  bool have_best = false;
  double best_error = 0.0;
  for (double eps : grid) {
    PerturbConfig config = base;
    config.epsilon = eps;
    const ScoredSet scored = ScoreSets(kind, params, holdout_in, holdout_out, config);
    const double err = DetectionError(scored.in_scores, scored.out_scores);
    sweep.table.push_back({eps, err});
    if (!have_best || err < best_error || (err == best_error && eps < sweep.best_epsilon)) {
      have_best = true;
      best_error = err;
      sweep.best_epsilon = eps;
    }
  }
  return sweep;
}

}  // namespace confnet
