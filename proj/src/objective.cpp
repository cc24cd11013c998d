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

#include "confnet/objective.hpp"

#include <algorithm>
#include <cmath>

#include "confnet/errors.hpp"

namespace confnet {
namespace {

// Index of the hot entry; throws if y is not one-hot.
Eigen::Index HotIndex(const Vector& y) {
  Eigen::Index hot = -1;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) == 1.0) {
      if (hot >= 0) throw InvalidArgument("target is not one-hot");
      hot = i;
    } else if (y(i) != 0.0) {
      throw InvalidArgument("target is not one-hot");
    }
  }
  if (hot < 0) throw InvalidArgument("target is not one-hot");
  return hot;
}

}  // namespace

Vector OneHot(std::size_t label, std::size_t num_classes) {
  if (label >= num_classes) throw InvalidArgument("label out of range");
  Vector y = Vector::Zero(static_cast<Eigen::Index>(num_classes));
  y(static_cast<Eigen::Index>(label)) = 1.0;
  return y;
}

Vector InterpolatePredictions(const Vector& p, const Vector& y, double c, bool hinted) {
  if (p.size() != y.size()) throw InvalidArgument("interpolate: p and y differ in length");
  HotIndex(y);
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("interpolate: c must lie in [0, 1]");
  if (!hinted) return p;
  return c * p + (1.0 - c) * y;
}

double TaskLoss(const Vector& p_prime, const Vector& y) {
  if (p_prime.size() != y.size()) throw InvalidArgument("task_loss: length mismatch");
  const Eigen::Index k = HotIndex(y);
  return 0.0 - std::log(std::max(p_prime(k), kLogFloor));  // +0, not -0, at p = 1
}

double ConfidenceLoss(double c) { return 0.0 - std::log(std::max(c, kLogFloor)); }

double TotalLoss(double task_loss, double confidence_loss, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("total_loss: lambda must be > 0");
  return task_loss + lambda * confidence_loss;
}

BatchGradients BatchLossAndGrads(std::span<const PredictionOutput> outputs,
                                 std::span<const Vector> targets, const HintMask& mask,
                                 double lambda) {
  const std::size_t n = outputs.size();
  if (n == 0) throw InvalidArgument("batch_loss: empty batch");
  if (targets.size() != n) throw InvalidArgument("batch_loss: targets/outputs size mismatch");
  if (mask.size() != n) {
    throw InvalidArgument("batch_loss: hint mask has " + std::to_string(mask.size()) +
                          " entries for a batch of " + std::to_string(n));
  }
  if (!(lambda > 0.0)) throw InvalidArgument("batch_loss: lambda must be > 0");

  BatchGradients out;
  out.grad_class_logits.reserve(n);
  out.grad_conf_logit.reserve(n);
  out.loss.p_prime.reserve(n);
  double sum_task = 0.0;
  double sum_conf = 0.0;

  for (std::size_t s = 0; s < n; ++s) {
    const PredictionOutput& o = outputs[s];
    const Vector& y = targets[s];
    if (o.p.size() != y.size()) throw InvalidArgument("batch_loss: class count mismatch");
    const Eigen::Index k = HotIndex(y);
    const double c = o.c;

    Vector p_prime = InterpolatePredictions(o.p, y, c, mask[s]);
    const double pk = std::max(p_prime(k), kLogFloor);
    sum_task += -std::log(pk);
    sum_conf += ConfidenceLoss(c);

    Vector g_logits;
    double g_conf = -lambda * (1.0 - c);  // d(-lambda log c)/d(conf_logit)
    if (mask[s]) {
      // dL_t/dz_j = (c p_k / p'_k) (p_j - y_j) through the softmax Jacobian.
      g_logits = (c * o.p(k) / pk) * (o.p - y);
      // dL_t/dc = (1 - p_k) / p'_k, then the sigmoid derivative c (1 - c).
      g_conf += (1.0 - o.p(k)) / pk * c * (1.0 - c);
    } else {
      g_logits = o.p - y;
    }
    out.grad_class_logits.push_back(std::move(g_logits));
    out.grad_conf_logit.push_back(g_conf);
    out.loss.p_prime.push_back(std::move(p_prime));
  }

  out.loss.task_loss = sum_task / static_cast<double>(n);
  out.loss.confidence_loss = sum_conf / static_cast<double>(n);
  out.loss.lambda = lambda;
  out.loss.total = TotalLoss(out.loss.task_loss, out.loss.confidence_loss, lambda);
  return out;
}

BudgetState UpdateLambda(const BudgetState& state, double observed_confidence_loss) {
  BudgetState next = state;
  if (observed_confidence_loss > state.beta) {
    next.lambda = state.lambda * state.adjust_factor;
  } else if (observed_confidence_loss < state.beta) {
    next.lambda = state.lambda / state.adjust_factor;
  }
  next.lambda = std::clamp(next.lambda, kLambdaMin, kLambdaMax);
  return next;
}

HintMask DrawHintMask(std::size_t batch_size, std::mt19937_64& rng, double probability) {
  if (batch_size == 0) throw InvalidArgument("hint mask: batch size must be >= 1");
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidArgument("hint mask: probability must lie in [0, 1]");
  }
  std::bernoulli_distribution coin(probability);
  HintMask mask(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) mask[i] = coin(rng);
  return mask;
}

}  // namespace confnet
