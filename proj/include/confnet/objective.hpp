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

// Confidence-learning objective.
//
// For a hinted sample the class probabilities are pulled toward the one-hot
// target by the network's own confidence,
//
//   p' = c * p + (1 - c) * y,
//
// and the per-sample loss is
//
//   l = -sum_i y_i log p'_i  +  lambda * (-log c).
//
// Unhinted samples use p' = p but still pay the confidence penalty. lambda is
// steered after every optimizer step so that the batch confidence loss tracks
// a budget beta.

#ifndef CONFNET_OBJECTIVE_HPP_
#define CONFNET_OBJECTIVE_HPP_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "confnet/network.hpp"

namespace confnet {

// Floor applied to p' and c before taking logarithms.
inline constexpr double kLogFloor = 1e-12;

inline constexpr double kLambdaMin = 1e-6;
inline constexpr double kLambdaMax = 1e6;

// true = hint applied to that sample.
using HintMask = std::vector<bool>;

struct LossBreakdown {
  double task_loss = 0.0;        // batch mean
  double confidence_loss = 0.0;  // batch mean
  double lambda = 0.0;
  double total = 0.0;            // task_loss + lambda * confidence_loss
  std::vector<Vector> p_prime;
};

struct BatchGradients {
  LossBreakdown loss;
  // Derivatives of each sample's own loss l_i. The batch objective is the
  // mean of l_i, so callers accumulating parameter gradients divide by the
  // batch size.
  std::vector<Vector> grad_class_logits;
  std::vector<double> grad_conf_logit;
};

struct BudgetState {
  double beta = 0.3;
  double lambda = 0.1;
  double adjust_factor = 1.01;
};

// Returns c*p + (1-c)*y when hinted, p otherwise. Throws InvalidArgument if
// y is not one-hot or c is outside [0, 1].
Vector InterpolatePredictions(const Vector& p, const Vector& y, double c, bool hinted);

double TaskLoss(const Vector& p_prime, const Vector& y);
double ConfidenceLoss(double c);

// Throws InvalidArgument unless lambda > 0.
double TotalLoss(double task_loss, double confidence_loss, double lambda);

// One-hot row for `label` among `num_classes`.
Vector OneHot(std::size_t label, std::size_t num_classes);

BatchGradients BatchLossAndGrads(std::span<const PredictionOutput> outputs,
                                 std::span<const Vector> targets, const HintMask& mask,
                                 double lambda);

// Multiplicative step of lambda toward the budget, clamped to
// [kLambdaMin, kLambdaMax].
BudgetState UpdateLambda(const BudgetState& state, double observed_confidence_loss);

// Independent Bernoulli(probability) per sample.
HintMask DrawHintMask(std::size_t batch_size, std::mt19937_64& rng, double probability = 0.5);

}  // namespace confnet

#endif  // CONFNET_OBJECTIVE_HPP_
