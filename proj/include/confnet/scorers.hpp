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

// Detection scorers. Every scorer returns higher values for inputs that look
// more in-distribution:
//   confidence  c(x) or c(x~)        range (0, 1)
//   baseline    max_i p_i            range [1/M, 1]
//   odin        max_i softmax(z/T)_i range [1/M, 1]

#ifndef CONFNET_SCORERS_HPP_
#define CONFNET_SCORERS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confnet/network.hpp"

namespace confnet {

inline constexpr double kOdinTemperature = 1000.0;

enum class ScorerKind { kConfidence, kBaseline, kOdin };

std::string ToString(ScorerKind kind);
ScorerKind ParseScorerKind(const std::string& name);

struct PerturbConfig {
  double epsilon = 0.0;
  double temperature = kOdinTemperature;  // used by ODIN only
  // Clip perturbed inputs to [lo, hi]; for [0,1]-bounded image-like data.
  std::optional<std::pair<double, double>> clip;

  void Validate() const;
};

struct ScoredSet {
  std::string scorer;
  PerturbConfig config;
  std::vector<double> in_scores;
  std::vector<double> out_scores;
};

// x - epsilon * sign(d(-log c)/dx), with sign(0) = 0. The step raises the
// confidence estimate to first order.
Vector PreprocessInput(const NetworkParams& params, const Vector& x, double epsilon,
                       const std::optional<std::pair<double, double>>& clip = std::nullopt);

double ScoreConfidence(const NetworkParams& params, const Vector& x, double epsilon,
                       const std::optional<std::pair<double, double>>& clip = std::nullopt);

double ScoreSoftmaxBaseline(const NetworkParams& params, const Vector& x);

// Max softmax of logits / temperature.
double TemperatureMaxSoftmax(const Vector& logits, double temperature);

// Perturbs x to lower the temperature-scaled cross-entropy of the class
// predicted on the unperturbed input, then returns the temperature-scaled max
// softmax.
double ScoreOdin(const NetworkParams& params, const Vector& x, double temperature, double epsilon,
                 const std::optional<std::pair<double, double>>& clip = std::nullopt);

double Score(ScorerKind kind, const NetworkParams& params, const Vector& x,
             const PerturbConfig& config);

// Scores every row of `samples`.
std::vector<double> ScoreAll(ScorerKind kind, const NetworkParams& params, const Matrix& samples,
                             const PerturbConfig& config);

ScoredSet ScoreSets(ScorerKind kind, const NetworkParams& params, const Matrix& in_samples,
                    const Matrix& out_samples, const PerturbConfig& config);

// 21 evenly spaced values in [0, 0.02 * scale].
std::vector<double> DefaultEpsilonGrid(double scale);

struct EpsilonSweepEntry {
  double epsilon = 0.0;
  double detection_error = 0.0;
};

struct EpsilonSweep {
  double best_epsilon = 0.0;
  std::vector<EpsilonSweepEntry> table;
};

// Detection error on the holdouts at each grid point; the minimiser wins and
// ties go to the smaller epsilon. `base` supplies temperature and clipping.
EpsilonSweep EpsilonGridSearch(const NetworkParams& params, const Matrix& holdout_in,
                               const Matrix& holdout_out, std::span<const double> grid,
                               ScorerKind kind, const PerturbConfig& base = {});

}  // namespace confnet

#endif  // CONFNET_SCORERS_HPP_
