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

#ifndef CONFNET_TRAINER_HPP_
#define CONFNET_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "confnet/dataset.hpp"
#include "confnet/network.hpp"

namespace confnet {

// Defaults reproduce the 2D XOR setup: 3x100 trunk, 100-unit branches,
// batches of 10 for 30 epochs, budget 0.3.
struct TrainConfig {
  std::size_t epochs = 30;
  std::size_t batch_size = 10;
  double learning_rate = 0.001;
  double momentum = 0.9;
  double beta = 0.3;
  double lambda_init = 0.1;
  double adjust_factor = 1.01;
  double hint_probability = 0.5;
  std::uint64_t seed = 0;
  std::vector<std::size_t> trunk_widths = {100, 100, 100};
  std::size_t head_width = 100;

  void Validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double task_loss = 0.0;
  double confidence_loss = 0.0;
  double lambda = 0.0;  // value after the epoch's last update
  double train_accuracy = 0.0;
};

using TrainHistory = std::vector<EpochRecord>;

struct TrainResult {
  NetworkParams params;
  TrainHistory history;
};

struct EvalRecord {
  std::size_t predicted = 0;
  bool correct = false;
  double confidence = 0.0;
  double max_softmax = 0.0;
};

struct EvalResult {
  std::vector<EvalRecord> records;
  double accuracy = 0.0;
};

// Deterministic for a fixed (config, dataset). Per batch: forward, hint mask,
// loss gradients, backward, Nesterov step, lambda update.
TrainResult Train(const TrainConfig& config, const LabeledDataset& data);

// Prediction is the argmax of p with ties going to the lowest class index.
EvalResult Evaluate(const NetworkParams& params, const LabeledDataset& data);

std::size_t ArgMax(const Vector& v);

inline constexpr const char* kModelFormatVersion = "1";

std::string ModelToJson(const NetworkParams& params);
NetworkParams ModelFromJson(const std::string& text);
void SaveModel(const NetworkParams& params, const std::filesystem::path& path);
NetworkParams LoadModel(const std::filesystem::path& path);

// Header: epoch,task_loss,confidence_loss,lambda,train_accuracy
void SaveHistoryCsv(const TrainHistory& history, const std::filesystem::path& path);

}  // namespace confnet

#endif  // CONFNET_TRAINER_HPP_
