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

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "confnet/dataset.hpp"
#include "confnet/errors.hpp"
#include "confnet/io_util.hpp"
#include "confnet/objective.hpp"
#include "confnet/trainer.hpp"
#include "test_util.hpp"

namespace confnet {
namespace {

namespace fs = std::filesystem;

TrainConfig SmallConfig(std::uint64_t seed) {
  TrainConfig config;
  config.epochs = 4;
  config.trunk_widths = {8, 8};
  config.head_width = 8;
  config.seed = seed;
  return config;
}

void ExpectBitwiseEqual(const NetworkParams& a, const NetworkParams& b) {
  ASSERT_TRUE(a.spec == b.spec);
  ASSERT_EQ(a.layers.size(), b.layers.size());
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    EXPECT_EQ(a.layers[i].weights, b.layers[i].weights) << "layer " << i;
    EXPECT_EQ(a.layers[i].bias, b.layers[i].bias) << "layer " << i;
  }
}

fs::path TempPath(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "confnet_trainer_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.epochs = 0;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = TrainConfig{};
  c.hint_probability = 1.5;
  EXPECT_THROW(c.Validate(), InvalidArgument);
  c = TrainConfig{};
  c.adjust_factor = 1.0;
  EXPECT_THROW(c.Validate(), InvalidArgument);
}

TEST(TrainTest, DeterministicAcrossRuns) {
  const LabeledDataset data = GenXor(60, 0.1, 3);
  const TrainResult a = Train(SmallConfig(9), data);
  const TrainResult b = Train(SmallConfig(9), data);
  ExpectBitwiseEqual(a.params, b.params);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].task_loss, b.history[i].task_loss);
    EXPECT_EQ(a.history[i].confidence_loss, b.history[i].confidence_loss);
    EXPECT_EQ(a.history[i].lambda, b.history[i].lambda);
  }
  const TrainResult c = Train(SmallConfig(10), data);
  EXPECT_NE(a.params.layers[0].weights, c.params.layers[0].weights);
}

TEST(TrainTest, HistoryShapeAndLambdaClamp) {
  TrainConfig config = SmallConfig(1);
  config.epochs = 7;
  config.batch_size = 7;  // leaves a partial final batch
  const TrainResult r = Train(config, GenXor(45, 0.2, 4));
  ASSERT_EQ(r.history.size(), 7u);
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    EXPECT_EQ(r.history[i].epoch, i + 1);
    EXPECT_GE(r.history[i].lambda, kLambdaMin);
    EXPECT_LE(r.history[i].lambda, kLambdaMax);
    EXPECT_GE(r.history[i].train_accuracy, 0.0);
    EXPECT_LE(r.history[i].train_accuracy, 1.0);
  }
}

TEST(TrainTest, LearnsNoiselessXorWithSmallNetwork) {
  TrainConfig config;
  config.epochs = 30;
  config.trunk_widths = {32, 32};
  config.head_width = 32;
  config.learning_rate = 0.01;
  config.seed = 2;
  const TrainResult r = Train(config, GenXor(300, 0.0, 5));
  EXPECT_GE(r.history.back().train_accuracy, 0.9);
  EXPECT_LT(r.history.back().task_loss, r.history.front().task_loss);
}

TEST(TrainTest, RejectsBadData) {
  LabeledDataset empty;
  empty.features = Matrix(0, 2);
  EXPECT_THROW(Train(SmallConfig(1), empty), DataError);
  LabeledDataset bad = GenXor(10, 0.0, 1);
  bad.labels[3] = 2;
  EXPECT_THROW(Train(SmallConfig(1), bad), DataError);
}

TEST(TrainTest, DivergenceIsNumericError) {
  TrainConfig config = SmallConfig(3);
  config.learning_rate = 1e100;
  EXPECT_THROW(Train(config, GenXor(100, 0.0, 2)), NumericError);
}

TEST(EvaluateTest, ZeroParamsPredictClassZero) {
  const NetworkParams params = ZeroNetwork(NetworkSpec{});
  const LabeledDataset data = GenXor(20, 0.0, 8);
  const EvalResult r = Evaluate(params, data);
  ASSERT_EQ(r.records.size(), 20u);
  double correct = 0.0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].predicted, 0u);
    EXPECT_EQ(r.records[i].confidence, 0.5);
    EXPECT_EQ(r.records[i].max_softmax, 0.5);
    EXPECT_EQ(r.records[i].correct, data.labels[i] == 0);
    correct += r.records[i].correct;
  }
  EXPECT_DOUBLE_EQ(r.accuracy, correct / 20.0);
}

TEST(EvaluateTest, HandBuiltXorClassifier) {
  // Class 0 logit |a + b|, class 1 logit |a - b|, built from four ReLUs.
  NetworkSpec spec;
  spec.input_dim = 2;
  spec.trunk_widths = {4};
  spec.head_width = 4;
  NetworkParams params = ZeroNetwork(spec);
  params.layers[0].weights << 1, 1, -1, -1, 1, -1, -1, 1;
  params.layers[params.class_hidden_index()].weights = Matrix::Identity(4, 4);
  params.layers[params.class_out_index()].weights << 1, 1, 0, 0, 0, 0, 1, 1;
  LabeledDataset corners;
  corners.features.resize(4, 2);
  corners.features << 1, 1, -1, 1, -1, -1, 1, -1;
  corners.labels = {0, 1, 0, 1};
  const EvalResult r = Evaluate(params, corners);
  EXPECT_EQ(r.accuracy, 1.0);
}

TEST(EvaluateTest, PureAndDoesNotMutate) {
  std::mt19937_64 rng(3);
  NetworkSpec spec;
  spec.trunk_widths = {5};
  spec.head_width = 5;
  const NetworkParams params = InitNetwork(spec, 4);
  const NetworkParams copy = params;
  LabeledDataset data = GenXor(10, 0.0, 1);
  LabeledDataset doubled = data;
  doubled.features.conservativeResize(20, 2);
  doubled.features.bottomRows(10) = data.features;
  doubled.labels.insert(doubled.labels.end(), data.labels.begin(), data.labels.end());
  const EvalResult once = Evaluate(params, data);
  const EvalResult twice = Evaluate(params, doubled);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(twice.records[i].confidence, once.records[i].confidence);
    EXPECT_EQ(twice.records[i + 10].confidence, once.records[i].confidence);
    EXPECT_EQ(twice.records[i + 10].predicted, once.records[i].predicted);
  }
  ExpectBitwiseEqual(params, copy);
}

TEST(ArgMaxTest, LowestIndexWinsTies) {
  Vector v(4);
  v << 0.3, 0.7, 0.7, 0.1;
  EXPECT_EQ(ArgMax(v), 1u);
  EXPECT_EQ(ArgMax(Vector::Constant(3, 0.2)), 0u);
}

TEST(ModelIoTest, RoundTripIsBitwise) {
  NetworkSpec spec;
  spec.trunk_widths = {3, 4};
  spec.head_width = 5;
  spec.num_classes = 3;
  NetworkParams params = InitNetwork(spec, 12);
  std::mt19937_64 rng(1);
  for (Layer& l : params.layers) l.bias = testing::RandomVector(rng, l.bias.size(), 1e-3);
  const fs::path path = TempPath("model.json");
  SaveModel(params, path);
  ExpectBitwiseEqual(LoadModel(path), params);
}

TEST(ModelIoTest, SchemaFields) {
  const NetworkParams params = InitNetwork(NetworkSpec{}, 1);
  const auto doc = nlohmann::json::parse(ModelToJson(params));
  EXPECT_EQ(doc.at("version"), "1");
  EXPECT_EQ(doc.at("spec").at("input_dim"), 2);
  EXPECT_EQ(doc.at("spec").at("trunk_widths"), nlohmann::json::array({100, 100, 100}));
  EXPECT_EQ(doc.at("spec").at("head_width"), 100);
  EXPECT_EQ(doc.at("spec").at("num_classes"), 2);
  ASSERT_EQ(doc.at("layers").size(), 7u);
  EXPECT_EQ(doc.at("layers")[0].at("name"), "trunk0");
  EXPECT_EQ(doc.at("layers")[4].at("rows"), 2);
  EXPECT_EQ(doc.at("layers")[4].at("cols"), 100);
  EXPECT_EQ(doc.at("layers")[4].at("weights").size(), 200u);
  EXPECT_EQ(doc.at("layers")[6].at("bias").size(), 1u);
}

TEST(ModelIoTest, DistinctErrors) {
  const std::string good = ModelToJson(InitNetwork(NetworkSpec{}, 1));
  auto doc = nlohmann::json::parse(good);
  doc["version"] = "2";
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelVersionError);

  doc = nlohmann::json::parse(good);
  doc.erase("version");
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelFormatError);

  EXPECT_THROW(ModelFromJson(good.substr(0, good.size() / 2)), ModelFormatError);
  EXPECT_THROW(ModelFromJson(""), ModelFormatError);

  doc = nlohmann::json::parse(good);
  doc["layers"][1]["rows"] = 99;
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelShapeError);

  doc = nlohmann::json::parse(good);
  doc["layers"][2]["bias"].erase(0);
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelShapeError);

  doc = nlohmann::json::parse(good);
  doc["layers"].erase(6);
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelShapeError);

  doc = nlohmann::json::parse(good);
  doc["spec"]["head_width"] = 50;
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelShapeError);

  doc = nlohmann::json::parse(good);
  doc["layers"][0]["weights"][0] = "x";
  EXPECT_THROW(ModelFromJson(doc.dump()), ModelFormatError);

  EXPECT_THROW(LoadModel(TempPath("does_not_exist.json")), DataError);
}

TEST(HistoryCsvTest, HeaderAndRows) {
  TrainHistory history{{1, 0.5, 0.25, 0.1, 0.75}, {2, 0.4, 0.3, 0.101, 0.8}};
  const fs::path path = TempPath("history.csv");
  SaveHistoryCsv(history, path);
  const std::string text = ReadFile(path);
  EXPECT_EQ(text.substr(0, text.find('\n')), "epoch,task_loss,confidence_loss,lambda,train_accuracy");
  EXPECT_NE(text.find("\n2,0.4,0.3,0.101,0.8\n"), std::string::npos) << text;
}

}  // namespace
}  // namespace confnet
