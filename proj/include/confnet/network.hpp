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

// Two-headed feedforward network.
//
// A shared ReLU trunk feeds two parallel branches: a classification branch
// producing M logits (softmax -> p) and a confidence branch producing one
// logit (sigmoid -> c). Each branch has one ReLU hidden layer followed by a
// linear output layer. Gradients are computed by hand-written reverse mode,
// with respect to both the parameters and the input.

#ifndef CONFNET_NETWORK_HPP_
#define CONFNET_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace confnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct NetworkSpec {
  std::size_t input_dim = 2;
  std::vector<std::size_t> trunk_widths = {100, 100, 100};
  std::size_t head_width = 100;
  std::size_t num_classes = 2;

  // Throws InvalidArgument on a zero dimension or num_classes < 2.
  void Validate() const;

  bool operator==(const NetworkSpec&) const = default;
};

// One affine layer: out = weights * in + bias. weights is (out x in).
struct Layer {
  Matrix weights;
  Vector bias;

  std::size_t in_dim() const { return static_cast<std::size_t>(weights.cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(weights.rows()); }
  std::size_t size() const { return weights.size() + bias.size(); }
};

// Layer layout, in order:
//   trunk_0 .. trunk_{k-1}, class_hidden, class_out, conf_hidden, conf_out
// ParamGrads and optimizer velocities share this layout.
struct NetworkParams {
  NetworkSpec spec;
  std::vector<Layer> layers;

  std::size_t num_trunk() const { return spec.trunk_widths.size(); }
  std::size_t class_hidden_index() const { return num_trunk(); }
  std::size_t class_out_index() const { return num_trunk() + 1; }
  std::size_t conf_hidden_index() const { return num_trunk() + 2; }
  std::size_t conf_out_index() const { return num_trunk() + 3; }

  std::size_t ParameterCount() const;

  // Throws ModelShapeError when the layers disagree with spec, and
  // NumericError when any entry is non-finite.
  void CheckConsistent() const;
};

using ParamGrads = std::vector<Layer>;

// Stable name of layer `index`, e.g. "trunk1" or "conf_out".
std::string LayerName(const NetworkParams& params, std::size_t index);

// Zero-filled buffers matching the parameter layout.
ParamGrads ZeroLike(const NetworkParams& params);

struct PredictionOutput {
  Vector p;  // softmax over class_logits
  double c = 0.5;
  Vector class_logits;
  double conf_logit = 0.0;
};

struct ForwardTrace {
  Vector input;
  // pre[i] / post[i] belong to layers[i]. For output layers post == pre.
  std::vector<Vector> pre;
  std::vector<Vector> post;
  Vector class_logits;
  double conf_logit = 0.0;
};

struct BackwardResult {
  ParamGrads param_grads;
  Vector input_grad;
};

struct OptimizerState {
  double learning_rate = 0.1;
  double momentum = 0.9;
  ParamGrads velocity;
};

// He-normal weights (stddev sqrt(2 / fan_in)), zero biases.
NetworkParams InitNetwork(const NetworkSpec& spec, std::uint64_t seed);

// All-zero weights and biases.
NetworkParams ZeroNetwork(const NetworkSpec& spec);

Vector Softmax(const Vector& logits);
double Sigmoid(double z);

PredictionOutput Forward(const NetworkParams& params, const Vector& x,
                         ForwardTrace* trace = nullptr);

// Gradients of a scalar objective whose derivatives with respect to the class
// logits and the confidence logit are supplied.
BackwardResult Backward(const NetworkParams& params, const ForwardTrace& trace,
                        const Vector& grad_class_logits, double grad_conf_logit);

OptimizerState MakeOptimizer(const NetworkParams& params, double learning_rate,
                             double momentum);

// Nesterov momentum in the folded form:
//   v <- mu * v - lr * g
//   theta <- theta + mu * v - lr * g
// All gradients are checked for finiteness before anything is modified.
void SgdStep(NetworkParams& params, const ParamGrads& grads, OptimizerState& opt);

}  // namespace confnet

#endif  // CONFNET_NETWORK_HPP_
