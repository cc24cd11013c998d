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

#include "confnet/network.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "confnet/errors.hpp"

namespace confnet {
namespace {

Layer MakeLayer(std::size_t in, std::size_t out) {
  return Layer{Matrix::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
               Vector::Zero(static_cast<Eigen::Index>(out))};
}

// (in, out) for every layer in canonical order.
std::vector<std::pair<std::size_t, std::size_t>> LayerShapes(const NetworkSpec& spec) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  std::size_t in = spec.input_dim;
  for (std::size_t w : spec.trunk_widths) {
    shapes.emplace_back(in, w);
    in = w;
  }
  shapes.emplace_back(in, spec.head_width);
  shapes.emplace_back(spec.head_width, spec.num_classes);
  shapes.emplace_back(in, spec.head_width);
  shapes.emplace_back(spec.head_width, 1);
  return shapes;
}

Vector Relu(const Vector& v) { return v.cwiseMax(0.0); }

// ReLU derivative, with the subgradient at 0 taken as 0.
Vector ReluMask(const Vector& pre) {
  return (pre.array() > 0.0).cast<double>().matrix();
}

bool AllFinite(const Layer& layer) {
  return layer.weights.allFinite() && layer.bias.allFinite();
}

}  // namespace

void NetworkSpec::Validate() const {
  if (input_dim == 0) throw InvalidArgument("network spec: input_dim must be >= 1");
  if (head_width == 0) throw InvalidArgument("network spec: head_width must be >= 1");
  if (num_classes < 2) throw InvalidArgument("network spec: num_classes must be >= 2");
  for (std::size_t i = 0; i < trunk_widths.size(); ++i) {
    if (trunk_widths[i] == 0) {
      throw InvalidArgument("network spec: trunk width " + std::to_string(i) +
                            " must be >= 1");
    }
  }
}

std::size_t NetworkParams::ParameterCount() const {
  std::size_t total = 0;
  for (const Layer& layer : layers) total += layer.size();
  return total;
}

void NetworkParams::CheckConsistent() const {
  const auto shapes = LayerShapes(spec);
  if (shapes.size() != layers.size()) {
    throw ModelShapeError("expected " + std::to_string(shapes.size()) + " layers, got " +
                          std::to_string(layers.size()));
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Layer& layer = layers[i];
    const auto [in, out] = shapes[i];
    if (layer.in_dim() != in || layer.out_dim() != out ||
        static_cast<std::size_t>(layer.bias.size()) != out) {
      std::ostringstream msg;
      msg << "layer " << LayerName(*this, i) << ": expected " << out << "x" << in
          << ", got " << layer.out_dim() << "x" << layer.in_dim() << " with bias "
          << layer.bias.size();
      throw ModelShapeError(msg.str());
    }
    if (!AllFinite(layer)) {
      throw NumericError("layer " + LayerName(*this, i) + " has non-finite entries");
    }
  }
}

std::string LayerName(const NetworkParams& params, std::size_t index) {
  const std::size_t k = params.num_trunk();
  if (index < k) return "trunk" + std::to_string(index);
  switch (index - k) {
    case 0: return "class_hidden";
    case 1: return "class_out";
    case 2: return "conf_hidden";
    case 3: return "conf_out";
    default: return "layer" + std::to_string(index);
  }
}

ParamGrads ZeroLike(const NetworkParams& params) {
  ParamGrads out;
  out.reserve(params.layers.size());
  for (const Layer& layer : params.layers) out.push_back(MakeLayer(layer.in_dim(), layer.out_dim()));
  return out;
}

NetworkParams ZeroNetwork(const NetworkSpec& spec) {
  spec.Validate();
  NetworkParams params{spec, {}};
  for (const auto& [in, out] : LayerShapes(spec)) params.layers.push_back(MakeLayer(in, out));
  return params;
}

NetworkParams InitNetwork(const NetworkSpec& spec, std::uint64_t seed) {
  NetworkParams params = ZeroNetwork(spec);
  std::mt19937_64 rng(seed);
  for (Layer& layer : params.layers) {
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(layer.in_dim())));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) layer.weights(r, c) = dist(rng);
    }
  }
  return params;
}

Vector Softmax(const Vector& logits) {
  const double shift = logits.maxCoeff();
  Vector e = (logits.array() - shift).exp().matrix();
  return e / e.sum();
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

PredictionOutput Forward(const NetworkParams& params, const Vector& x, ForwardTrace* trace) {
  if (static_cast<std::size_t>(x.size()) != params.spec.input_dim) {
    throw InvalidArgument("forward: input has " + std::to_string(x.size()) +
                          " features, network expects " +
                          std::to_string(params.spec.input_dim));
  }
  if (!x.allFinite()) throw NumericError("forward: non-finite input");

  const std::size_t n = params.layers.size();
  std::vector<Vector> pre(n), post(n);
  const Vector* h = &x;
  for (std::size_t i = 0; i < params.num_trunk(); ++i) {
    pre[i] = params.layers[i].weights * *h + params.layers[i].bias;
    post[i] = Relu(pre[i]);
    h = &post[i];
  }
  const Vector& features = *h;

  const std::size_t ch = params.class_hidden_index();
  const std::size_t co = params.class_out_index();
  pre[ch] = params.layers[ch].weights * features + params.layers[ch].bias;
  post[ch] = Relu(pre[ch]);
  pre[co] = params.layers[co].weights * post[ch] + params.layers[co].bias;
  post[co] = pre[co];

  const std::size_t fh = params.conf_hidden_index();
  const std::size_t fo = params.conf_out_index();
  pre[fh] = params.layers[fh].weights * features + params.layers[fh].bias;
  post[fh] = Relu(pre[fh]);
  pre[fo] = params.layers[fo].weights * post[fh] + params.layers[fo].bias;
  post[fo] = pre[fo];

  PredictionOutput out;
  out.class_logits = pre[co];
  out.conf_logit = pre[fo](0);
  out.p = Softmax(out.class_logits);
  out.c = Sigmoid(out.conf_logit);
  if (!out.p.allFinite() || !std::isfinite(out.c)) {
    throw NumericError("forward: non-finite output (parameters overflowed?)");
  }

  if (trace != nullptr) {
    trace->input = x;
    trace->class_logits = out.class_logits;
    trace->conf_logit = out.conf_logit;
    trace->pre = std::move(pre);
    trace->post = std::move(post);
  }
  return out;
}

BackwardResult Backward(const NetworkParams& params, const ForwardTrace& trace,
                        const Vector& grad_class_logits, double grad_conf_logit) {
  const std::size_t n = params.layers.size();
  if (static_cast<std::size_t>(grad_class_logits.size()) != params.spec.num_classes) {
    throw InvalidArgument("backward: class-logit gradient has " +
                          std::to_string(grad_class_logits.size()) + " entries, expected " +
                          std::to_string(params.spec.num_classes));
  }
  if (trace.pre.size() != n || trace.post.size() != n) {
    throw InvalidArgument("backward: trace does not match network layout");
  }

  BackwardResult result{ZeroLike(params), Vector()};
  ParamGrads& g = result.param_grads;
  const std::size_t k = params.num_trunk();
  const Vector& features = k == 0 ? trace.input : trace.post[k - 1];

  // Classification branch.
  const std::size_t ch = params.class_hidden_index();
  const std::size_t co = params.class_out_index();
  g[co].weights = grad_class_logits * trace.post[ch].transpose();
  g[co].bias = grad_class_logits;
  Vector delta = (params.layers[co].weights.transpose() * grad_class_logits)
                     .cwiseProduct(ReluMask(trace.pre[ch]));
  g[ch].weights = delta * features.transpose();
  g[ch].bias = delta;
  Vector grad_features = params.layers[ch].weights.transpose() * delta;

  // Confidence branch.
  const std::size_t fh = params.conf_hidden_index();
  const std::size_t fo = params.conf_out_index();
  Vector upstream = Vector::Constant(1, grad_conf_logit);
  g[fo].weights = upstream * trace.post[fh].transpose();
  g[fo].bias = upstream;
  delta = (params.layers[fo].weights.transpose() * upstream).cwiseProduct(ReluMask(trace.pre[fh]));
  g[fh].weights = delta * features.transpose();
  g[fh].bias = delta;
  grad_features += params.layers[fh].weights.transpose() * delta;

  // Shared trunk.
  for (std::size_t i = k; i-- > 0;) {
    delta = grad_features.cwiseProduct(ReluMask(trace.pre[i]));
    const Vector& below = i == 0 ? trace.input : trace.post[i - 1];
    g[i].weights = delta * below.transpose();
    g[i].bias = delta;
    grad_features = params.layers[i].weights.transpose() * delta;
  }
  result.input_grad = std::move(grad_features);
  return result;
}

OptimizerState MakeOptimizer(const NetworkParams& params, double learning_rate,
                             double momentum) {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("optimizer: learning rate must be finite and >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw InvalidArgument("optimizer: momentum must lie in [0, 1)");
  }
  return OptimizerState{learning_rate, momentum, ZeroLike(params)};
}

void SgdStep(NetworkParams& params, const ParamGrads& grads, OptimizerState& opt) {
  const std::size_t n = params.layers.size();
  if (grads.size() != n || opt.velocity.size() != n) {
    throw InvalidArgument("sgd_step: gradient/velocity layout does not match parameters");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Layer& p = params.layers[i];
    for (const Layer* other : {&grads[i], static_cast<const Layer*>(&opt.velocity[i])}) {
      if (other->weights.rows() != p.weights.rows() || other->weights.cols() != p.weights.cols() ||
          other->bias.size() != p.bias.size()) {
        throw InvalidArgument("sgd_step: shape mismatch in layer " + LayerName(params, i));
      }
    }
    if (!AllFinite(grads[i])) {
      throw NumericError("sgd_step: non-finite gradient in layer " + LayerName(params, i));
    }
  }

  const double mu = opt.momentum;
  const double lr = opt.learning_rate;
  for (std::size_t i = 0; i < n; ++i) {
    Layer& p = params.layers[i];
    Layer& v = opt.velocity[i];
    const Layer& g = grads[i];
    v.weights = mu * v.weights - lr * g.weights;
    v.bias = mu * v.bias - lr * g.bias;
    p.weights += mu * v.weights - lr * g.weights;
    p.bias += mu * v.bias - lr * g.bias;
  }
}

}  // namespace confnet
