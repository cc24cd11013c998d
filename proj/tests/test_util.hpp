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

// Shared test helpers: random tiny networks, a loop-based reference forward
// pass and loss that do not touch the library's forward/backward code, and a
// central finite-difference gradient checker built on them.

#ifndef CONFNET_TESTS_TEST_UTIL_HPP_
#define CONFNET_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "confnet/network.hpp"
#include "confnet/objective.hpp"

namespace confnet::testing {

inline std::size_t UniformSize(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// dims <= 5, M <= 4, trunk depth 0..2, random (nonzero) biases.
inline NetworkParams RandomTinyNetwork(std::mt19937_64& rng) {
  NetworkSpec spec;
  spec.input_dim = UniformSize(rng, 1, 5);
  spec.trunk_widths.assign(UniformSize(rng, 0, 2), 0);
  for (auto& w : spec.trunk_widths) w = UniformSize(rng, 1, 5);
  spec.head_width = UniformSize(rng, 1, 5);
  spec.num_classes = UniformSize(rng, 2, 4);
  NetworkParams params = InitNetwork(spec, rng());
  std::normal_distribution<double> bias(0.0, 0.5);
  for (Layer& layer : params.layers) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = bias(rng);
  }
  return params;
}

inline Vector RandomVector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dist(rng);
  return v;
}

struct RefOutput {
  std::vector<double> p;
  double c = 0.0;
  std::vector<bool> active;  // sign pattern of every hidden pre-activation
};

inline std::vector<double> RefAffine(const Layer& layer, const std::vector<double>& in) {
  std::vector<double> out(layer.out_dim());
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = layer.bias(static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < in.size(); ++k) {
      acc += layer.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) * in[k];
    }
    out[r] = acc;
  }
  return out;
}

inline std::vector<double> RefRelu(std::vector<double> v, std::vector<bool>& active) {
  for (double& e : v) {
    active.push_back(e > 0.0);
    e = std::max(e, 0.0);
  }
  return v;
}

inline RefOutput RefForward(const NetworkParams& params, const Vector& x) {
  RefOutput out;
  std::vector<double> h(x.data(), x.data() + x.size());
  for (std::size_t i = 0; i < params.num_trunk(); ++i) {
    h = RefRelu(RefAffine(params.layers[i], h), out.active);
  }
  const auto class_hidden = RefRelu(RefAffine(params.layers[params.class_hidden_index()], h), out.active);
  const auto logits = RefAffine(params.layers[params.class_out_index()], class_hidden);
  const auto conf_hidden = RefRelu(RefAffine(params.layers[params.conf_hidden_index()], h), out.active);
  const double conf_logit = RefAffine(params.layers[params.conf_out_index()], conf_hidden)[0];

  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double z : logits) {
    out.p.push_back(std::exp(z - top));
    total += out.p.back();
  }
  for (double& e : out.p) e /= total;
  out.c = 1.0 / (1.0 + std::exp(-conf_logit));
  return out;
}

struct Batch {
  std::vector<Vector> x;
  std::vector<std::size_t> labels;
  HintMask mask;
  double lambda = 0.1;
};

inline Batch RandomBatch(std::mt19937_64& rng, const NetworkSpec& spec) {
  Batch b;
  const std::size_t n = UniformSize(rng, 1, 4);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    b.x.push_back(RandomVector(rng, spec.input_dim));
    b.labels.push_back(UniformSize(rng, 0, spec.num_classes - 1));
    b.mask.push_back(coin(rng));
  }
  b.lambda = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
  return b;
}

// Mean over the batch of -log p'_y - lambda * log c, written out directly.
inline double RefBatchLoss(const NetworkParams& params, const Batch& b,
                           std::vector<bool>* pattern = nullptr) {
  double total = 0.0;
  for (std::size_t i = 0; i < b.x.size(); ++i) {
    const RefOutput out = RefForward(params, b.x[i]);
    if (pattern != nullptr) pattern->insert(pattern->end(), out.active.begin(), out.active.end());
    const double pk = out.p[b.labels[i]];
    const double p_prime = b.mask[i] ? out.c * pk + (1.0 - out.c) : pk;
    total += -std::log(std::max(p_prime, 1e-12)) - b.lambda * std::log(std::max(out.c, 1e-12));
  }
  return total / static_cast<double>(b.x.size());
}

struct AnalyticGradients {
  ParamGrads params;
  std::vector<Vector> inputs;
};

// Library path: forward, objective gradients, backward, batch mean.
inline AnalyticGradients LibraryGradients(const NetworkParams& params, const Batch& b) {
  std::vector<PredictionOutput> outs;
  std::vector<ForwardTrace> traces(b.x.size());
  std::vector<Vector> targets;
  for (std::size_t i = 0; i < b.x.size(); ++i) {
    outs.push_back(Forward(params, b.x[i], &traces[i]));
    targets.push_back(OneHot(b.labels[i], params.spec.num_classes));
  }
  const BatchGradients g = BatchLossAndGrads(outs, targets, b.mask, b.lambda);
  const double scale = 1.0 / static_cast<double>(b.x.size());
  AnalyticGradients result{ZeroLike(params), {}};
  for (std::size_t i = 0; i < b.x.size(); ++i) {
    const BackwardResult br = Backward(params, traces[i], g.grad_class_logits[i], g.grad_conf_logit[i]);
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
      result.params[l].weights += scale * br.param_grads[l].weights;
      result.params[l].bias += scale * br.param_grads[l].bias;
    }
    result.inputs.push_back(scale * br.input_grad);
  }
  return result;
}

inline constexpr double kFdStep = 1e-6;
// Denominator floor for relative error; central differences at h = 1e-6 carry
// roughly 1e-10 absolute rounding noise.
inline constexpr double kRelErrorFloor = 1e-4;

inline double RelativeError(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), kRelErrorFloor});
}

struct GradCheck {
  double max_param_error = 0.0;
  double max_input_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // coordinates whose +-h step crosses a ReLU kink
};

inline GradCheck CheckGradients(const NetworkParams& params, const Batch& batch) {
  GradCheck check;
  const AnalyticGradients analytic = LibraryGradients(params, batch);
  std::vector<bool> base_pattern;
  RefBatchLoss(params, batch, &base_pattern);

  // `bump(sign)` perturbs one coordinate and returns the loss.
  auto central = [&](auto&& bump, double& numeric) {
    std::vector<bool> up_pattern, down_pattern;
    const double up = bump(+kFdStep, &up_pattern);
    const double down = bump(-kFdStep, &down_pattern);
    if (up_pattern != base_pattern || down_pattern != base_pattern) {
      ++check.skipped;
      return false;
    }
    numeric = (up - down) / (2.0 * kFdStep);
    ++check.checked;
    return true;
  };

  NetworkParams work = params;
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    for (int part = 0; part < 2; ++part) {
      const Eigen::Index count = part == 0 ? params.layers[l].weights.size() : params.layers[l].bias.size();
      for (Eigen::Index k = 0; k < count; ++k) {
        double& slot = part == 0 ? work.layers[l].weights.data()[k] : work.layers[l].bias.data()[k];
        const double original = slot;
        double numeric = 0.0;
        const bool ok = central(
            [&](double h, std::vector<bool>* pattern) {
              slot = original + h;
              const double loss = RefBatchLoss(work, batch, pattern);
              slot = original;
              return loss;
            },
            numeric);
        if (!ok) continue;
        const double a = part == 0 ? analytic.params[l].weights.data()[k] : analytic.params[l].bias.data()[k];
        check.max_param_error = std::max(check.max_param_error, RelativeError(a, numeric));
      }
    }
  }

  Batch moved = batch;
  for (std::size_t i = 0; i < batch.x.size(); ++i) {
    for (Eigen::Index j = 0; j < batch.x[i].size(); ++j) {
      double numeric = 0.0;
      const bool ok = central(
          [&](double h, std::vector<bool>* pattern) {
            moved.x[i](j) = batch.x[i](j) + h;
            const double loss = RefBatchLoss(params, moved, pattern);
            moved.x[i](j) = batch.x[i](j);
            return loss;
          },
          numeric);
      if (!ok) continue;
      check.max_input_error = std::max(check.max_input_error, RelativeError(analytic.inputs[i](j), numeric));
    }
  }
  return check;
}

}  // namespace confnet::testing

#endif  // CONFNET_TESTS_TEST_UTIL_HPP_
