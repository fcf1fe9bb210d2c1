// Copyright 2026 The asyncrl Authors
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

#include "asyncrl/toyrl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asyncrl/error.hpp"

namespace asyncrl::toyrl {

namespace {

void check_dims(const LinearPolicy& policy, std::span<const double> x) {
  if (static_cast<int>(x.size()) != policy.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "context has dimension " + std::to_string(x.size()) +
                    ", policy expects " + std::to_string(policy.dim));
  }
}

}  // namespace

BanditEnv BanditEnv::one_hot(int n_contexts, int n_arms,
                             std::vector<int> optimal_arm,
                             int episode_length) {
  if (n_contexts < 1 || n_arms < 1 || episode_length < 1 ||
      static_cast<int>(optimal_arm.size()) != n_contexts) {
    throw Error(ErrorCode::kInvalidArgument, "invalid bandit shape");
  }
  for (int a : optimal_arm) {
    if (a < 0 || a >= n_arms) {
      throw Error(ErrorCode::kInvalidArgument, "optimal arm out of range");
    }
  }
  BanditEnv env;
  env.n_contexts = n_contexts;
  env.context_dim = n_contexts;
  env.n_arms = n_arms;
  env.episode_length = episode_length;
  env.optimal_arm = std::move(optimal_arm);
  for (int i = 0; i < n_contexts; ++i) {
    std::vector<double> e(n_contexts, 0.0);
    e[i] = 1.0;
    env.contexts.push_back(std::move(e));
  }
  return env;
}

LinearPolicy LinearPolicy::zeros(int n_arms, int dim) {
  return LinearPolicy{n_arms, dim,
                      std::vector<double>(static_cast<std::size_t>(n_arms) * dim, 0.0)};
}

std::vector<double> action_probabilities(const LinearPolicy& policy,
                                         std::span<const double> x) {
  check_dims(policy, x);
  std::vector<double> logits(policy.n_arms, 0.0);
  for (int k = 0; k < policy.n_arms; ++k) {
    double z = 0.0;
    for (int j = 0; j < policy.dim; ++j) z += policy.at(k, j) * x[j];
    logits[k] = z;
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double norm = 0.0;
  for (double& z : logits) {
    z = std::exp(z - top);
    norm += z;
  }
  for (double& z : logits) z /= norm;
  return logits;
}

Action policy_act(const LinearPolicy& policy, std::span<const double> x,
                  RngStream& rng) {
  const auto probs = action_probabilities(policy, x);
  const double u = rng.uniform();
  double cum = 0.0;
  int arm = policy.n_arms - 1;
  for (int k = 0; k < policy.n_arms; ++k) {
    cum += probs[k];
    if (u < cum) {
      arm = k;
      break;
    }
  }
  return Action{arm, std::log(probs[arm])};
}

Gradient compute_gradient(std::span<const Sample> batch,
                          const LinearPolicy& policy) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "compute_gradient on empty batch");
  }
  Gradient g = LinearPolicy::zeros(policy.n_arms, policy.dim);
  for (const Sample& s : batch) {
    check_dims(policy, s.context);
    if (s.action < 0 || s.action >= policy.n_arms) {
      throw Error(ErrorCode::kDimensionMismatch, "action index out of range");
    }
    if (s.reward == 0.0) continue;
    const auto probs = action_probabilities(policy, s.context);
    for (int k = 0; k < policy.n_arms; ++k) {
      const double coeff = s.reward * ((k == s.action ? 1.0 : 0.0) - probs[k]);
      for (int j = 0; j < policy.dim; ++j) g.at(k, j) += coeff * s.context[j];
    }
  }
  return g;
}

void accumulate(Gradient& into, const Gradient& g) {
  if (into.weights.size() != g.weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient shapes differ");
  }
  for (std::size_t i = 0; i < g.weights.size(); ++i) into.weights[i] += g.weights[i];
}

LinearPolicy apply_update(const LinearPolicy& policy, const Gradient& grad,
                          double learning_rate, int batch_size) {
  if (grad.weights.size() != policy.weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "gradient/policy shapes differ");
  }
  if (!(learning_rate > 0.0) || batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "apply_update needs learning_rate > 0 and batch_size >= 1");
  }
  LinearPolicy out = policy;
  const double scale = learning_rate / batch_size;
  for (std::size_t i = 0; i < out.weights.size(); ++i) {
    out.weights[i] += scale * grad.weights[i];
  }
  return out;
}

double success_rate(const LinearPolicy& policy, const BanditEnv& env) {
  double total = 0.0;
  for (int c = 0; c < env.n_contexts; ++c) {
    total += action_probabilities(policy, env.contexts[c])[env.optimal_arm[c]];
  }
  return total / env.n_contexts;
}

}  // namespace asyncrl::toyrl
