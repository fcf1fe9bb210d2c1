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

// Contextual bandit with a softmax-linear policy and a REINFORCE update.
// Small enough that every quantity has a closed form, which is what lets
// the live pipeline make exact correctness claims.

#ifndef ASYNCRL_TOYRL_HPP_
#define ASYNCRL_TOYRL_HPP_

#include <span>
#include <vector>

#include "asyncrl/rng.hpp"

namespace asyncrl::toyrl {

struct BanditEnv {
  int n_contexts = 0;
  int context_dim = 0;
  int n_arms = 0;
  int episode_length = 1;
  std::vector<std::vector<double>> contexts;  // unit vectors
  std::vector<int> optimal_arm;

  // Context i is the i-th basis vector of R^n_contexts.
  static BanditEnv one_hot(int n_contexts, int n_arms,
                           std::vector<int> optimal_arm, int episode_length);

  double reward(int context, int arm) const {
    return optimal_arm[context] == arm ? 1.0 : 0.0;
  }
};

// K x d weight matrix, row-major.
struct LinearPolicy {
  int n_arms = 0;
  int dim = 0;
  std::vector<double> weights;

  static LinearPolicy zeros(int n_arms, int dim);

  double& at(int arm, int col) { return weights[arm * dim + col]; }
  double at(int arm, int col) const { return weights[arm * dim + col]; }
};

using Gradient = LinearPolicy;

struct Sample {
  std::vector<double> context;
  int action = 0;
  double reward = 0.0;
  double log_prob = 0.0;
};

struct Action {
  int arm = 0;
  double log_prob = 0.0;
};

std::vector<double> action_probabilities(const LinearPolicy& policy,
                                         std::span<const double> x);

// One uniform draw per call.
Action policy_act(const LinearPolicy& policy, std::span<const double> x,
                  RngStream& rng);

// Sum over samples of r * grad_W log softmax(W x)[a], accumulated in input
// order. Throws DimensionMismatch / EmptyBatch.
Gradient compute_gradient(std::span<const Sample> batch,
                          const LinearPolicy& policy);

// Elementwise sum a + b in a fixed order.
void accumulate(Gradient& into, const Gradient& g);

// W + lr * G / batch_size.
LinearPolicy apply_update(const LinearPolicy& policy, const Gradient& grad,
                          double learning_rate, int batch_size);

// Mean over contexts of the probability mass on the optimal arm.
double success_rate(const LinearPolicy& policy, const BanditEnv& env);

}  // namespace asyncrl::toyrl

#endif  // ASYNCRL_TOYRL_HPP_
