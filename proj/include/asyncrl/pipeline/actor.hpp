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

#ifndef ASYNCRL_PIPELINE_ACTOR_HPP_
#define ASYNCRL_PIPELINE_ACTOR_HPP_

#include <span>
#include <vector>

#include "asyncrl/pipeline/types.hpp"
#include "asyncrl/rng.hpp"
#include "asyncrl/toyrl.hpp"

namespace asyncrl {

// Shape of one update round. Micro-batches are spread over `dp_width`
// actor devices, so each data-parallel step trains up to dp_width
// micro-batches at once.
struct RoundPlan {
  int trajectories = 0;
  int samples = 0;
  int micro_batches = 0;
  int dp_width = 1;
  int dp_steps = 0;
};

RoundPlan plan_round(int trajectories, int samples_per_trajectory,
                     int micro_batch_size, int dp_width);

// Samples that must have arrived before data-parallel step `step` may
// start. Without the streamer every step waits for the whole round.
int samples_needed_for_step(const RoundPlan& plan, int step,
                            int micro_batch_size, bool streamer);

// Trajectories the actor takes for round `round` given `total` trajectories
// overall: a full global batch, or whatever remains for the last round.
int round_size(int per_round, std::int64_t total, std::int64_t round);

std::int64_t total_rounds(int per_round, std::int64_t total);

// Virtual cost of the compute part of an update: dp_steps micro-steps
// followed by one gradient aggregation.
DurationMs actor_compute_cost(const RoundPlan& plan, const WorkloadSpec& workload,
                              int micro_batch_size, RngStream& rng);

// Live-mode learner shared by the actor worker.
struct LearnerConfig {
  toyrl::BanditEnv env;
  double learning_rate = 0.5;
};

std::vector<toyrl::Sample> round_samples(std::span<const Trajectory> round,
                                         const toyrl::BanditEnv& env);

// Gradient accumulation over consecutive micro-batches of the sample
// stream, summed in arrival order. Feeding samples incrementally and
// calling finish() gives the same result as feeding them at once.
class GradientAccumulator {
 public:
  GradientAccumulator(const toyrl::LinearPolicy& policy, int micro_batch_size);

  // Returns the number of micro-batch gradients computed by this call.
  int add(std::span<const toyrl::Sample> samples);
  // Flushes a trailing partial micro-batch.
  void finish();

  const toyrl::Gradient& gradient() const { return total_; }
  int samples() const { return n_samples_; }
  int micro_steps() const { return micro_steps_; }

 private:
  void flush();

  toyrl::LinearPolicy policy_;
  int micro_;
  std::vector<toyrl::Sample> buffer_;
  toyrl::Gradient total_;
  int n_samples_ = 0;
  int micro_steps_ = 0;
};

// Applies one update round. With the streamer the gradient is accumulated
// micro-batch by micro-batch; without it the full-batch gradient is taken
// in a single pass. Throws EmptyBatch on an empty round.
PolicySnapshot actor_update(const PolicySnapshot& previous,
                            std::span<const Trajectory> round,
                            const StreamerConfig& streamer,
                            const LearnerConfig& learner);

toyrl::LinearPolicy policy_from(const PolicySnapshot& snapshot,
                                const toyrl::BanditEnv& env);

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_ACTOR_HPP_
