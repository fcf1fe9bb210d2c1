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

#ifndef ASYNCRL_PIPELINE_TYPES_HPP_
#define ASYNCRL_PIPELINE_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "asyncrl/workload.hpp"

namespace asyncrl {

using PolicyVersion = std::int64_t;

inline constexpr double kNoTimeout = std::numeric_limits<double>::infinity();

struct BatchTriggerConfig {
  int b_max = 1;
  DurationMs t_max = 0.0;  // +inf disables the time branch

  bool operator==(const BatchTriggerConfig&) const = default;
};

struct StreamerConfig {
  bool enabled = false;
  int micro_batch_size = 1;   // samples
  int global_batch_size = 1;  // samples

  bool operator==(const StreamerConfig&) const = default;
};

struct PipelineConfig {
  bool train_async = false;
  bool rollout_async = false;
  StreamerConfig streamer;
  BatchTriggerConfig trigger;
  int max_staleness = 1;
  int n_env = 1;
  int n_rollout_epochs = 1;
  int episode_length = 1;  // N_es, env steps per episode
  int chunk_size = 1;      // env steps per inference call
  std::optional<int> queue_capacity;  // nullopt: unbounded
  bool mid_episode_adoption = false;
  DurationMs context_switch = 0.0;  // colocated phase switch cost
  DurationMs starvation_timeout = 1e7;
  int devices_per_node = 8;

  bool operator==(const PipelineConfig&) const = default;
};

// Checks field ranges and the config/plan pairing (train_async needs a
// disaggregated plan). Throws InvalidArgument / InconsistentConfig.
void validate_pipeline(const PipelineConfig& config, const PlacementPlan& plan);

// Inference calls per episode; also the number of training samples one
// trajectory contributes.
int samples_per_trajectory(const PipelineConfig& config);

// Global batch expressed in trajectories (rounded up).
int trajectories_per_round(const PipelineConfig& config);

std::int64_t total_trajectories(const PipelineConfig& config);

// Staleness actually enforced by admission: synchronous schedules are
// strictly on-policy.
int effective_staleness(const PipelineConfig& config);

struct InferenceRequest {
  int env_id = 0;
  std::int64_t episode = 0;
  int chunk = 0;               // index of the chunk this request asks for
  PolicyVersion version = 0;   // version pinned by the episode
  TimeMs enqueue_time = 0.0;
  int context = -1;            // toy learner context (live mode)
};

struct StepRecord {
  int context = -1;
  int action = 0;
  double reward = 0.0;
  double log_prob = 0.0;
  PolicyVersion version = 0;
};

struct Trajectory {
  int env_id = 0;
  std::int64_t episode = 0;
  PolicyVersion policy_version = 0;  // oldest version used in the episode
  PolicyVersion newest_version = 0;
  int n_steps = 0;
  int n_chunks = 0;
  std::vector<StepRecord> records;  // empty in virtual mode
  TimeMs created_at = 0.0;
};

struct PolicySnapshot {
  PolicyVersion version = 0;
  std::shared_ptr<const std::vector<double>> weights;  // null in virtual mode
};

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_TYPES_HPP_
