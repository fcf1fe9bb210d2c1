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

#ifndef ASYNCRL_PIPELINE_ENV_WORKER_HPP_
#define ASYNCRL_PIPELINE_ENV_WORKER_HPP_

#include <variant>

#include "asyncrl/pipeline/types.hpp"
#include "asyncrl/rng.hpp"

namespace asyncrl {

struct TrajectoryCompletion {
  Trajectory trajectory;
};

using EnvOutcome = std::variant<InferenceRequest, TrajectoryCompletion>;

// One environment instance. An episode is a sequence of
//   request -> action chunk -> chunk_size env steps -> request ...
// and completes once episode_length steps have been executed. The reset
// observation is free, so an episode issues ceil(episode_length /
// chunk_size) inference requests.
class EnvWorker {
 public:
  EnvWorker(int env_id, int episode_length, int chunk_size);

  // Starts an episode pinned to `version` and returns the reset request.
  InferenceRequest begin_episode(std::int64_t episode, PolicyVersion version,
                                 TimeMs now);

  // Executes the action chunk answering the outstanding request; the
  // chunk finishes at `finish`. Throws StepAfterDone outside an episode.
  EnvOutcome finish_chunk(const StepRecord& action, TimeMs finish);

  bool in_episode() const { return in_episode_; }
  int env_id() const { return env_id_; }
  int steps_taken() const { return steps_; }
  int chunks_per_episode() const;
  std::int64_t episodes_completed() const { return episodes_completed_; }
  PolicyVersion pinned_version() const { return current_.policy_version; }

 private:
  int env_id_;
  int episode_length_;
  int chunk_size_;
  bool in_episode_ = false;
  int steps_ = 0;
  std::int64_t episodes_completed_ = 0;
  Trajectory current_;
};

// Samples the duration of one chunk for an env stepping on its own (CPU)
// and applies it. Returns the outcome together with the sampled duration.
struct EnvStepResult {
  EnvOutcome outcome;
  DurationMs duration;
};

EnvStepResult env_worker_step(EnvWorker& env, const StepRecord& action,
                              const WorkloadSpec& workload, RngStream& rng,
                              TimeMs now);

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_ENV_WORKER_HPP_
