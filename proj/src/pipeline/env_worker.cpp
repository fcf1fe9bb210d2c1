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

#include "asyncrl/pipeline/env_worker.hpp"

#include <algorithm>
#include <string>

#include "asyncrl/error.hpp"

namespace asyncrl {

EnvWorker::EnvWorker(int env_id, int episode_length, int chunk_size)
    : env_id_(env_id), episode_length_(episode_length), chunk_size_(chunk_size) {
  if (episode_length < 1 || chunk_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "episode_length and chunk_size must be >= 1");
  }
}

int EnvWorker::chunks_per_episode() const {
  return (episode_length_ + chunk_size_ - 1) / chunk_size_;
}

InferenceRequest EnvWorker::begin_episode(std::int64_t episode,
                                          PolicyVersion version, TimeMs now) {
  in_episode_ = true;
  steps_ = 0;
  current_ = Trajectory{};
  current_.env_id = env_id_;
  current_.episode = episode;
  current_.policy_version = version;
  current_.newest_version = version;
  return InferenceRequest{env_id_, episode, 0, version, now, -1};
}

EnvOutcome EnvWorker::finish_chunk(const StepRecord& action, TimeMs finish) {
  if (!in_episode_) {
    throw Error(ErrorCode::kStepAfterDone,
                "env " + std::to_string(env_id_) +
                    " stepped after its episode completed");
  }
  const int steps = std::min(chunk_size_, episode_length_ - steps_);
  steps_ += steps;
  current_.n_chunks += 1;
  current_.policy_version = std::min(current_.policy_version, action.version);
  current_.newest_version = std::max(current_.newest_version, action.version);
  if (action.context >= 0) current_.records.push_back(action);

  if (steps_ >= episode_length_) {
    in_episode_ = false;
    ++episodes_completed_;
    current_.n_steps = steps_;
    current_.created_at = finish;
    return TrajectoryCompletion{std::move(current_)};
  }
  return InferenceRequest{env_id_, current_.episode, current_.n_chunks,
                          current_.policy_version, finish, -1};
}

EnvStepResult env_worker_step(EnvWorker& env, const StepRecord& action,
                              const WorkloadSpec& workload, RngStream& rng,
                              TimeMs now) {
  if (!env.in_episode()) {
    throw Error(ErrorCode::kStepAfterDone,
                "env " + std::to_string(env.env_id()) +
                    " stepped after its episode completed");
  }
  const DurationMs d = sample_latency(workload.env_step, 1, rng);
  return EnvStepResult{env.finish_chunk(action, now + d), d};
}

}  // namespace asyncrl
