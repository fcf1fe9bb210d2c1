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

#include <cmath>
#include <string>

#include "asyncrl/error.hpp"
#include "asyncrl/pipeline/types.hpp"

namespace asyncrl {

namespace {

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, field + ": " + what);
}

}  // namespace

void validate_pipeline(const PipelineConfig& c, const PlacementPlan& plan) {
  check(c.n_env >= 1, "run.n_env", "must be >= 1");
  check(c.n_rollout_epochs >= 1, "run.n_rollout_epochs", "must be >= 1");
  check(c.episode_length >= 1, "run.n_es", "must be >= 1");
  check(c.chunk_size >= 1, "run.chunk_size", "must be >= 1");
  check(c.trigger.b_max >= 1, "pipeline.b_max", "must be >= 1");
  check(c.trigger.t_max >= 0.0 && !std::isnan(c.trigger.t_max),
        "pipeline.t_max", "must be >= 0");
  check(c.streamer.micro_batch_size >= 1, "pipeline.micro_batch", "must be >= 1");
  check(c.streamer.global_batch_size >= 1, "pipeline.global_batch", "must be >= 1");
  check(c.streamer.micro_batch_size <= c.streamer.global_batch_size,
        "pipeline.micro_batch", "must not exceed pipeline.global_batch");
  check(c.max_staleness >= 0, "pipeline.max_staleness", "must be >= 0");
  check(!c.queue_capacity || *c.queue_capacity >= 1, "pipeline.queue_capacity",
        "must be >= 1 (or 0 for unbounded)");
  check(c.context_switch >= 0.0 && std::isfinite(c.context_switch),
        "pipeline.context_switch", "must be finite and >= 0");
  check(c.starvation_timeout > 0.0, "run.starvation_timeout", "must be > 0");
  check(c.devices_per_node >= 1, "placement.devices_per_node", "must be >= 1");
  if (c.train_async && plan.strategy != Strategy::kDisaggregated) {
    throw Error(ErrorCode::kInconsistentConfig,
                "pipeline.train_async: requires a disaggregated placement, got " +
                    std::string(strategy_name(plan.strategy)));
  }
  if (plan.rollout_devices.empty() || plan.actor_devices.empty()) {
    throw Error(ErrorCode::kInconsistentConfig,
                "placement: rollout and actor device sets must be non-empty");
  }
}

int samples_per_trajectory(const PipelineConfig& c) {
  return (c.episode_length + c.chunk_size - 1) / c.chunk_size;
}

int trajectories_per_round(const PipelineConfig& c) {
  const int spt = samples_per_trajectory(c);
  return (c.streamer.global_batch_size + spt - 1) / spt;
}

std::int64_t total_trajectories(const PipelineConfig& c) {
  return static_cast<std::int64_t>(c.n_env) * c.n_rollout_epochs;
}

int effective_staleness(const PipelineConfig& c) {
  return c.train_async ? c.max_staleness : 0;
}

}  // namespace asyncrl
