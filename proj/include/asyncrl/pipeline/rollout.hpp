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

#ifndef ASYNCRL_PIPELINE_ROLLOUT_HPP_
#define ASYNCRL_PIPELINE_ROLLOUT_HPP_

#include <span>
#include <vector>

#include "asyncrl/pipeline/types.hpp"
#include "asyncrl/rng.hpp"
#include "asyncrl/toyrl.hpp"

namespace asyncrl {

struct InferenceResult {
  std::vector<StepRecord> actions;  // one per request, same order
  DurationMs duration = 0.0;
};

// Resolves the snapshot a request is served with (its pinned version, or
// the latest one under mid-episode adoption).
class SnapshotSource {
 public:
  virtual ~SnapshotSource() = default;
  virtual const PolicySnapshot& snapshot_for(
      const InferenceRequest& request) const = 0;
};

// Per-env policy streams, so sampled actions do not depend on how
// requests were grouped into batches.
class RngSource {
 public:
  virtual ~RngSource() = default;
  virtual RngStream& policy_rng(int env_id) = 0;
};

DurationMs inference_duration(const WorkloadSpec& workload, int batch_size);

// Serves one batch. Actions are sampled only when `env` is given (live
// mode); otherwise the records carry just the version tag.
InferenceResult rollout_infer(std::span<const InferenceRequest> batch,
                              const SnapshotSource& snapshots,
                              const WorkloadSpec& workload,
                              const toyrl::BanditEnv* env, RngSource* rngs);

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_ROLLOUT_HPP_
