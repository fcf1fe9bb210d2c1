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

#include "asyncrl/engine/run.hpp"

#include <algorithm>

#include "asyncrl/error.hpp"

namespace asyncrl {

void validate_run(const RunSpec& spec) {
  spec.workload.validate();
  validate_pipeline(spec.pipeline, spec.plan);
  if (spec.plan.env_devices.size() != spec.plan.rollout_devices.size()) {
    throw Error(ErrorCode::kInconsistentConfig,
                "placement: every rollout device needs an env device");
  }
  if (spec.workload.train_microbatch.kind() == LatencyKind::kBatchedEnvAffine ||
      spec.workload.inference.kind() == LatencyKind::kBatchedEnvAffine) {
    throw Error(ErrorCode::kInvalidArgument,
                "workload: batched_env_affine only applies to env_step");
  }
}

std::int64_t RunResult::max_gap() const {
  std::int64_t gap = 0;
  for (const ConsumptionRecord& c : consumption) gap = std::max(gap, c.gap());
  return gap;
}

}  // namespace asyncrl
