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

#ifndef ASYNCRL_ENGINE_RUN_HPP_
#define ASYNCRL_ENGINE_RUN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "asyncrl/engine/trace.hpp"
#include "asyncrl/pipeline/types.hpp"
#include "asyncrl/workload.hpp"

namespace asyncrl {

// Everything an engine needs to execute one run.
struct RunSpec {
  PipelineConfig pipeline;
  PlacementPlan plan;
  WorkloadSpec workload;
  std::string fingerprint;
};

// Validates the pipeline against the plan and the workload; throws on the
// first problem.
void validate_run(const RunSpec& spec);

struct ConsumptionRecord {
  std::int64_t round = 0;
  int env_id = 0;
  std::int64_t episode = 0;
  PolicyVersion trajectory_version = 0;
  PolicyVersion actor_version = 0;

  std::int64_t gap() const { return actor_version - trajectory_version; }
};

struct SuccessPoint {
  std::int64_t update_index = 0;
  double success_rate = 0.0;
  PolicyVersion version = 0;
};

struct RunResult {
  Trace trace;
  std::int64_t produced = 0;
  std::int64_t consumed = 0;
  std::int64_t env_steps = 0;
  std::int64_t rounds = 0;
  PolicyVersion final_version = 0;
  std::vector<ConsumptionRecord> consumption;

  // Live runs only.
  std::vector<double> final_weights;
  std::vector<SuccessPoint> success_curve;
  // Trajectories fed to each update, in consumption order.
  std::vector<std::vector<Trajectory>> round_inputs;

  TimeMs makespan() const { return trace.makespan(); }
  std::int64_t max_gap() const;
};

}  // namespace asyncrl

#endif  // ASYNCRL_ENGINE_RUN_HPP_
