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

#include "asyncrl/strategy.hpp"

#include "asyncrl/engine/live_engine.hpp"
#include "asyncrl/engine/virtual_engine.hpp"
#include "asyncrl/error.hpp"

namespace asyncrl {

StrategyOutcome run_strategy(const RunSpec& spec, std::uint64_t seed,
                             const EngineOptions& engine, const std::string& name) {
  StrategyOutcome out;
  if (engine.kind == EngineKind::kLive) {
    if (engine.learner == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "live runs need a learner");
    }
    out.result = run_live(spec, seed,
                          LiveOptions{engine.time_scale, *engine.learner, engine.sink});
  } else {
    out.result = run_virtual(spec, seed, engine.sink);
  }
  out.report = build_report(name, spec, out.result);
  return out;
}

std::vector<std::string> check_run_invariants(const RunSpec& spec,
                                              const RunResult& result) {
  std::vector<std::string> problems;
  const auto overlaps = find_device_overlaps(result.trace);
  if (!overlaps.empty()) {
    problems.push_back(std::to_string(overlaps.size()) +
                       " overlapping busy interval(s), first on device " +
                       std::to_string(overlaps.front().device));
  }
  const std::int64_t total = total_trajectories(spec.pipeline);
  if (result.produced != total || result.consumed != total) {
    problems.push_back("trajectory count mismatch: produced " +
                       std::to_string(result.produced) + ", consumed " +
                       std::to_string(result.consumed) + ", expected " +
                       std::to_string(total));
  }
  const std::int64_t bound = effective_staleness(spec.pipeline);
  if (!spec.pipeline.mid_episode_adoption && result.max_gap() > bound) {
    problems.push_back("staleness " + std::to_string(result.max_gap()) +
                       " exceeds bound " + std::to_string(bound));
  }
  const std::int64_t expected_steps = total * spec.pipeline.episode_length;
  if (result.env_steps != expected_steps ||
      trace_env_steps(result.trace) != expected_steps) {
    problems.push_back("env step count " + std::to_string(result.env_steps) +
                       " differs from " + std::to_string(expected_steps));
  }
  for (const TraceEvent& e : result.trace.events) {
    if (e.end < e.start) {
      problems.push_back("trace event ends before it starts");
      break;
    }
  }
  return problems;
}

StrategyOutcome run_experiment(const ExperimentConfig& config, std::uint64_t seed,
                               std::ostream* sink) {
  const RunSpec spec = make_run_spec(config);
  const LearnerConfig learner = make_learner(config);
  EngineOptions engine{config.engine, config.time_scale, &learner, sink};
  return run_strategy(spec, seed, engine, config.name);
}

}  // namespace asyncrl
