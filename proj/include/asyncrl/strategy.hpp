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

#ifndef ASYNCRL_STRATEGY_HPP_
#define ASYNCRL_STRATEGY_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "asyncrl/config.hpp"
#include "asyncrl/engine/run.hpp"
#include "asyncrl/metrics.hpp"

namespace asyncrl {

struct StrategyOutcome {
  RunResult result;
  MetricsReport report;
};

struct EngineOptions {
  EngineKind kind = EngineKind::kVirtual;
  double time_scale = 0.1;
  const LearnerConfig* learner = nullptr;  // required for live runs
  std::ostream* sink = nullptr;
};

// Runs one configuration end to end on the chosen engine and reduces the
// trace to a MetricsReport. Throws InconsistentConfig for plans the
// pipeline cannot execute (e.g. train_async on a colocated plan).
StrategyOutcome run_strategy(const RunSpec& spec, std::uint64_t seed,
                             const EngineOptions& engine,
                             const std::string& name = "");

// Post-hoc checks every completed run must pass: no overlapping busy
// intervals on a device, produced == consumed == total trajectories,
// staleness within the configured bound, throughput consistent with the
// trace. Returns human-readable violations (empty when all hold).
std::vector<std::string> check_run_invariants(const RunSpec& spec,
                                              const RunResult& result);

// Convenience wrapper for a parsed experiment config.
StrategyOutcome run_experiment(const ExperimentConfig& config, std::uint64_t seed,
                               std::ostream* sink = nullptr);

}  // namespace asyncrl

#endif  // ASYNCRL_STRATEGY_HPP_
