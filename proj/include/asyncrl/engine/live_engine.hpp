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

// Concurrent executor: one thread per env, one per rollout device, one
// for the actor and one trace writer. Simulated durations become real
// sleeps of `duration * time_scale` ms, devices are mutexes, and the toy
// bandit learner produces real actions and weight updates.
//
// Timestamps in the trace are wall-clock milliseconds divided by
// time_scale (raw milliseconds when time_scale is 0), so they read as
// virtual time.

#ifndef ASYNCRL_ENGINE_LIVE_ENGINE_HPP_
#define ASYNCRL_ENGINE_LIVE_ENGINE_HPP_

#include <cstdint>
#include <iosfwd>

#include "asyncrl/engine/run.hpp"
#include "asyncrl/pipeline/actor.hpp"

namespace asyncrl {

struct LiveOptions {
  double time_scale = 0.1;
  LearnerConfig learner;
  std::ostream* sink = nullptr;
};

// Host-side envs only. Throws Error(kStarvation) when the actor waits
// longer than starvation_timeout (scaled like every other duration).
RunResult run_live(const RunSpec& spec, std::uint64_t seed,
                   const LiveOptions& options);

// Re-applies the updates of a finished live run to its recorded
// trajectory stream with the given streamer setting, starting from zero
// weights. Used to compare update paths on an identical stream.
std::vector<double> replay_updates(const RunResult& run,
                                   const StreamerConfig& streamer,
                                   const LearnerConfig& learner);

}  // namespace asyncrl

#endif  // ASYNCRL_ENGINE_LIVE_ENGINE_HPP_
