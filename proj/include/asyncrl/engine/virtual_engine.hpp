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

// Single-threaded discrete-event executor. Events are ordered by
// (virtual time, scheduling sequence number), so a run is a pure function
// of its spec and seed.
//
// Rollout model:
//  * Each rollout device runs one inference worker serving the envs
//    assigned to it through a DynamicBatcher.
//  * Lockstep (rollout_async off): envs advance in global steps. Every
//    device waits until all in-flight envs have asked for their next chunk,
//    then serves its whole shard; episodes start together once every env
//    is idle.
//  * Rollout async: each device fires on its own (b_max, t_max) trigger
//    and envs start new episodes as soon as admission allows.
//  * Host envs step independently; device envs step each returned batch
//    as one call on the env device.
//
// Training model: an update round consumes trajectories_per_round
// trajectories FIFO, runs data-parallel micro-steps over all actor
// devices, aggregates, syncs weights and publishes the next version.

#ifndef ASYNCRL_ENGINE_VIRTUAL_ENGINE_HPP_
#define ASYNCRL_ENGINE_VIRTUAL_ENGINE_HPP_

#include <cstdint>
#include <iosfwd>

#include "asyncrl/engine/run.hpp"

namespace asyncrl {

// Throws Error(kDeadlock) when no event is runnable with work left, and
// Error(kStarvation) when the actor waits longer than the configured
// starvation timeout. When `sink` is set, events are streamed to it as
// CSV rows while the run progresses.
RunResult run_virtual(const RunSpec& spec, std::uint64_t seed,
                      std::ostream* sink = nullptr);

}  // namespace asyncrl

#endif  // ASYNCRL_ENGINE_VIRTUAL_ENGINE_HPP_
