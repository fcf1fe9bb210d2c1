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

#ifndef ASYNCRL_ENGINE_TRACE_HPP_
#define ASYNCRL_ENGINE_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asyncrl/workload.hpp"

namespace asyncrl {

enum class Phase {
  kEnvStep,
  kInference,
  kTrainMicro,
  kGradAggregate,
  kWeightSync,
  kQueueWait,
  kIdle,
};

enum class WorkerClass { kEnv, kRollout, kActor };

std::string_view phase_name(Phase phase);
Phase parse_phase(std::string_view name);
std::string_view worker_class_name(WorkerClass cls);
WorkerClass parse_worker_class(std::string_view name);

// QueueWait and Idle are bookkeeping; everything else occupies a worker.
bool is_busy(Phase phase);
bool is_rollout_phase(Phase phase);
bool is_actor_phase(Phase phase);

using TraceMeta = std::vector<std::pair<std::string, std::int64_t>>;

struct TraceEvent {
  int worker = 0;
  WorkerClass worker_class = WorkerClass::kEnv;
  std::optional<int> device;  // nullopt: host CPU
  Phase phase = Phase::kIdle;
  TimeMs start = 0.0;
  TimeMs end = 0.0;
  TraceMeta meta;

  std::optional<std::int64_t> meta_value(std::string_view key) const;
  bool operator==(const TraceEvent&) const = default;
};

struct Trace {
  std::vector<TraceEvent> events;  // ordered by start time
  std::string config_fingerprint;
  std::uint64_t seed = 0;

  TimeMs makespan() const;
};

// Worker numbering shared by both engines: the actor is 0, rollout
// workers follow, then env workers.
struct WorkerIds {
  int n_rollout = 0;

  int actor() const { return 0; }
  int rollout(int group) const { return 1 + group; }
  int env(int env_id) const { return 1 + n_rollout + env_id; }
};

// Collects events and optionally streams each one to `sink` as CSV while
// the run progresses. finish() orders the events by (start, record order).
class TraceRecorder {
 public:
  explicit TraceRecorder(std::ostream* sink = nullptr);

  void record(TraceEvent event);
  Trace finish(std::string fingerprint, std::uint64_t seed);
  std::size_t size() const { return events_.size(); }

 private:
  std::ostream* sink_;
  std::vector<TraceEvent> events_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Hash of the CSV serialization; identical traces hash identically.
std::string trace_hash(const Trace& trace);

// Per (worker class, phase): length of the union of that phase's
// intervals, i.e. wall time during which some worker was in the phase.
struct PhaseTotals {
  std::map<std::pair<WorkerClass, Phase>, DurationMs> by_class_phase;
  DurationMs rollout = 0.0;  // union of EnvStep + Inference
  DurationMs actor = 0.0;    // union of TrainMicro + GradAggregate + WeightSync
  DurationMs makespan = 0.0;
};

PhaseTotals trace_phase_totals(const Trace& trace);

// Total busy time on one device.
DurationMs device_busy_time(const Trace& trace, int device);

// Pairs of overlapping busy intervals on the same device (should be empty).
struct Overlap {
  int device;
  std::size_t first;
  std::size_t second;
};
std::vector<Overlap> find_device_overlaps(const Trace& trace);

// Sum of the "steps" annotation over EnvStep events.
std::int64_t trace_env_steps(const Trace& trace);

// Length of the union of a set of [start, end) intervals.
DurationMs union_length(std::vector<std::pair<TimeMs, TimeMs>> intervals);

}  // namespace asyncrl

#endif  // ASYNCRL_ENGINE_TRACE_HPP_
