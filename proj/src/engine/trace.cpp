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

#include "asyncrl/engine/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>

#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"

namespace asyncrl {

namespace {

constexpr std::pair<Phase, std::string_view> kPhaseNames[] = {
    {Phase::kEnvStep, "EnvStep"},
    {Phase::kInference, "Inference"},
    {Phase::kTrainMicro, "TrainMicro"},
    {Phase::kGradAggregate, "GradAggregate"},
    {Phase::kWeightSync, "WeightSync"},
    {Phase::kQueueWait, "QueueWait"},
    {Phase::kIdle, "Idle"},
};

constexpr std::pair<WorkerClass, std::string_view> kClassNames[] = {
    {WorkerClass::kEnv, "env"},
    {WorkerClass::kRollout, "rollout"},
    {WorkerClass::kActor, "actor"},
};

}  // namespace

std::string_view phase_name(Phase phase) {
  for (const auto& [p, name] : kPhaseNames) {
    if (p == phase) return name;
  }
  return "?";
}

Phase parse_phase(std::string_view name) {
  for (const auto& [p, n] : kPhaseNames) {
    if (n == name) return p;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown phase '" + std::string(name) + "'");
}

std::string_view worker_class_name(WorkerClass cls) {
  for (const auto& [c, name] : kClassNames) {
    if (c == cls) return name;
  }
  return "?";
}

WorkerClass parse_worker_class(std::string_view name) {
  for (const auto& [c, n] : kClassNames) {
    if (n == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown worker class '" + std::string(name) + "'");
}

bool is_busy(Phase phase) {
  return phase != Phase::kQueueWait && phase != Phase::kIdle;
}

bool is_rollout_phase(Phase phase) {
  return phase == Phase::kEnvStep || phase == Phase::kInference;
}

bool is_actor_phase(Phase phase) {
  return phase == Phase::kTrainMicro || phase == Phase::kGradAggregate ||
         phase == Phase::kWeightSync;
}

std::optional<std::int64_t> TraceEvent::meta_value(std::string_view key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::nullopt;
}

TimeMs Trace::makespan() const {
  TimeMs end = 0.0;
  for (const TraceEvent& e : events) end = std::max(end, e.end);
  return end;
}

TraceRecorder::TraceRecorder(std::ostream* sink) : sink_(sink) {}

void TraceRecorder::record(TraceEvent event) {
  if (event.end < event.start) {
    throw Error(ErrorCode::kInvalidArgument, "trace event ends before it starts");
  }
  if (sink_ != nullptr) write_trace_row(*sink_, event);
  events_.push_back(std::move(event));
}

Trace TraceRecorder::finish(std::string fingerprint, std::uint64_t seed) {
  std::stable_sort(events_.begin(), events_.end(),
                   [](const TraceEvent& a, const TraceEvent& b) {
                     return a.start < b.start;
                   });
  Trace trace;
  trace.events = std::move(events_);
  trace.config_fingerprint = std::move(fingerprint);
  trace.seed = seed;
  events_.clear();
  return trace;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string trace_hash(const Trace& trace) {
  return hex64(fnv1a64(trace_to_csv(trace)));
}

DurationMs union_length(std::vector<std::pair<TimeMs, TimeMs>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  DurationMs total = 0.0;
  bool open = false;
  TimeMs cur_start = 0.0;
  TimeMs cur_end = 0.0;
  for (const auto& [s, e] : intervals) {
    if (!open || s > cur_end) {
      if (open) total += cur_end - cur_start;
      cur_start = s;
      cur_end = e;
      open = true;
    } else {
      cur_end = std::max(cur_end, e);
    }
  }
  if (open) total += cur_end - cur_start;
  return total;
}

PhaseTotals trace_phase_totals(const Trace& trace) {
  std::map<std::pair<WorkerClass, Phase>, std::vector<std::pair<TimeMs, TimeMs>>>
      grouped;
  std::vector<std::pair<TimeMs, TimeMs>> rollout;
  std::vector<std::pair<TimeMs, TimeMs>> actor;
  for (const TraceEvent& e : trace.events) {
    grouped[{e.worker_class, e.phase}].emplace_back(e.start, e.end);
    if (is_rollout_phase(e.phase)) rollout.emplace_back(e.start, e.end);
    if (is_actor_phase(e.phase)) actor.emplace_back(e.start, e.end);
  }
  PhaseTotals totals;
  for (auto& [key, intervals] : grouped) {
    totals.by_class_phase[key] = union_length(std::move(intervals));
  }
  totals.rollout = union_length(std::move(rollout));
  totals.actor = union_length(std::move(actor));
  totals.makespan = trace.makespan();
  return totals;
}

DurationMs device_busy_time(const Trace& trace, int device) {
  std::vector<std::pair<TimeMs, TimeMs>> intervals;
  for (const TraceEvent& e : trace.events) {
    if (e.device == device && is_busy(e.phase)) {
      intervals.emplace_back(e.start, e.end);
    }
  }
  return union_length(std::move(intervals));
}

std::vector<Overlap> find_device_overlaps(const Trace& trace) {
  std::map<int, std::vector<std::size_t>> by_device;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    if (e.device && is_busy(e.phase) && e.end > e.start) {
      by_device[*e.device].push_back(i);
    }
  }
  std::vector<Overlap> overlaps;
  for (auto& [device, idx] : by_device) {
    // Events are start-ordered; a running max end catches any overlap.
    std::size_t last = idx.front();
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const TraceEvent& cur = trace.events[idx[k]];
      if (cur.start < trace.events[last].end) {
        overlaps.push_back({device, last, idx[k]});
      }
      if (cur.end > trace.events[last].end) last = idx[k];
    }
  }
  return overlaps;
}

std::int64_t trace_env_steps(const Trace& trace) {
  std::int64_t steps = 0;
  for (const TraceEvent& e : trace.events) {
    if (e.phase == Phase::kEnvStep) steps += e.meta_value("steps").value_or(0);
  }
  return steps;
}

}  // namespace asyncrl
