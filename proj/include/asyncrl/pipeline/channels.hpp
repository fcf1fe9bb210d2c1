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

// Cross-worker state shared by both engines: the trajectory queue, the
// policy version manager, and the staleness admission gate. None of these
// lock; the live engine serializes access itself.

#ifndef ASYNCRL_PIPELINE_CHANNELS_HPP_
#define ASYNCRL_PIPELINE_CHANNELS_HPP_

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "asyncrl/pipeline/types.hpp"

namespace asyncrl {

// FIFO with optional capacity. A full queue refuses pushes; the caller
// blocks the producer until space frees up. Nothing is ever dropped.
class TrajectoryQueue {
 public:
  explicit TrajectoryQueue(std::optional<int> capacity = std::nullopt)
      : capacity_(capacity) {}

  bool full() const {
    return capacity_ && static_cast<int>(items_.size()) >= *capacity_;
  }
  bool try_push(Trajectory trajectory);
  std::optional<Trajectory> pop();

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::optional<int> capacity() const { return capacity_; }

 private:
  std::optional<int> capacity_;
  std::deque<Trajectory> items_;
};

class VersionManager {
 public:
  explicit VersionManager(PolicySnapshot initial);

  // Requires snapshot.version == latest + 1. A lower or equal version
  // throws VersionRegression; a skipped version throws InvalidArgument.
  void publish(PolicySnapshot snapshot);

  const PolicySnapshot& latest() const { return snapshots_.back(); }
  // Any published snapshot (kept so pinned episodes can keep acting).
  const PolicySnapshot& at(PolicyVersion version) const;

 private:
  std::vector<PolicySnapshot> snapshots_;
};

// Gate applied when an env wants to start an episode. With G trajectories
// per update round and staleness bound S, an episode may start under the
// current version v only while
//
//   started < (oldest + S + 1) * G
//
// where `oldest` is the oldest version among started-but-unconsumed
// episodes (or v). Because rounds consume FIFO and version r trains round
// r, every trajectory pinned to version p is consumed by round p + S.
// S = 0 yields strictly alternating rollout/train phases.
class AdmissionController {
 public:
  AdmissionController(int trajectories_per_round, int staleness,
                      std::int64_t total_episodes);

  bool can_admit(PolicyVersion current) const;
  void admit(PolicyVersion version);
  void consume(PolicyVersion version);

  std::int64_t started() const { return started_; }
  std::int64_t consumed() const { return consumed_; }
  std::int64_t total() const { return total_; }
  bool exhausted() const { return started_ >= total_; }
  PolicyVersion oldest_unconsumed(PolicyVersion current) const;

 private:
  int per_round_;
  int staleness_;
  std::int64_t total_;
  std::int64_t started_ = 0;
  std::int64_t consumed_ = 0;
  std::map<PolicyVersion, std::int64_t> outstanding_;
};

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_CHANNELS_HPP_
