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

#include "asyncrl/pipeline/channels.hpp"

#include <algorithm>
#include <string>

#include "asyncrl/error.hpp"

namespace asyncrl {

bool TrajectoryQueue::try_push(Trajectory trajectory) {
  if (full()) return false;
  items_.push_back(std::move(trajectory));
  return true;
}

std::optional<Trajectory> TrajectoryQueue::pop() {
  if (items_.empty()) return std::nullopt;
  Trajectory t = std::move(items_.front());
  items_.pop_front();
  return t;
}

VersionManager::VersionManager(PolicySnapshot initial) {
  snapshots_.push_back(std::move(initial));
}

void VersionManager::publish(PolicySnapshot snapshot) {
  const PolicyVersion prev = latest().version;
  if (snapshot.version <= prev) {
    throw Error(ErrorCode::kVersionRegression,
                "published version " + std::to_string(snapshot.version) +
                    " after version " + std::to_string(prev));
  }
  if (snapshot.version != prev + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "published version " + std::to_string(snapshot.version) +
                    " skips past " + std::to_string(prev + 1));
  }
  snapshots_.push_back(std::move(snapshot));
}

const PolicySnapshot& VersionManager::at(PolicyVersion version) const {
  const PolicyVersion base = snapshots_.front().version;
  if (version < base || version > latest().version) {
    throw Error(ErrorCode::kInvalidArgument,
                "no snapshot for version " + std::to_string(version));
  }
  return snapshots_[static_cast<std::size_t>(version - base)];
}

AdmissionController::AdmissionController(int trajectories_per_round,
                                         int staleness,
                                         std::int64_t total_episodes)
    : per_round_(trajectories_per_round),
      staleness_(staleness),
      total_(total_episodes) {
  if (per_round_ < 1 || staleness_ < 0 || total_ < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid admission parameters");
  }
}

PolicyVersion AdmissionController::oldest_unconsumed(
    PolicyVersion current) const {
  if (outstanding_.empty()) return current;
  return std::min(current, outstanding_.begin()->first);
}

bool AdmissionController::can_admit(PolicyVersion current) const {
  if (exhausted()) return false;
  const std::int64_t quota =
      (oldest_unconsumed(current) + staleness_ + 1) *
      static_cast<std::int64_t>(per_round_);
  return started_ < quota;
}

void AdmissionController::admit(PolicyVersion version) {
  ++started_;
  ++outstanding_[version];
}

void AdmissionController::consume(PolicyVersion version) {
  auto it = outstanding_.find(version);
  if (it == outstanding_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "consumed a trajectory that was never admitted");
  }
  if (--it->second == 0) outstanding_.erase(it);
  ++consumed_;
}

}  // namespace asyncrl
