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

#include "asyncrl/pipeline/batcher.hpp"

#include <algorithm>
#include <cmath>

#include "asyncrl/error.hpp"

namespace asyncrl {

void DynamicBatcher::offer(InferenceRequest request, TimeMs now) {
  if (request.enqueue_time > now) {
    throw Error(ErrorCode::kInvalidArgument,
                "request offered before its enqueue time");
  }
  if (pending_.empty()) anchor_ = now;
  pending_.push_back(request);
}

std::optional<std::vector<InferenceRequest>> DynamicBatcher::poll(
    TimeMs now, const BatchTriggerConfig& config) {
  if (pending_.empty()) return std::nullopt;
  const bool size_branch =
      pending_.size() >= static_cast<std::size_t>(config.b_max);
  // Compared as now >= anchor + t_max so a wake-up scheduled at exactly
  // that sum always fires.
  const bool time_branch =
      std::isfinite(config.t_max) && now >= *anchor_ + config.t_max;
  if (!size_branch && !time_branch) return std::nullopt;

  const std::size_t take =
      std::min(pending_.size(), static_cast<std::size_t>(config.b_max));
  std::vector<InferenceRequest> batch(pending_.begin(), pending_.begin() + take);
  pending_.erase(pending_.begin(), pending_.begin() + take);
  if (pending_.empty()) {
    anchor_.reset();
  } else {
    anchor_ = now;
  }
  return batch;
}

std::optional<TimeMs> DynamicBatcher::deadline(
    const BatchTriggerConfig& config) const {
  if (pending_.empty() || !std::isfinite(config.t_max)) return std::nullopt;
  return *anchor_ + config.t_max;
}

}  // namespace asyncrl
