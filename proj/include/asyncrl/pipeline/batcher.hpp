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

#ifndef ASYNCRL_PIPELINE_BATCHER_HPP_
#define ASYNCRL_PIPELINE_BATCHER_HPP_

#include <deque>
#include <optional>
#include <vector>

#include "asyncrl/pipeline/types.hpp"

namespace asyncrl {

// Dynamic batching scheduler. A batch is released when
//
//   pending >= b_max  OR  (pending >= 1 AND now - anchor >= t_max)
//
// where `anchor` is when the oldest waiting request started its wait. The
// time branch never fires on an empty queue, and an oversized queue
// releases only its b_max oldest requests.
class DynamicBatcher {
 public:
  void offer(InferenceRequest request, TimeMs now);

  std::optional<std::vector<InferenceRequest>> poll(
      TimeMs now, const BatchTriggerConfig& config);

  // Earliest instant at which the time branch will fire, if any.
  std::optional<TimeMs> deadline(const BatchTriggerConfig& config) const;

  std::size_t pending() const { return pending_.size(); }
  std::optional<TimeMs> anchor() const { return anchor_; }
  const std::deque<InferenceRequest>& queue() const { return pending_; }

 private:
  std::deque<InferenceRequest> pending_;
  std::optional<TimeMs> anchor_;
};

}  // namespace asyncrl

#endif  // ASYNCRL_PIPELINE_BATCHER_HPP_
