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

#include "asyncrl/pipeline/actor.hpp"

#include <algorithm>
#include <memory>

#include "asyncrl/error.hpp"
#include "asyncrl/pipeline/rollout.hpp"

namespace asyncrl {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

RoundPlan plan_round(int trajectories, int samples_per_trajectory,
                     int micro_batch_size, int dp_width) {
  if (trajectories < 1) {
    throw Error(ErrorCode::kEmptyBatch, "update round with no trajectories");
  }
  if (samples_per_trajectory < 1 || micro_batch_size < 1 || dp_width < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid round shape");
  }
  RoundPlan plan;
  plan.trajectories = trajectories;
  plan.samples = trajectories * samples_per_trajectory;
  plan.micro_batches = ceil_div(plan.samples, micro_batch_size);
  plan.dp_width = dp_width;
  plan.dp_steps = ceil_div(plan.micro_batches, dp_width);
  return plan;
}

int samples_needed_for_step(const RoundPlan& plan, int step,
                            int micro_batch_size, bool streamer) {
  if (!streamer) return plan.samples;
  const long long upto =
      static_cast<long long>(step + 1) * plan.dp_width * micro_batch_size;
  return static_cast<int>(std::min<long long>(upto, plan.samples));
}

int round_size(int per_round, std::int64_t total, std::int64_t round) {
  const std::int64_t remaining = total - round * per_round;
  return static_cast<int>(std::clamp<std::int64_t>(remaining, 0, per_round));
}

std::int64_t total_rounds(int per_round, std::int64_t total) {
  return (total + per_round - 1) / per_round;
}

DurationMs actor_compute_cost(const RoundPlan& plan,
                              const WorkloadSpec& workload,
                              int micro_batch_size, RngStream& rng) {
  DurationMs total = 0.0;
  for (int s = 0; s < plan.dp_steps; ++s) {
    total += sample_latency(workload.train_microbatch, micro_batch_size, rng);
  }
  return total + workload.grad_aggregate;
}

std::vector<toyrl::Sample> round_samples(std::span<const Trajectory> round,
                                         const toyrl::BanditEnv& env) {
  std::vector<toyrl::Sample> out;
  for (const Trajectory& t : round) {
    for (const StepRecord& r : t.records) {
      out.push_back(toyrl::Sample{env.contexts.at(r.context), r.action,
                                  r.reward, r.log_prob});
    }
  }
  return out;
}

GradientAccumulator::GradientAccumulator(const toyrl::LinearPolicy& policy,
                                         int micro_batch_size)
    : policy_(policy),
      micro_(micro_batch_size),
      total_(toyrl::LinearPolicy::zeros(policy.n_arms, policy.dim)) {
  if (micro_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "micro batch size must be >= 1");
  }
}

int GradientAccumulator::add(std::span<const toyrl::Sample> samples) {
  int computed = 0;
  for (const toyrl::Sample& s : samples) {
    buffer_.push_back(s);
    ++n_samples_;
    if (static_cast<int>(buffer_.size()) == micro_) {
      flush();
      ++computed;
    }
  }
  return computed;
}

void GradientAccumulator::finish() {
  if (!buffer_.empty()) flush();
}

void GradientAccumulator::flush() {
  toyrl::accumulate(total_, toyrl::compute_gradient(buffer_, policy_));
  buffer_.clear();
  ++micro_steps_;
}

toyrl::LinearPolicy policy_from(const PolicySnapshot& snapshot,
                                const toyrl::BanditEnv& env) {
  if (!snapshot.weights) {
    throw Error(ErrorCode::kInvalidArgument, "snapshot carries no weights");
  }
  return toyrl::LinearPolicy{env.n_arms, env.context_dim, *snapshot.weights};
}

PolicySnapshot actor_update(const PolicySnapshot& previous,
                            std::span<const Trajectory> round,
                            const StreamerConfig& streamer,
                            const LearnerConfig& learner) {
  const auto samples = round_samples(round, learner.env);
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "actor_update on an empty round");
  }
  const toyrl::LinearPolicy policy = policy_from(previous, learner.env);
  toyrl::Gradient grad;
  if (streamer.enabled) {
    GradientAccumulator acc(policy, streamer.micro_batch_size);
    acc.add(samples);
    acc.finish();
    grad = acc.gradient();
  } else {
    grad = toyrl::compute_gradient(samples, policy);
  }
  auto next = toyrl::apply_update(policy, grad, learner.learning_rate,
                                  static_cast<int>(samples.size()));
  return PolicySnapshot{
      previous.version + 1,
      std::make_shared<const std::vector<double>>(std::move(next.weights))};
}

DurationMs inference_duration(const WorkloadSpec& workload, int batch_size) {
  return workload.inference.mean(batch_size);
}

InferenceResult rollout_infer(std::span<const InferenceRequest> batch,
                              const SnapshotSource& snapshots,
                              const WorkloadSpec& workload,
                              const toyrl::BanditEnv* env, RngSource* rngs) {
  if (batch.empty()) {
    throw Error(ErrorCode::kEmptyBatch, "inference on an empty batch");
  }
  InferenceResult result;
  result.duration = inference_duration(workload, static_cast<int>(batch.size()));
  result.actions.reserve(batch.size());
  for (const InferenceRequest& req : batch) {
    const PolicySnapshot& snap = snapshots.snapshot_for(req);
    StepRecord rec;
    rec.version = snap.version;
    if (env != nullptr && req.context >= 0) {
      const auto policy = policy_from(snap, *env);
      const auto& x = env->contexts.at(req.context);
      const toyrl::Action a = toyrl::policy_act(policy, x, rngs->policy_rng(req.env_id));
      rec.context = req.context;
      rec.action = a.arm;
      rec.log_prob = a.log_prob;
      rec.reward = env->reward(req.context, a.arm);
    }
    result.actions.push_back(rec);
  }
  return result;
}

}  // namespace asyncrl
