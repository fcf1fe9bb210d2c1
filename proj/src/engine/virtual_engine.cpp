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

#include "asyncrl/engine/virtual_engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/pipeline/actor.hpp"
#include "asyncrl/pipeline/batcher.hpp"
#include "asyncrl/pipeline/channels.hpp"
#include "asyncrl/pipeline/env_worker.hpp"
#include "asyncrl/pipeline/rollout.hpp"

namespace asyncrl {

namespace {

using Callback = std::function<void()>;

struct Scheduled {
  TimeMs time;
  std::uint64_t seq;
  bool watchdog;
  Callback fn;
};

struct LaterFirst {
  bool operator()(const Scheduled& a, const Scheduled& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct DeviceState {
  bool busy = false;
  std::deque<Callback> waiters;
};

enum class EnvMode { kIdle, kQueued, kRunning, kTransfer, kBlocked };

struct EnvState {
  EnvState(int id, const PipelineConfig& c, std::uint64_t seed, int group_index)
      : worker(id, c.episode_length, c.chunk_size),
        group(group_index),
        latency_rng(seed, StreamKind::kEnvLatency, static_cast<std::uint64_t>(id)) {}

  EnvWorker worker;
  int group;
  RngStream latency_rng;
  EnvMode mode = EnvMode::kIdle;
  std::int64_t episodes_started = 0;
  std::optional<Trajectory> held;
  TimeMs blocked_since = 0.0;
};

struct GroupState {
  GroupState(int g, int dev, int env_dev, std::uint64_t seed)
      : index(g),
        device(dev),
        env_device(env_dev),
        rng(seed, StreamKind::kEnvLatency, 1000000ULL + static_cast<std::uint64_t>(g)) {}

  int index;
  int device;
  int env_device;
  std::vector<int> envs;
  DynamicBatcher batcher;
  bool inferring = false;
  int active = 0;
  std::optional<TimeMs> wake_at;
  bool dispatch_queued = false;
  std::optional<TimeMs> ready_since;
  RngStream rng;
};

using Batch = std::shared_ptr<const std::vector<InferenceRequest>>;

class VirtualEngine final : public SnapshotSource {
 public:
  VirtualEngine(const RunSpec& spec, std::uint64_t seed, std::ostream* sink)
      : spec_(spec),
        cfg_(spec.pipeline),
        seed_(seed),
        ids_{static_cast<int>(spec.plan.rollout_devices.size())},
        recorder_(sink),
        queue_(cfg_.queue_capacity),
        versions_(PolicySnapshot{0, nullptr}),
        admission_(trajectories_per_round(cfg_), effective_staleness(cfg_),
                   total_trajectories(cfg_)),
        train_rng_(seed, StreamKind::kTrain, 0) {
    const int n_groups = ids_.n_rollout;
    for (int g = 0; g < n_groups; ++g) {
      groups_.emplace_back(g, spec.plan.rollout_devices[g],
                           spec.plan.env_devices[g], seed);
    }
    for (int e = 0; e < cfg_.n_env; ++e) {
      envs_.emplace_back(e, cfg_, seed, e % n_groups);
      groups_[e % n_groups].envs.push_back(e);
    }
    int max_device = 0;
    for (int d : spec.plan.rollout_devices) max_device = std::max(max_device, d);
    for (int d : spec.plan.actor_devices) max_device = std::max(max_device, d);
    for (int d : spec.plan.env_devices) max_device = std::max(max_device, d);
    devices_.resize(static_cast<std::size_t>(max_device) + 1);
    nodes_ = (spec.plan.n_devices + cfg_.devices_per_node - 1) / cfg_.devices_per_node;
    per_round_ = trajectories_per_round(cfg_);
    total_rounds_ = total_rounds(per_round_, total_trajectories(cfg_));
    lockstep_ = !cfg_.rollout_async;
    colocated_ = spec.plan.strategy == Strategy::kColocated;
    if (sink != nullptr) write_trace_header(*sink, spec.fingerprint, seed);
  }

  const PolicySnapshot& snapshot_for(const InferenceRequest& r) const override {
    return cfg_.mid_episode_adoption ? versions_.latest() : versions_.at(r.version);
  }

  RunResult run() {
    begin_round();
    for (int e = 0; e < cfg_.n_env; ++e) env_idle(e);
    actor_try_step();

    while (!done_) {
      if (live_events_ == 0) report_deadlock();
      Scheduled ev = events_.top();
      events_.pop();
      now_ = ev.time;
      if (!ev.watchdog) --live_events_;
      ev.fn();
    }

    RunResult result;
    result.trace = recorder_.finish(spec_.fingerprint, seed_);
    result.produced = produced_;
    result.consumed = admission_.consumed();
    result.env_steps = env_steps_;
    result.rounds = round_;
    result.final_version = versions_.latest().version;
    result.consumption = std::move(consumption_);
    return result;
  }

 private:
  // ---- scheduling and devices ----

  void schedule(TimeMs at, Callback fn, bool watchdog = false) {
    events_.push(Scheduled{at, next_seq_++, watchdog, std::move(fn)});
    if (!watchdog) ++live_events_;
  }

  void acquire(int device, Callback on_grant) {
    DeviceState& d = devices_[static_cast<std::size_t>(device)];
    if (!d.busy) {
      d.busy = true;
      schedule(now_, std::move(on_grant));
    } else {
      d.waiters.push_back(std::move(on_grant));
    }
  }

  // Ascending device order, holding earlier devices while waiting.
  void acquire_all(std::shared_ptr<const std::vector<int>> devices,
                   std::size_t i, Callback on_grant) {
    if (i == devices->size()) {
      on_grant();
      return;
    }
    acquire((*devices)[i], [this, devices, i, on_grant = std::move(on_grant)]() {
      acquire_all(devices, i + 1, on_grant);
    });
  }

  void release(int device) {
    DeviceState& d = devices_[static_cast<std::size_t>(device)];
    if (d.waiters.empty()) {
      d.busy = false;
      return;
    }
    Callback next = std::move(d.waiters.front());
    d.waiters.pop_front();
    schedule(now_, std::move(next));
  }

  void record(int worker, WorkerClass cls, std::optional<int> device, Phase phase,
              TimeMs start, TimeMs end, TraceMeta meta) {
    recorder_.record(TraceEvent{worker, cls, device, phase, start, end,
                                std::move(meta)});
  }

  // ---- rollout side ----

  void env_idle(int e) {
    EnvState& env = envs_[static_cast<std::size_t>(e)];
    env.mode = EnvMode::kIdle;
    if (lockstep_) {
      ++idle_count_;
      if (idle_count_ == cfg_.n_env) lockstep_waiting_ = true;
    } else {
      env.mode = EnvMode::kQueued;
      admit_queue_.push_back(e);
    }
    process_admissions();
  }

  void process_admissions() {
    if (lockstep_) {
      if (!lockstep_waiting_) return;
      int admitted = 0;
      admitting_ = true;
      for (int e = 0; e < cfg_.n_env; ++e) {
        if (!admission_.can_admit(versions_.latest().version)) break;
        start_episode(e);
        ++admitted;
      }
      admitting_ = false;
      if (admitted > 0) {
        lockstep_waiting_ = false;
        lockstep_check();
      }
      return;
    }
    while (!admit_queue_.empty() &&
           admission_.can_admit(versions_.latest().version)) {
      const int e = admit_queue_.front();
      admit_queue_.pop_front();
      start_episode(e);
    }
  }

  void start_episode(int e) {
    EnvState& env = envs_[static_cast<std::size_t>(e)];
    GroupState& group = groups_[static_cast<std::size_t>(env.group)];
    const PolicyVersion v = versions_.latest().version;
    // Env latencies follow the episode's admission index, not the env.
    env.latency_rng = RngStream(seed_, StreamKind::kEnvLatency,
                                static_cast<std::uint64_t>(admission_.started()));
    admission_.admit(v);
    InferenceRequest req = env.worker.begin_episode(env.episodes_started, v, now_);
    ++env.episodes_started;
    env.mode = EnvMode::kRunning;
    if (lockstep_) --idle_count_;
    ++group.active;
    ++active_total_;
    offer(e, req);
  }

  void offer(int e, const InferenceRequest& req) {
    const int g = envs_[static_cast<std::size_t>(e)].group;
    groups_[static_cast<std::size_t>(g)].batcher.offer(req, now_);
    if (lockstep_) {
      ++pending_total_;
      lockstep_check();
    } else {
      request_dispatch(g);
    }
  }

  // Polls the batcher in a zero-delay event so that every request offered
  // at the same instant lands in the same poll.
  void request_dispatch(int g) {
    GroupState& group = groups_[static_cast<std::size_t>(g)];
    if (group.dispatch_queued) return;
    group.dispatch_queued = true;
    schedule(now_, [this, g]() {
      groups_[static_cast<std::size_t>(g)].dispatch_queued = false;
      try_dispatch(g);
    });
  }

  // Global step barrier: serve every shard once all in-flight envs wait.
  void lockstep_check() {
    if (admitting_) return;
    if (active_total_ > 0 && pending_total_ == active_total_) {
      for (GroupState& group : groups_) {
        const int pending = static_cast<int>(group.batcher.pending());
        if (pending == 0) continue;
        if (group.ready_since && *group.ready_since < now_) {
          record(ids_.rollout(group.index), WorkerClass::kRollout, group.device,
                 Phase::kIdle, *group.ready_since, now_, {{"barrier", 1}});
        }
        group.ready_since.reset();
        auto batch = group.batcher.poll(now_, BatchTriggerConfig{pending, kNoTimeout});
        start_inference(group.index, std::move(*batch));
      }
      pending_total_ = 0;
      return;
    }
    for (GroupState& group : groups_) {
      if (group.active > 0 && !group.inferring && !group.ready_since &&
          static_cast<int>(group.batcher.pending()) == group.active) {
        group.ready_since = now_;
      }
    }
  }

  void try_dispatch(int g) {
    GroupState& group = groups_[static_cast<std::size_t>(g)];
    if (group.inferring || group.batcher.pending() == 0) return;
    BatchTriggerConfig trigger = cfg_.trigger;
    // Once every in-flight env of the group is waiting, no further request
    // can arrive to grow the batch.
    trigger.b_max = std::min(trigger.b_max, std::max(1, group.active));
    auto batch = group.batcher.poll(now_, trigger);
    if (batch) {
      start_inference(g, std::move(*batch));
      return;
    }
    const auto deadline = group.batcher.deadline(trigger);
    if (deadline && (!group.wake_at || *group.wake_at != *deadline)) {
      group.wake_at = deadline;
      schedule(*deadline, [this, g]() {
        groups_[static_cast<std::size_t>(g)].wake_at.reset();
        try_dispatch(g);
      });
    }
  }

  void start_inference(int g, std::vector<InferenceRequest> requests) {
    GroupState& group = groups_[static_cast<std::size_t>(g)];
    group.inferring = true;
    Batch batch = std::make_shared<const std::vector<InferenceRequest>>(
        std::move(requests));
    acquire(group.device, [this, g, batch]() {
      GroupState& grp = groups_[static_cast<std::size_t>(g)];
      auto result = std::make_shared<InferenceResult>(
          rollout_infer(*batch, *this, spec_.workload, nullptr, nullptr));
      PolicyVersion oldest = result->actions.front().version;
      for (const StepRecord& r : result->actions) oldest = std::min(oldest, r.version);
      const TimeMs end = now_ + result->duration;
      record(ids_.rollout(g), WorkerClass::kRollout, grp.device, Phase::kInference,
             now_, end,
             {{"batch", static_cast<std::int64_t>(batch->size())},
              {"version", oldest}});
      schedule(end, [this, g, batch, result]() {
        GroupState& gr = groups_[static_cast<std::size_t>(g)];
        release(gr.device);
        gr.inferring = false;
        deliver(g, batch, result);
        if (!lockstep_) request_dispatch(g);
      });
    });
  }

  int chunk_steps(const EnvState& env) const {
    return std::min(cfg_.chunk_size,
                    cfg_.episode_length - env.worker.steps_taken());
  }

  void deliver(int g, const Batch& batch,
               const std::shared_ptr<InferenceResult>& result) {
    if (!spec_.workload.env_on_device) {
      for (std::size_t i = 0; i < batch->size(); ++i) {
        const int e = (*batch)[i].env_id;
        EnvState& env = envs_[static_cast<std::size_t>(e)];
        const StepRecord action = result->actions[i];
        const int steps = chunk_steps(env);
        const DurationMs d = spec_.workload.env_scale(e) *
                             sample_latency(spec_.workload.env_step, 1, env.latency_rng);
        record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kEnvStep, now_,
               now_ + d, {{"steps", steps}, {"version", action.version}});
        env_steps_ += steps;
        schedule(now_ + d, [this, e, action]() { chunk_done(e, action); });
      }
      return;
    }
    const int env_device = groups_[static_cast<std::size_t>(g)].env_device;
    acquire(env_device, [this, g, batch, result, env_device]() {
      GroupState& group = groups_[static_cast<std::size_t>(g)];
      std::int64_t steps = 0;
      for (const InferenceRequest& req : *batch) {
        steps += chunk_steps(envs_[static_cast<std::size_t>(req.env_id)]);
      }
      const DurationMs d = sample_latency(
          spec_.workload.env_step, static_cast<int>(batch->size()), group.rng);
      record(ids_.rollout(g), WorkerClass::kRollout, env_device, Phase::kEnvStep,
             now_, now_ + d,
             {{"batch", static_cast<std::int64_t>(batch->size())}, {"steps", steps}});
      env_steps_ += steps;
      schedule(now_ + d, [this, batch, result, env_device]() {
        release(env_device);
        for (std::size_t i = 0; i < batch->size(); ++i) {
          chunk_done((*batch)[i].env_id, result->actions[i]);
        }
      });
    });
  }

  void chunk_done(int e, const StepRecord& action) {
    EnvState& env = envs_[static_cast<std::size_t>(e)];
    EnvOutcome out = env.worker.finish_chunk(action, now_);
    if (auto* req = std::get_if<InferenceRequest>(&out)) {
      offer(e, *req);
      return;
    }
    GroupState& group = groups_[static_cast<std::size_t>(env.group)];
    --group.active;
    --active_total_;
    ++produced_;
    begin_transfer(e, std::move(std::get<TrajectoryCompletion>(out).trajectory));
    if (lockstep_) {
      lockstep_check();
    } else {
      request_dispatch(env.group);
    }
  }

  void begin_transfer(int e, Trajectory traj) {
    EnvState& env = envs_[static_cast<std::size_t>(e)];
    env.mode = EnvMode::kTransfer;
    const DurationMs comm = spec_.workload.trajectory_comm(nodes_);
    if (comm <= 0.0) {
      arrive(e, std::move(traj));
      return;
    }
    record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kQueueWait, now_,
           now_ + comm, {{"transfer", 1}});
    auto held = std::make_shared<Trajectory>(std::move(traj));
    schedule(now_ + comm, [this, e, held]() { arrive(e, std::move(*held)); });
  }

  void arrive(int e, Trajectory traj) {
    EnvState& env = envs_[static_cast<std::size_t>(e)];
    if (queue_.full()) {
      env.mode = EnvMode::kBlocked;
      env.held = std::move(traj);
      env.blocked_since = now_;
      blocked_.push_back(e);
      return;
    }
    queue_.try_push(std::move(traj));
    env_idle(e);
    actor_pull();
  }

  // ---- actor side ----

  void begin_round() {
    const int n = round_size(per_round_, total_trajectories(cfg_), round_);
    plan_ = plan_round(n, samples_per_trajectory(cfg_),
                       cfg_.streamer.micro_batch_size,
                       static_cast<int>(spec_.plan.actor_devices.size()));
    round_taken_ = 0;
    samples_have_ = 0;
    next_step_ = 0;
  }

  void actor_pull() {
    bool pulled = false;
    while (round_ < total_rounds_ && round_taken_ < plan_.trajectories &&
           !queue_.empty()) {
      Trajectory traj = *queue_.pop();
      admission_.consume(traj.policy_version);
      consumption_.push_back(ConsumptionRecord{round_, traj.env_id, traj.episode,
                                               traj.policy_version, round_});
      ++round_taken_;
      samples_have_ += traj.n_chunks;
      pulled = true;
      if (!blocked_.empty()) {
        const int e = blocked_.front();
        blocked_.pop_front();
        EnvState& env = envs_[static_cast<std::size_t>(e)];
        record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kQueueWait,
               env.blocked_since, now_, {{"backpressure", 1}});
        queue_.try_push(std::move(*env.held));
        env.held.reset();
        env_idle(e);
      }
    }
    if (pulled) {
      process_admissions();
      actor_try_step();
    }
  }

  void actor_try_step() {
    if (actor_busy_ || round_ >= total_rounds_) return;
    const int needed = samples_needed_for_step(
        plan_, next_step_, cfg_.streamer.micro_batch_size, cfg_.streamer.enabled);
    if (samples_have_ < needed) {
      actor_wait();
      return;
    }
    if (actor_waiting_) {
      actor_waiting_ = false;
      if (now_ > actor_wait_since_) {
        record(ids_.actor(), WorkerClass::kActor, std::nullopt, Phase::kQueueWait,
               actor_wait_since_, now_, {{"round", round_}});
      }
    }
    actor_busy_ = true;
    auto devices = std::make_shared<const std::vector<int>>(spec_.plan.actor_devices);
    acquire_all(devices, 0, [this, devices]() {
      TimeMs start = now_;
      if (colocated_ && next_step_ == 0 && cfg_.context_switch > 0.0) {
        for (int d : *devices) {
          record(ids_.actor(), WorkerClass::kActor, d, Phase::kIdle, start,
                 start + cfg_.context_switch, {{"context_switch", 1}});
        }
        start += cfg_.context_switch;
      }
      const DurationMs d = sample_latency(spec_.workload.train_microbatch,
                                          cfg_.streamer.micro_batch_size, train_rng_);
      for (int dev : *devices) {
        record(ids_.actor(), WorkerClass::kActor, dev, Phase::kTrainMicro, start,
               start + d, {{"round", round_}, {"step", next_step_}});
      }
      schedule(start + d, [this, devices]() {
        ++next_step_;
        if (next_step_ == plan_.dp_steps) {
          finish_round(devices);
          return;
        }
        for (int dev : *devices) release(dev);
        actor_busy_ = false;
        actor_try_step();
      });
    });
  }

  // Runs with the actor devices still held from the last micro-step.
  void finish_round(const std::shared_ptr<const std::vector<int>>& devices) {
    TimeMs t = now_;
    const DurationMs agg = spec_.workload.grad_aggregate;
    const DurationMs sync = spec_.workload.weight_sync;
    const PolicyVersion next = round_ + 1;
    for (int dev : *devices) {
      if (agg > 0.0) {
        record(ids_.actor(), WorkerClass::kActor, dev, Phase::kGradAggregate, t,
               t + agg, {{"round", round_}});
      }
      if (sync > 0.0) {
        record(ids_.actor(), WorkerClass::kActor, dev, Phase::kWeightSync, t + agg,
               t + agg + sync, {{"version", next}});
      }
    }
    t += agg + sync;
    if (colocated_ && cfg_.context_switch > 0.0) {
      for (int dev : *devices) {
        record(ids_.actor(), WorkerClass::kActor, dev, Phase::kIdle, t,
               t + cfg_.context_switch, {{"context_switch", 1}});
      }
      t += cfg_.context_switch;
    }
    schedule(t, [this, devices, next]() {
      for (int dev : *devices) release(dev);
      versions_.publish(PolicySnapshot{next, nullptr});
      ++round_;
      actor_busy_ = false;
      if (round_ == total_rounds_) {
        done_ = true;
        return;
      }
      begin_round();
      actor_pull();
      process_admissions();
      actor_try_step();
    });
  }

  void actor_wait() {
    if (actor_waiting_) return;
    actor_waiting_ = true;
    actor_wait_since_ = now_;
    const std::uint64_t token = ++wait_token_;
    schedule(
        now_ + cfg_.starvation_timeout,
        [this, token]() {
          if (actor_waiting_ && token == wait_token_ && !done_) {
            throw Error(ErrorCode::kStarvation,
                        "actor waited " + std::to_string(cfg_.starvation_timeout) +
                            " ms for trajectories in round " +
                            std::to_string(round_) + "; " + blocked_summary());
          }
        },
        /*watchdog=*/true);
  }

  std::string blocked_summary() const {
    std::ostringstream out;
    out << "blocked workers: actor(round " << round_ << ", samples "
        << samples_have_ << "/" << plan_.samples << ")";
    int queued = 0;
    for (const EnvState& env : envs_) {
      if (env.mode == EnvMode::kQueued || env.mode == EnvMode::kIdle) ++queued;
    }
    out << ", " << queued << " env(s) awaiting admission";
    if (!blocked_.empty()) out << ", " << blocked_.size() << " env(s) blocked on a full queue";
    for (const GroupState& g : groups_) {
      if (g.batcher.pending() > 0) {
        out << ", rollout " << g.index << " holding " << g.batcher.pending()
            << " request(s)";
      }
    }
    return out.str();
  }

  [[noreturn]] void report_deadlock() {
    throw Error(ErrorCode::kDeadlock,
                "no runnable event at t=" + std::to_string(now_) + " ms; " +
                    blocked_summary());
  }

  const RunSpec& spec_;
  const PipelineConfig& cfg_;
  std::uint64_t seed_;
  WorkerIds ids_;
  TraceRecorder recorder_;

  std::priority_queue<Scheduled, std::vector<Scheduled>, LaterFirst> events_;
  std::uint64_t next_seq_ = 0;
  std::int64_t live_events_ = 0;
  TimeMs now_ = 0.0;
  bool done_ = false;

  std::vector<DeviceState> devices_;
  std::vector<GroupState> groups_;
  std::vector<EnvState> envs_;
  int nodes_ = 1;
  bool lockstep_ = true;
  bool colocated_ = false;

  TrajectoryQueue queue_;
  VersionManager versions_;
  AdmissionController admission_;
  std::deque<int> admit_queue_;
  std::deque<int> blocked_;
  int idle_count_ = 0;
  bool lockstep_waiting_ = false;
  bool admitting_ = false;
  int active_total_ = 0;
  int pending_total_ = 0;
  std::int64_t produced_ = 0;
  std::int64_t env_steps_ = 0;

  int per_round_ = 1;
  std::int64_t total_rounds_ = 0;
  std::int64_t round_ = 0;
  RoundPlan plan_;
  int round_taken_ = 0;
  int samples_have_ = 0;
  int next_step_ = 0;
  bool actor_busy_ = false;
  bool actor_waiting_ = false;
  TimeMs actor_wait_since_ = 0.0;
  std::uint64_t wait_token_ = 0;
  RngStream train_rng_;
  std::vector<ConsumptionRecord> consumption_;
};

}  // namespace

RunResult run_virtual(const RunSpec& spec, std::uint64_t seed, std::ostream* sink) {
  validate_run(spec);
  VirtualEngine engine(spec, seed, sink);
  return engine.run();
}

}  // namespace asyncrl
