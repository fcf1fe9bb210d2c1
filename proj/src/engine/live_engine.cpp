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

#include "asyncrl/engine/live_engine.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/pipeline/batcher.hpp"
#include "asyncrl/pipeline/channels.hpp"
#include "asyncrl/pipeline/env_worker.hpp"
#include "asyncrl/pipeline/rollout.hpp"

namespace asyncrl {

namespace {

using Clock = std::chrono::steady_clock;

// Many producers, one consumer.
template <typename T>
class Channel {
 public:
  void send(T item) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      items_.push_back(std::move(item));
    }
    cv_.notify_one();
  }

  void close() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

  std::optional<T> receive() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [this] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    return item;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
  bool closed_ = false;
};

struct LiveEnv {
  LiveEnv(int id, const PipelineConfig& c, std::uint64_t seed, int group_index)
      : worker(id, c.episode_length, c.chunk_size),
        group(group_index),
        latency_rng(seed, StreamKind::kEnvLatency, static_cast<std::uint64_t>(id)),
        context_rng(seed, StreamKind::kEnvContext, static_cast<std::uint64_t>(id)),
        policy_rng(seed, StreamKind::kPolicy, static_cast<std::uint64_t>(id)) {}

  EnvWorker worker;
  int group;
  RngStream latency_rng;
  RngStream context_rng;
  RngStream policy_rng;
  std::int64_t episodes_started = 0;
  bool running = false;
  std::optional<StepRecord> mailbox;
};

struct LiveGroup {
  int index = 0;
  int device = 0;
  DynamicBatcher batcher;
  int active = 0;
  std::optional<std::vector<InferenceRequest>> ready;  // lockstep release
};

class LiveEngine final : public SnapshotSource, public RngSource {
 public:
  LiveEngine(const RunSpec& spec, std::uint64_t seed, const LiveOptions& options)
      : spec_(spec),
        cfg_(spec.pipeline),
        seed_(seed),
        options_(options),
        ids_{static_cast<int>(spec.plan.rollout_devices.size())},
        recorder_(options.sink),
        queue_(cfg_.queue_capacity),
        versions_(initial_snapshot(options.learner)),
        admission_(trajectories_per_round(cfg_), effective_staleness(cfg_),
                   total_trajectories(cfg_)),
        train_rng_(seed, StreamKind::kTrain, 0) {
    if (spec.workload.env_on_device) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the live engine only runs host-side envs");
    }
    if (options.time_scale < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "time_scale must be >= 0");
    }
    for (int g = 0; g < ids_.n_rollout; ++g) {
      LiveGroup group;
      group.index = g;
      group.device = spec.plan.rollout_devices[g];
      groups_.push_back(std::move(group));
    }
    for (int e = 0; e < cfg_.n_env; ++e) {
      envs_.push_back(std::make_unique<LiveEnv>(e, cfg_, seed, e % ids_.n_rollout));
    }
    int max_device = 0;
    for (int d : spec.plan.rollout_devices) max_device = std::max(max_device, d);
    for (int d : spec.plan.actor_devices) max_device = std::max(max_device, d);
    device_mu_ = std::vector<std::mutex>(static_cast<std::size_t>(max_device) + 1);
    nodes_ = (spec.plan.n_devices + cfg_.devices_per_node - 1) / cfg_.devices_per_node;
    lockstep_ = !cfg_.rollout_async;
    colocated_ = spec.plan.strategy == Strategy::kColocated;
    if (options.sink != nullptr) write_trace_header(*options.sink, spec.fingerprint, seed);
  }

  const PolicySnapshot& snapshot_for(const InferenceRequest& r) const override {
    return cfg_.mid_episode_adoption ? versions_.latest() : versions_.at(r.version);
  }

  RngStream& policy_rng(int env_id) override {
    return envs_[static_cast<std::size_t>(env_id)]->policy_rng;
  }

  RunResult run() {
    start_ = Clock::now();
    std::thread writer([this] {
      while (auto event = trace_channel_.receive()) recorder_.record(std::move(*event));
    });
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (int e = 0; e < cfg_.n_env; ++e) env_idle_locked(e);
    }
    std::vector<std::thread> threads;
    threads.emplace_back([this] { guarded([this] { actor_loop(); }); });
    for (int g = 0; g < ids_.n_rollout; ++g) {
      threads.emplace_back([this, g] { guarded([this, g] { group_loop(g); }); });
    }
    for (int e = 0; e < cfg_.n_env; ++e) {
      threads.emplace_back([this, e] { guarded([this, e] { env_loop(e); }); });
    }
    for (std::thread& t : threads) t.join();
    trace_channel_.close();
    writer.join();
    if (failure_) std::rethrow_exception(failure_);

    RunResult result;
    result.trace = recorder_.finish(spec_.fingerprint, seed_);
    result.produced = produced_;
    result.consumed = admission_.consumed();
    result.env_steps = env_steps_;
    result.rounds = rounds_done_;
    result.final_version = versions_.latest().version;
    result.consumption = std::move(consumption_);
    result.final_weights = *versions_.latest().weights;
    result.success_curve = std::move(success_curve_);
    result.round_inputs = std::move(round_inputs_);
    return result;
  }

 private:
  static PolicySnapshot initial_snapshot(const LearnerConfig& learner) {
    auto zeros = toyrl::LinearPolicy::zeros(learner.env.n_arms, learner.env.context_dim);
    return PolicySnapshot{0, std::make_shared<const std::vector<double>>(zeros.weights)};
  }

  template <typename F>
  void guarded(F&& body) {
    try {
      body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!failure_) failure_ = std::current_exception();
      abort_ = true;
      notify_all();
    }
  }

  void notify_all() {
    env_cv_.notify_all();
    group_cv_.notify_all();
    actor_cv_.notify_all();
  }

  TimeMs now() const {
    const double real_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return options_.time_scale > 0.0 ? real_ms / options_.time_scale : real_ms;
  }

  Clock::time_point real_time(TimeMs virtual_ms) const {
    const double real_ms =
        options_.time_scale > 0.0 ? virtual_ms * options_.time_scale : virtual_ms;
    return start_ + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double, std::milli>(real_ms));
  }

  void pause(DurationMs virtual_ms) const {
    if (options_.time_scale <= 0.0 || virtual_ms <= 0.0) return;
    std::this_thread::sleep_for(
        std::chrono::duration<double, std::milli>(virtual_ms * options_.time_scale));
  }

  void record(int worker, WorkerClass cls, std::optional<int> device, Phase phase,
              TimeMs start, TimeMs end, TraceMeta meta) {
    trace_channel_.send(
        TraceEvent{worker, cls, device, phase, start, std::max(start, end), std::move(meta)});
  }

  // ---- admission (all *_locked helpers require mu_) ----

  void env_idle_locked(int e) {
    envs_[static_cast<std::size_t>(e)]->running = false;
    if (lockstep_) {
      ++idle_count_;
      if (idle_count_ == cfg_.n_env) lockstep_waiting_ = true;
    } else {
      admit_queue_.push_back(e);
    }
    process_admissions_locked();
  }

  void process_admissions_locked() {
    const PolicyVersion current = versions_.latest().version;
    if (lockstep_) {
      if (lockstep_waiting_) {
        int admitted = 0;
        admitting_ = true;
        for (int e = 0; e < cfg_.n_env; ++e) {
          if (!admission_.can_admit(current)) break;
          start_episode_locked(e);
          ++admitted;
        }
        admitting_ = false;
        if (admitted > 0) {
          lockstep_waiting_ = false;
          lockstep_check_locked();
        }
      }
    } else {
      while (!admit_queue_.empty() && admission_.can_admit(current)) {
        const int e = admit_queue_.front();
        admit_queue_.pop_front();
        start_episode_locked(e);
      }
    }
    if (admission_.exhausted()) env_cv_.notify_all();
  }

  void start_episode_locked(int e) {
    LiveEnv& env = *envs_[static_cast<std::size_t>(e)];
    const PolicyVersion v = versions_.latest().version;
    // Env latencies follow the episode's admission index, not the env.
    env.latency_rng = RngStream(seed_, StreamKind::kEnvLatency,
                                static_cast<std::uint64_t>(admission_.started()));
    admission_.admit(v);
    InferenceRequest req = env.worker.begin_episode(env.episodes_started, v, now());
    ++env.episodes_started;
    env.running = true;
    if (lockstep_) --idle_count_;
    ++groups_[static_cast<std::size_t>(env.group)].active;
    ++active_total_;
    offer_locked(e, req);
  }

  void offer_locked(int e, InferenceRequest req) {
    LiveEnv& env = *envs_[static_cast<std::size_t>(e)];
    const auto& bandit = options_.learner.env;
    req.context = std::min(bandit.n_contexts - 1,
                           static_cast<int>(env.context_rng.uniform() * bandit.n_contexts));
    req.enqueue_time = std::min(req.enqueue_time, now());
    groups_[static_cast<std::size_t>(env.group)].batcher.offer(req, now());
    if (lockstep_) {
      ++pending_total_;
      lockstep_check_locked();
    } else {
      group_cv_.notify_all();
    }
  }

  void lockstep_check_locked() {
    if (admitting_ || active_total_ == 0 || pending_total_ != active_total_) return;
    for (LiveGroup& group : groups_) {
      const int pending = static_cast<int>(group.batcher.pending());
      if (pending == 0) continue;
      group.ready = group.batcher.poll(now(), BatchTriggerConfig{pending, kNoTimeout});
    }
    pending_total_ = 0;
    group_cv_.notify_all();
  }

  // ---- env worker ----

  void env_loop(int e) {
    LiveEnv& env = *envs_[static_cast<std::size_t>(e)];
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      env_cv_.wait(lock, [&] {
        return abort_ || env.mailbox || (!env.running && admission_.exhausted());
      });
      if (abort_ || !env.mailbox) return;
      const StepRecord action = *env.mailbox;
      env.mailbox.reset();
      const int steps =
          std::min(cfg_.chunk_size, cfg_.episode_length - env.worker.steps_taken());
      const DurationMs d = spec_.workload.env_scale(e) *
                             sample_latency(spec_.workload.env_step, 1, env.latency_rng);
      lock.unlock();
      const TimeMs t0 = now();
      pause(d);
      const TimeMs t1 = now();
      record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kEnvStep, t0, t1,
             {{"steps", steps}, {"version", action.version}});
      lock.lock();
      env_steps_ += steps;
      EnvOutcome out = env.worker.finish_chunk(action, now());
      if (auto* req = std::get_if<InferenceRequest>(&out)) {
        offer_locked(e, *req);
        continue;
      }
      Trajectory traj = std::move(std::get<TrajectoryCompletion>(out).trajectory);
      LiveGroup& group = groups_[static_cast<std::size_t>(env.group)];
      --group.active;
      --active_total_;
      ++produced_;
      if (lockstep_) {
        lockstep_check_locked();
      } else {
        group_cv_.notify_all();
      }
      const DurationMs comm = spec_.workload.trajectory_comm(nodes_);
      if (comm > 0.0) {
        lock.unlock();
        const TimeMs c0 = now();
        pause(comm);
        record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kQueueWait, c0,
               now(), {{"transfer", 1}});
        lock.lock();
      }
      if (queue_.full()) {
        const TimeMs b0 = now();
        env_cv_.wait(lock, [&] { return abort_ || !queue_.full(); });
        if (abort_) return;
        record(ids_.env(e), WorkerClass::kEnv, std::nullopt, Phase::kQueueWait, b0,
               now(), {{"backpressure", 1}});
      }
      queue_.try_push(std::move(traj));
      actor_cv_.notify_all();
      env_idle_locked(e);
    }
  }

  // ---- rollout worker ----

  void group_loop(int g) {
    LiveGroup& group = groups_[static_cast<std::size_t>(g)];
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      if (abort_ || done_) return;
      std::optional<std::vector<InferenceRequest>> batch;
      if (lockstep_) {
        group_cv_.wait(lock, [&] { return abort_ || done_ || group.ready.has_value(); });
        if (abort_ || done_) return;
        batch = std::move(group.ready);
        group.ready.reset();
      } else {
        BatchTriggerConfig trigger = cfg_.trigger;
        trigger.b_max = std::min(trigger.b_max, std::max(1, group.active));
        batch = group.batcher.poll(now(), trigger);
        if (!batch) {
          const auto deadline = group.batcher.deadline(trigger);
          if (deadline) {
            group_cv_.wait_until(lock, real_time(*deadline));
          } else {
            group_cv_.wait(lock);
          }
          continue;
        }
      }
      lock.unlock();
      std::lock_guard<std::mutex> device(device_mu_[static_cast<std::size_t>(group.device)]);
      lock.lock();
      const InferenceResult result =
          rollout_infer(*batch, *this, spec_.workload, &options_.learner.env, this);
      lock.unlock();
      const TimeMs t0 = now();
      pause(result.duration);
      const TimeMs t1 = now();
      PolicyVersion oldest = result.actions.front().version;
      for (const StepRecord& r : result.actions) oldest = std::min(oldest, r.version);
      record(ids_.rollout(g), WorkerClass::kRollout, group.device, Phase::kInference, t0,
             t1, {{"batch", static_cast<std::int64_t>(batch->size())}, {"version", oldest}});
      lock.lock();
      for (std::size_t i = 0; i < batch->size(); ++i) {
        envs_[static_cast<std::size_t>((*batch)[i].env_id)]->mailbox = result.actions[i];
      }
      env_cv_.notify_all();
    }
  }

  // ---- actor ----

  void hold_actor_devices(DurationMs virtual_ms, Phase phase, TraceMeta meta) {
    std::vector<std::unique_lock<std::mutex>> held;
    for (int d : spec_.plan.actor_devices) {
      held.emplace_back(device_mu_[static_cast<std::size_t>(d)]);
    }
    const TimeMs t0 = now();
    pause(virtual_ms);
    const TimeMs t1 = now();
    for (int d : spec_.plan.actor_devices) {
      record(ids_.actor(), WorkerClass::kActor, d, phase, t0, t1, meta);
    }
  }

  // Pulls trajectories until `samples_needed` samples of the round are in.
  std::vector<Trajectory> pull(int round, int want_trajectories, int samples_needed,
                               int& samples_have, int& taken) {
    std::vector<Trajectory> fresh;
    std::unique_lock<std::mutex> lock(mu_);
    const double timeout_ms = options_.time_scale > 0.0
                                  ? cfg_.starvation_timeout * options_.time_scale
                                  : cfg_.starvation_timeout;
    const TimeMs wait_start = now();
    auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double, std::milli>(timeout_ms));
    while (samples_have < samples_needed) {
      if (abort_) return fresh;
      if (queue_.empty()) {
        if (actor_cv_.wait_until(lock, deadline) == std::cv_status::timeout &&
            queue_.empty() && !abort_) {
          throw Error(ErrorCode::kStarvation,
                      "actor starved in round " + std::to_string(round));
        }
        continue;
      }
      while (!queue_.empty() && taken < want_trajectories) {
        Trajectory t = *queue_.pop();
        admission_.consume(t.policy_version);
        consumption_.push_back(
            ConsumptionRecord{round, t.env_id, t.episode, t.policy_version, round});
        samples_have += t.n_chunks;
        ++taken;
        fresh.push_back(std::move(t));
      }
      env_cv_.notify_all();
      process_admissions_locked();
    }
    const TimeMs waited_until = now();
    lock.unlock();
    if (waited_until - wait_start > 0.0 && !fresh.empty()) {
      record(ids_.actor(), WorkerClass::kActor, std::nullopt, Phase::kQueueWait,
             wait_start, waited_until, {{"round", round}});
    }
    return fresh;
  }

  void actor_loop() {
    const int per_round = trajectories_per_round(cfg_);
    const std::int64_t total = total_trajectories(cfg_);
    const std::int64_t rounds = total_rounds(per_round, total);
    const int micro = cfg_.streamer.micro_batch_size;
    const int width = static_cast<int>(spec_.plan.actor_devices.size());
    const LearnerConfig& learner = options_.learner;
    for (std::int64_t round = 0; round < rounds; ++round) {
      const RoundPlan plan = plan_round(round_size(per_round, total, round),
                                        samples_per_trajectory(cfg_), micro, width);
      PolicySnapshot previous;
      {
        std::lock_guard<std::mutex> lock(mu_);
        previous = versions_.latest();
      }
      const toyrl::LinearPolicy policy = policy_from(previous, learner.env);
      GradientAccumulator accumulator(policy, micro);
      std::vector<Trajectory> inputs;
      int samples_have = 0;
      int taken = 0;
      for (int step = 0; step < plan.dp_steps; ++step) {
        const int needed =
            samples_needed_for_step(plan, step, micro, cfg_.streamer.enabled);
        auto fresh = pull(static_cast<int>(round), plan.trajectories, needed,
                          samples_have, taken);
        if (abort_flag()) return;
        if (cfg_.streamer.enabled) {
          accumulator.add(round_samples(fresh, learner.env));
        }
        for (Trajectory& t : fresh) inputs.push_back(std::move(t));
        if (colocated_ && step == 0 && cfg_.context_switch > 0.0) {
          hold_actor_devices(cfg_.context_switch, Phase::kIdle, {{"context_switch", 1}});
        }
        hold_actor_devices(
            sample_latency(spec_.workload.train_microbatch, micro, train_rng_),
            Phase::kTrainMicro, {{"round", round}, {"step", step}});
      }

      PolicySnapshot next;
      if (cfg_.streamer.enabled) {
        accumulator.finish();
        auto updated = toyrl::apply_update(policy, accumulator.gradient(),
                                           learner.learning_rate, accumulator.samples());
        next = PolicySnapshot{previous.version + 1,
                              std::make_shared<const std::vector<double>>(
                                  std::move(updated.weights))};
      } else {
        next = actor_update(previous, inputs, cfg_.streamer, learner);
      }
      if (spec_.workload.grad_aggregate > 0.0) {
        hold_actor_devices(spec_.workload.grad_aggregate, Phase::kGradAggregate,
                           {{"round", round}});
      }
      if (spec_.workload.weight_sync > 0.0) {
        hold_actor_devices(spec_.workload.weight_sync, Phase::kWeightSync,
                           {{"version", next.version}});
      }
      if (colocated_ && cfg_.context_switch > 0.0) {
        hold_actor_devices(cfg_.context_switch, Phase::kIdle, {{"context_switch", 1}});
      }
      const double success =
          toyrl::success_rate(policy_from(next, learner.env), learner.env);
      std::lock_guard<std::mutex> lock(mu_);
      versions_.publish(next);
      success_curve_.push_back(SuccessPoint{round + 1, success, next.version});
      round_inputs_.push_back(std::move(inputs));
      rounds_done_ = round + 1;
      process_admissions_locked();
    }
    std::lock_guard<std::mutex> lock(mu_);
    done_ = true;
    notify_all();
  }

  bool abort_flag() {
    std::lock_guard<std::mutex> lock(mu_);
    return abort_;
  }

  const RunSpec& spec_;
  const PipelineConfig& cfg_;
  std::uint64_t seed_;
  LiveOptions options_;
  WorkerIds ids_;
  TraceRecorder recorder_;
  Channel<TraceEvent> trace_channel_;
  Clock::time_point start_;

  std::mutex mu_;
  std::condition_variable env_cv_;
  std::condition_variable group_cv_;
  std::condition_variable actor_cv_;
  std::vector<std::mutex> device_mu_;
  bool abort_ = false;
  bool done_ = false;
  std::exception_ptr failure_;

  std::vector<LiveGroup> groups_;
  std::vector<std::unique_ptr<LiveEnv>> envs_;
  int nodes_ = 1;
  bool lockstep_ = true;
  bool colocated_ = false;
  TrajectoryQueue queue_;
  VersionManager versions_;
  AdmissionController admission_;
  std::deque<int> admit_queue_;
  int idle_count_ = 0;
  bool lockstep_waiting_ = false;
  bool admitting_ = false;
  int active_total_ = 0;
  int pending_total_ = 0;
  std::int64_t produced_ = 0;
  std::int64_t env_steps_ = 0;
  std::int64_t rounds_done_ = 0;
  RngStream train_rng_;
  std::vector<ConsumptionRecord> consumption_;
  std::vector<SuccessPoint> success_curve_;
  std::vector<std::vector<Trajectory>> round_inputs_;
};

}  // namespace

RunResult run_live(const RunSpec& spec, std::uint64_t seed, const LiveOptions& options) {
  validate_run(spec);
  LiveEngine engine(spec, seed, options);
  return engine.run();
}

std::vector<double> replay_updates(const RunResult& run, const StreamerConfig& streamer,
                                   const LearnerConfig& learner) {
  auto zeros = toyrl::LinearPolicy::zeros(learner.env.n_arms, learner.env.context_dim);
  PolicySnapshot snapshot{0, std::make_shared<const std::vector<double>>(zeros.weights)};
  for (const auto& round : run.round_inputs) {
    snapshot = actor_update(snapshot, round, streamer, learner);
  }
  return *snapshot.weights;
}

}  // namespace asyncrl
