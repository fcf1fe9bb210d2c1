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

#include <cmath>
#include <map>
#include <utility>

#include <gtest/gtest.h>

#include "asyncrl/engine/live_engine.hpp"
#include "asyncrl/engine/virtual_engine.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/strategy.hpp"
#include "asyncrl/toyrl.hpp"
#include "test_util.hpp"

namespace asyncrl {
namespace {

using testing::deterministic_workload;
using testing::error_code_of;
using testing::make_spec;
using testing::Shape;

LearnerConfig learner() {
  return LearnerConfig{toyrl::BanditEnv::one_hot(4, 4, {2, 0, 3, 1}, 2), 0.5};
}

RunSpec toy_spec(bool async, bool streamer) {
  Shape s;
  s.n_env = 4;
  s.n_es = 2;
  s.epochs = 6;
  s.micro = 2;
  s.global = 8;
  s.train_async = async;
  s.rollout_async = async;
  s.streamer = streamer;
  WorkloadSpec w = deterministic_workload(1, 1, 0.25, 2, 1, 1);
  w.env_step = LatencyModel::log_normal_shifted(0.0, 0.5, 1.0);
  RunSpec spec = make_spec(s, w);
  spec.pipeline.trigger = BatchTriggerConfig{4, 2};
  spec.pipeline.starvation_timeout = 60000;
  return spec;
}

LiveOptions fast_options() { return LiveOptions{0.001, learner(), nullptr}; }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  EXPECT_EQ(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

TEST(LiveEngineTest, RunsSatisfyInvariants) {
  for (bool async : {false, true}) {
    RunSpec spec = toy_spec(async, async);
    RunResult r = run_live(spec, 3, fast_options());
    EXPECT_TRUE(check_run_invariants(spec, r).empty()) << "async " << async;
    EXPECT_EQ(r.rounds, 6);
    EXPECT_EQ(r.final_version, 6);
    EXPECT_EQ(r.round_inputs.size(), 6u);
    EXPECT_EQ(r.success_curve.size(), 6u);
    EXPECT_EQ(r.final_weights.size(), 16u);
    if (!async) EXPECT_EQ(r.max_gap(), 0);
  }
}

TEST(LiveEngineTest, ReplayReproducesFinalWeights) {
  RunSpec spec = toy_spec(true, false);
  RunResult r = run_live(spec, 5, fast_options());
  EXPECT_EQ(replay_updates(r, spec.pipeline.streamer, learner()), r.final_weights);
}

TEST(LiveEngineTest, StreamerMatchesFullBatchUpdates) {
  RunSpec spec = toy_spec(true, true);
  RunResult r = run_live(spec, 7, fast_options());
  StreamerConfig full = spec.pipeline.streamer;
  full.enabled = false;
  full.micro_batch_size = full.global_batch_size;
  EXPECT_LE(max_abs_diff(r.final_weights, replay_updates(r, full, learner())), 1e-12);
}

TEST(LiveEngineTest, RejectsOnDeviceEnvs) {
  RunSpec spec = toy_spec(false, false);
  spec.workload.env_on_device = true;
  spec.workload.env_step = LatencyModel::batched_env_affine(1, 0);
  EXPECT_EQ(error_code_of([&] { run_live(spec, 1, fast_options()); }),
            ErrorCode::kInvalidArgument);
}

TEST(LiveEngineTest, StarvationWatchdogFires) {
  RunSpec spec = toy_spec(false, false);
  spec.workload.env_step = LatencyModel::deterministic(1000);
  spec.pipeline.starvation_timeout = 10;
  EXPECT_EQ(error_code_of([&] { run_live(spec, 1, fast_options()); }),
            ErrorCode::kStarvation);
}

std::vector<TraceEvent> transitions(const Trace& trace) {
  std::vector<TraceEvent> out;
  for (const TraceEvent& e : trace.events) {
    if (is_busy(e.phase)) out.push_back(e);
  }
  return out;
}

// A single env with synchronous phases admits exactly one event order, so
// both engines must produce the same transitions and version tags.
TEST(LiveEngineTest, AgreesWithVirtualEngineOnForcedOrder) {
  Shape s;
  s.n_es = 3;
  s.epochs = 3;
  s.micro = 3;
  s.global = 3;
  RunSpec spec = make_spec(s, deterministic_workload(4, 2, 0, 3, 1, 1));
  RunResult v = run_virtual(spec, 1);
  RunResult l = run_live(spec, 1, LiveOptions{0.01, learner(), nullptr});
  const auto vt = transitions(v.trace);
  const auto lt = transitions(l.trace);
  ASSERT_EQ(vt.size(), lt.size());
  for (std::size_t i = 0; i < vt.size(); ++i) {
    EXPECT_EQ(vt[i].phase, lt[i].phase) << i;
    EXPECT_EQ(vt[i].worker, lt[i].worker) << i;
    EXPECT_EQ(vt[i].device, lt[i].device) << i;
    EXPECT_EQ(vt[i].meta, lt[i].meta) << i;
  }
  ASSERT_EQ(v.consumption.size(), l.consumption.size());
  for (std::size_t i = 0; i < v.consumption.size(); ++i) {
    EXPECT_EQ(v.consumption[i].trajectory_version, l.consumption[i].trajectory_version);
    EXPECT_EQ(v.consumption[i].actor_version, l.consumption[i].actor_version);
  }
  EXPECT_EQ(v.env_steps, l.env_steps);
}

}  // namespace
}  // namespace asyncrl
