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

#include <sstream>

#include <gtest/gtest.h>

#include "asyncrl/config.hpp"
#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/strategy.hpp"
#include "test_util.hpp"

namespace asyncrl {
namespace {

using testing::deterministic_workload;
using testing::error_code_of;
using testing::make_spec;
using testing::Shape;

RunSpec small_spec() {
  Shape s;
  s.n_env = 2;
  s.n_es = 2;
  s.epochs = 2;
  s.micro = 2;
  s.global = 4;
  s.train_async = true;
  return make_spec(s, deterministic_workload(5, 2, 1, 7, 1, 2));
}

TEST(StrategyTest, VirtualRunProducesReport) {
  const RunSpec spec = small_spec();
  const StrategyOutcome out = run_strategy(spec, 1, EngineOptions{}, "small");
  EXPECT_EQ(out.report.name, "small");
  EXPECT_EQ(out.report.strategy, "disaggregated");
  EXPECT_DOUBLE_EQ(out.report.total_s, out.result.makespan() / 1000.0);
  EXPECT_EQ(out.report.trace_hash, trace_hash(out.result.trace));
  EXPECT_TRUE(check_run_invariants(spec, out.result).empty());
}

TEST(StrategyTest, SinkReceivesEveryEvent) {
  const RunSpec spec = small_spec();
  std::ostringstream sink;
  EngineOptions engine;
  engine.sink = &sink;
  const StrategyOutcome out = run_strategy(spec, 1, engine);
  std::istringstream in(sink.str());
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#' && line.rfind("worker,", 0) != 0) ++rows;
  }
  EXPECT_EQ(rows, out.result.trace.events.size());
}

TEST(StrategyTest, LiveRunNeedsLearner) {
  EngineOptions engine;
  engine.kind = EngineKind::kLive;
  EXPECT_EQ(error_code_of([&] { run_strategy(small_spec(), 1, engine); }),
            ErrorCode::kInvalidArgument);
}

TEST(StrategyTest, InvariantCheckFlagsViolations) {
  const RunSpec spec = small_spec();
  RunResult r = run_strategy(spec, 1, EngineOptions{}).result;
  ASSERT_TRUE(check_run_invariants(spec, r).empty());

  RunResult missing = r;
  missing.consumed -= 1;
  EXPECT_FALSE(check_run_invariants(spec, missing).empty());

  RunResult stale = r;
  stale.consumption.front().actor_version += 5;
  EXPECT_FALSE(check_run_invariants(spec, stale).empty());

  RunResult overlapping = r;
  TraceEvent e = overlapping.trace.events.front();
  ASSERT_TRUE(e.device.has_value());
  e.phase = Phase::kInference;
  overlapping.trace.events.push_back(e);
  EXPECT_FALSE(check_run_invariants(spec, overlapping).empty());
}

TEST(StrategyTest, RunExperimentFromConfig) {
  ExperimentConfig c = load_config(std::string(ASYNCRL_SOURCE_DIR) +
                                   "/configs/experiments/libero-pi05-8gpu-streamer.yaml");
  c = with_field(c, "run.n_rollout_epochs", "1");
  c = with_field(c, "run.n_es", "40");
  const StrategyOutcome out = run_experiment(c, 1);
  EXPECT_EQ(out.report.name, "libero-pi05-8gpu-streamer");
  EXPECT_EQ(out.report.config_fingerprint, config_fingerprint(c));
  EXPECT_TRUE(check_run_invariants(make_run_spec(c), out.result).empty());
}

}  // namespace
}  // namespace asyncrl
