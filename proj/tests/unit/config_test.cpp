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

#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "asyncrl/config.hpp"
#include "asyncrl/error.hpp"

namespace asyncrl {
namespace {

namespace fs = std::filesystem;

const fs::path kExperiments = fs::path(ASYNCRL_SOURCE_DIR) / "configs" / "experiments";

std::string minimal_yaml() {
  return R"(schema_version: 1
name: tiny
placement:
  strategy: disaggregated
  n_devices: 2
pipeline:
  global_batch: 4
run:
  n_env: 2
  n_es: 2
  seeds: [3]
workload:
  env_step: {kind: deterministic, value: 5}
  inference: {kind: batch_affine, base: 2, per_item: 1}
  train_microbatch: {kind: deterministic, value: 7}
)";
}

// Returns the field named by the ConfigError `fn` throws.
template <typename Fn>
std::string failing_field(Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ConfigTest, ShippedExperimentsParseAndRoundTrip) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(kExperiments)) {
    if (entry.path().extension() != ".yaml") continue;
    ++count;
    SCOPED_TRACE(entry.path().filename().string());
    const ExperimentConfig c = load_config(entry.path().string());
    EXPECT_EQ(c.name, entry.path().stem().string());
    EXPECT_FALSE(c.seeds.empty());
    const ExperimentConfig back = parse_config(serialize_config(c), c.presets_dir);
    EXPECT_EQ(back, c);
    EXPECT_EQ(config_fingerprint(back), config_fingerprint(c));
    EXPECT_NO_THROW(make_run_spec(c));
  }
  EXPECT_GE(count, 15);
}

TEST(ConfigTest, MinimalConfigDefaults) {
  const ExperimentConfig c = parse_config(minimal_yaml(), ".");
  EXPECT_EQ(c.strategy, Strategy::kDisaggregated);
  EXPECT_EQ(c.ratio, (Ratio{1, 1}));
  EXPECT_EQ(c.pipeline.max_staleness, 1);
  EXPECT_EQ(c.pipeline.n_rollout_epochs, 1);
  EXPECT_FALSE(c.pipeline.queue_capacity.has_value());
  EXPECT_EQ(c.engine, EngineKind::kVirtual);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3}));
  EXPECT_DOUBLE_EQ(c.workload.env_step.mean(1), 5.0);
}

TEST(ConfigTest, ErrorsNameTheField) {
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml() + "bogus_key: 1\n", ".");
            }),
            "bogus_key");
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml(), ".", {{"pipeline.b_maxx", "3"}});
            }),
            "pipeline.b_maxx");
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml(), ".",
                           {{"placement.n_devices", "7"}, {"placement.ratio", "3:1"}});
            }),
            "placement.ratio");
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml(), ".", {{"placement.strategy", "ring"}});
            }),
            "placement.strategy");
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml(), ".", {{"run.seeds", "[]"}});
            }),
            "run.seeds");
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml(), ".", {{"engine.kind", "quantum"}});
            }),
            "engine.kind");
  EXPECT_EQ(failing_field([] { parse_config(minimal_yaml(), ".", {{"schema_version", "2"}}); }),
            "schema_version");
  EXPECT_EQ(failing_field([] { parse_config("[1, 2]", "."); }), "<root>");
  EXPECT_EQ(failing_field([] { load_config("/nonexistent/run.yaml"); }), "--config");
}

TEST(ConfigTest, WorkloadAndPipelineErrorsNameSection) {
  const std::string field = failing_field([] {
    parse_config(minimal_yaml(), ".", {{"workload.grad_aggregate", "-1"}});
  });
  EXPECT_EQ(field.rfind("workload", 0), 0u) << field;
  const std::string pfield = failing_field([] {
    parse_config(minimal_yaml(), ".", {{"pipeline.train_async", "true"},
                                       {"placement.strategy", "colocated"}});
  });
  EXPECT_EQ(pfield.rfind("pipeline", 0), 0u) << pfield;
}

TEST(ConfigTest, LiveEngineRejectsOnDeviceEnvs) {
  EXPECT_EQ(failing_field([] {
              parse_config(minimal_yaml() + "engine: {kind: live}\n", ".",
                           {{"workload.env_on_device", "true"}});
            }),
            "engine.kind");
}

TEST(ConfigTest, EnvironmentOverrides) {
  ::setenv("ASYNCRL_PIPELINE__B_MAX", "8", 1);
  ::setenv("ASYNCRL_RUN__SEEDS", "[1, 2]", 1);
  ::setenv("ASYNCRL_UNRELATED", "x", 1);
  const EnvOverrides env = environment_overrides();
  ::unsetenv("ASYNCRL_UNRELATED");
  EXPECT_EQ(env.count("unrelated"), 0u);
  ::unsetenv("ASYNCRL_PIPELINE__B_MAX");
  ::unsetenv("ASYNCRL_RUN__SEEDS");
  EXPECT_EQ(env.at("pipeline.b_max"), "8");
  const ExperimentConfig c = parse_config(minimal_yaml(), ".", env);
  EXPECT_EQ(c.pipeline.trigger.b_max, 8);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2}));
}

TEST(ConfigTest, FingerprintIgnoresSeedsAndOutput) {
  const ExperimentConfig a = parse_config(minimal_yaml(), ".");
  const ExperimentConfig b =
      parse_config(minimal_yaml(), ".", {{"run.seeds", "[9, 10]"}, {"output.dir", "elsewhere"}});
  EXPECT_EQ(config_fingerprint(a), config_fingerprint(b));
  const ExperimentConfig c = with_field(a, "pipeline.b_max", "2");
  EXPECT_NE(config_fingerprint(a), config_fingerprint(c));
  EXPECT_EQ(make_run_spec(a).fingerprint, config_fingerprint(a));
}

TEST(ConfigTest, WithFieldRevalidates) {
  const ExperimentConfig a = parse_config(minimal_yaml(), ".");
  EXPECT_EQ(with_field(a, "run.n_env", "6").pipeline.n_env, 6);
  EXPECT_EQ(failing_field([&] { with_field(a, "run.n_env", "0"); }), "run.n_env");
}

TEST(ConfigTest, PresetsMergeWithInlineWorkload) {
  const ExperimentConfig c =
      load_config((kExperiments / "libero-pi0-8gpu-colocated-measured.yaml").string());
  EXPECT_EQ(c.model_preset, "pi0");
  EXPECT_DOUBLE_EQ(c.workload.env_step.mean(1), 2000.0);
  EXPECT_DOUBLE_EQ(c.workload.weight_sync, 1000.0);
}

TEST(ConfigTest, LearnerFromConfig) {
  const ExperimentConfig c = load_config((kExperiments / "toy-bandit-async.yaml").string());
  const LearnerConfig l = make_learner(c);
  EXPECT_EQ(l.env.n_arms, 4);
  EXPECT_EQ(l.env.optimal_arm, (std::vector<int>{2, 0, 3, 1}));
  EXPECT_DOUBLE_EQ(l.learning_rate, 0.5);
  EXPECT_EQ(c.engine, EngineKind::kLive);
}

}  // namespace
}  // namespace asyncrl
