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

// Experiment configuration files.
//
// A config is a YAML document with a `schema_version` and the sections
// placement, pipeline, run, engine, output, learner and workload. The
// workload is assembled from two preset files (env_preset and
// model_preset, looked up in `presets_dir`) with the config's own
// `workload` section applied on top.
//
// Environment variables named ASYNCRL_<SECTION>__<FIELD> override single
// fields before validation, e.g. ASYNCRL_PIPELINE__B_MAX=8. Values are
// parsed as YAML, so ASYNCRL_RUN__SEEDS="[1, 2]" works too.

#ifndef ASYNCRL_CONFIG_HPP_
#define ASYNCRL_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asyncrl/engine/run.hpp"
#include "asyncrl/pipeline/actor.hpp"
#include "asyncrl/pipeline/types.hpp"
#include "asyncrl/workload.hpp"

namespace YAML {
class Node;
}

namespace asyncrl {

inline constexpr int kSchemaVersion = 1;

enum class EngineKind { kVirtual, kLive };

std::string_view engine_kind_name(EngineKind kind);

struct LearnerSettings {
  int n_contexts = 4;
  int n_arms = 4;
  std::vector<int> optimal_arms = {0, 1, 2, 3};
  double learning_rate = 0.5;

  bool operator==(const LearnerSettings&) const = default;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string env_preset;
  std::string model_preset;
  std::string presets_dir;  // resolved absolute path

  WorkloadSpec workload;

  Strategy strategy = Strategy::kColocated;
  int n_devices = 1;
  Ratio ratio;
  bool allow_hybrid = false;

  PipelineConfig pipeline;
  std::vector<std::uint64_t> seeds;

  EngineKind engine = EngineKind::kVirtual;
  double time_scale = 0.1;  // real ms per virtual ms in live mode

  std::string output_dir = "out";
  LearnerSettings learner;

  bool operator==(const ExperimentConfig&) const = default;
};

using EnvOverrides = std::map<std::string, std::string>;

// ASYNCRL_<SECTION>__<FIELD> variables from the process environment;
// ASYNCRL_* names without a double underscore are not overrides.
EnvOverrides environment_overrides();

// Parses and fully validates a config. Relative presets_dir paths resolve
// against `base_dir`. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& yaml_text,
                              const std::string& base_dir,
                              const EnvOverrides& overrides = {});

ExperimentConfig load_config(const std::string& path,
                             const EnvOverrides& overrides = {});

// Emits a self-contained YAML document: the resolved workload is written
// out in full so the file parses back to an identical config.
std::string serialize_config(const ExperimentConfig& config);

// Stable hash of the run-relevant parts of the config (seeds and output
// paths excluded).
std::string config_fingerprint(const ExperimentConfig& config);

PlacementPlan make_placement(const ExperimentConfig& config);

RunSpec make_run_spec(const ExperimentConfig& config);

toyrl::BanditEnv make_bandit(const ExperimentConfig& config);

LearnerConfig make_learner(const ExperimentConfig& config);

// Applies one "section.field=value" assignment, as used by sweeps and the
// override mechanism, then re-validates.
ExperimentConfig with_field(const ExperimentConfig& config,
                            const std::string& field, const std::string& value);

}  // namespace asyncrl

#endif  // ASYNCRL_CONFIG_HPP_
