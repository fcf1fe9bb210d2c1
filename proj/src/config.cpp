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

#include "asyncrl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "asyncrl/engine/trace.hpp"
#include "asyncrl/error.hpp"

extern char** environ;

namespace asyncrl {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kEnvPrefix = "ASYNCRL_";

const std::map<std::string, std::set<std::string>>& known_fields() {
  static const std::map<std::string, std::set<std::string>> fields = {
      {"", {"schema_version", "name", "env_preset", "model_preset", "presets_dir",
            "placement", "pipeline", "run", "engine", "output", "learner",
            "workload"}},
      {"placement", {"strategy", "n_devices", "ratio", "devices_per_node",
                     "allow_hybrid"}},
      {"pipeline", {"train_async", "rollout_async", "streamer", "micro_batch",
                    "global_batch", "b_max", "t_max", "max_staleness",
                    "queue_capacity", "mid_episode_adoption", "context_switch"}},
      {"run", {"n_rollout_epochs", "n_env", "n_es", "chunk_size", "seeds",
               "starvation_timeout"}},
      {"engine", {"kind", "time_scale"}},
      {"output", {"dir"}},
      {"learner", {"n_contexts", "n_arms", "optimal_arms", "learning_rate"}},
      {"workload", {"env_step", "env_on_device", "inference", "train_microbatch",
                    "grad_aggregate", "weight_sync", "comm_per_trajectory",
                    "comm_scale_per_node", "env_step_scale"}},
  };
  return fields;
}

std::string join(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

void check_known(const YAML::Node& node, const std::string& section) {
  if (!node) return;
  if (!node.IsMap()) {
    throw ConfigError(section.empty() ? "<root>" : section, "expected a mapping");
  }
  const auto& allowed = known_fields().at(section);
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(join(section, key), "unknown field");
  }
}

template <typename T>
T read(const YAML::Node& parent, const std::string& section,
       const std::string& key, T fallback) {
  if (!parent) return fallback;
  const YAML::Node node = parent[key];
  if (!node || node.IsNull()) return fallback;
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(join(section, key), "cannot parse value '" +
                                              YAML::Dump(node) + "'");
  }
}

double read_double(const YAML::Node& parent, const std::string& section,
                   const std::string& key, double fallback) {
  if (!parent) return fallback;
  const YAML::Node node = parent[key];
  if (!node || node.IsNull()) return fallback;
  if (node.IsScalar()) {
    std::string s = node.Scalar();
    std::transform(s.begin(), s.end(), s.begin(), ::tolower);
    if (s == "inf" || s == ".inf" || s == "+inf" || s == "none") return kNoTimeout;
  }
  return read<double>(parent, section, key, fallback);
}

LatencyModel parse_latency(const YAML::Node& node, const std::string& field) {
  if (!node || !node.IsMap()) throw ConfigError(field, "expected a latency model mapping");
  const std::string kind_text = read<std::string>(node, field, "kind", "");
  LatencyKind kind;
  try {
    kind = parse_latency_kind(kind_text);
  } catch (const Error& e) {
    throw ConfigError(field + ".kind", e.what());
  }
  auto need = [&](const std::string& key) {
    if (!node[key]) throw ConfigError(field + "." + key, "missing");
    return read<double>(node, field, key, 0.0);
  };
  std::set<std::string> allowed = {"kind"};
  LatencyModel model;
  try {
    switch (kind) {
      case LatencyKind::kDeterministic:
        allowed.insert("value");
        model = LatencyModel::deterministic(need("value"));
        break;
      case LatencyKind::kLogNormalShifted:
        allowed.insert({"mu", "sigma", "shift"});
        model = LatencyModel::log_normal_shifted(need("mu"), need("sigma"), need("shift"));
        break;
      case LatencyKind::kBatchAffine:
        allowed.insert({"base", "per_item"});
        model = LatencyModel::batch_affine(need("base"), need("per_item"));
        break;
      case LatencyKind::kBatchedEnvAffine:
        allowed.insert({"base", "per_item"});
        model = LatencyModel::batched_env_affine(need("base"), need("per_item"));
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(field + "." + key, "unknown field");
  }
  return model;
}

void emit_latency(YAML::Emitter& out, const LatencyModel& m) {
  out << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(latency_kind_name(m.kind()));
  if (const auto* d = m.as_deterministic()) {
    out << YAML::Key << "value" << YAML::Value << d->value;
  } else if (const auto* l = m.as_log_normal()) {
    out << YAML::Key << "mu" << YAML::Value << l->mu;
    out << YAML::Key << "sigma" << YAML::Value << l->sigma;
    out << YAML::Key << "shift" << YAML::Value << l->shift;
  } else if (const auto* a = m.as_affine()) {
    out << YAML::Key << "base" << YAML::Value << a->base;
    out << YAML::Key << "per_item" << YAML::Value << a->per_item;
  }
  out << YAML::EndMap;
}

YAML::Node load_yaml_file(const fs::path& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot read preset file " + path.string());
  try {
    return YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw ConfigError(field, "invalid YAML in " + path.string() + ": " + e.what());
  }
}

// Merges preset workload maps and the inline section key by key.
YAML::Node merged_workload(const YAML::Node& root, const fs::path& presets) {
  YAML::Node merged(YAML::NodeType::Map);
  auto merge_from = [&](const YAML::Node& src, const std::string& field) {
    if (!src) return;
    if (!src.IsMap()) throw ConfigError(field, "expected a mapping");
    for (const auto& kv : src) {
      const std::string key = kv.first.as<std::string>();
      if (!known_fields().at("workload").count(key)) {
        throw ConfigError(field + "." + key, "unknown workload field");
      }
      merged[key] = kv.second;
    }
  };
  const std::string env_name = read<std::string>(root, "", "env_preset", "");
  const std::string model_name = read<std::string>(root, "", "model_preset", "");
  if (!env_name.empty()) {
    merge_from(load_yaml_file(presets / "env" / (env_name + ".yaml"), "env_preset"),
               "env_preset");
  }
  if (!model_name.empty()) {
    merge_from(load_yaml_file(presets / "model" / (model_name + ".yaml"), "model_preset"),
               "model_preset");
  }
  merge_from(root["workload"], "workload");
  return merged;
}

WorkloadSpec parse_workload(const YAML::Node& w) {
  WorkloadSpec spec;
  for (const char* required : {"env_step", "inference", "train_microbatch"}) {
    if (!w[required]) {
      throw ConfigError(std::string("workload.") + required,
                        "missing; set it inline or through a preset");
    }
  }
  spec.env_step = parse_latency(w["env_step"], "workload.env_step");
  spec.inference = parse_latency(w["inference"], "workload.inference");
  spec.train_microbatch = parse_latency(w["train_microbatch"], "workload.train_microbatch");
  spec.env_on_device = read<bool>(w, "workload", "env_on_device", false);
  spec.grad_aggregate = read<double>(w, "workload", "grad_aggregate", 0.0);
  spec.weight_sync = read<double>(w, "workload", "weight_sync", 0.0);
  spec.comm_per_trajectory = read<double>(w, "workload", "comm_per_trajectory", 0.0);
  spec.comm_scale_per_node = read<double>(w, "workload", "comm_scale_per_node", 0.0);
  spec.env_step_scale =
      read<std::vector<double>>(w, "workload", "env_step_scale", std::vector<double>{});
  return spec;
}

// Library validation messages lead with the field path ("run.n_env: ...",
// "workload.weight_sync must ..."); recover it for the ConfigError.
[[noreturn]] void rethrow_as_config(const Error& e, const std::string& fallback) {
  const std::string msg = e.what();
  const auto end = msg.find_first_of(": ");
  std::string field = fallback;
  if (end != std::string::npos && msg.find('.') < end) field = msg.substr(0, end);
  std::string rest = msg.substr(end == std::string::npos ? 0 : end);
  while (!rest.empty() && (rest.front() == ':' || rest.front() == ' ')) rest.erase(0, 1);
  throw ConfigError(field, rest.empty() ? msg : rest);
}

void set_path(YAML::Node root, const std::vector<std::string>& path,
              const std::string& value) {
  YAML::Node parsed;
  try {
    parsed = YAML::Load(value);
  } catch (const YAML::Exception&) {
    parsed = YAML::Node(value);
  }
  // yaml-cpp nodes are handles: walking with operator[] updates the tree.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    YAML::Node next = chain.back()[path[i]];
    if (!next || !next.IsMap()) {
      chain.back()[path[i]] = YAML::Node(YAML::NodeType::Map);
      next = chain.back()[path[i]];
    }
    chain.push_back(next);
  }
  chain.back()[path.back()] = parsed;
}

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

std::string emit(const ExperimentConfig& c, bool with_run_identity) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << c.schema_version;
  out << YAML::Key << "name" << YAML::Value << c.name;
  out << YAML::Key << "env_preset" << YAML::Value << c.env_preset;
  out << YAML::Key << "model_preset" << YAML::Value << c.model_preset;
  if (with_run_identity) {
    out << YAML::Key << "presets_dir" << YAML::Value << c.presets_dir;
  }

  out << YAML::Key << "placement" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "strategy" << YAML::Value << std::string(strategy_name(c.strategy));
  out << YAML::Key << "n_devices" << YAML::Value << c.n_devices;
  out << YAML::Key << "ratio" << YAML::Value << c.ratio.to_string();
  out << YAML::Key << "devices_per_node" << YAML::Value << c.pipeline.devices_per_node;
  out << YAML::Key << "allow_hybrid" << YAML::Value << c.allow_hybrid;
  out << YAML::EndMap;

  const PipelineConfig& p = c.pipeline;
  out << YAML::Key << "pipeline" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "train_async" << YAML::Value << p.train_async;
  out << YAML::Key << "rollout_async" << YAML::Value << p.rollout_async;
  out << YAML::Key << "streamer" << YAML::Value << p.streamer.enabled;
  out << YAML::Key << "micro_batch" << YAML::Value << p.streamer.micro_batch_size;
  out << YAML::Key << "global_batch" << YAML::Value << p.streamer.global_batch_size;
  out << YAML::Key << "b_max" << YAML::Value << p.trigger.b_max;
  out << YAML::Key << "t_max" << YAML::Value;
  if (std::isinf(p.trigger.t_max)) {
    out << ".inf";
  } else {
    out << p.trigger.t_max;
  }
  out << YAML::Key << "max_staleness" << YAML::Value << p.max_staleness;
  out << YAML::Key << "queue_capacity" << YAML::Value << p.queue_capacity.value_or(0);
  out << YAML::Key << "mid_episode_adoption" << YAML::Value << p.mid_episode_adoption;
  out << YAML::Key << "context_switch" << YAML::Value << p.context_switch;
  out << YAML::EndMap;

  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_rollout_epochs" << YAML::Value << p.n_rollout_epochs;
  out << YAML::Key << "n_env" << YAML::Value << p.n_env;
  out << YAML::Key << "n_es" << YAML::Value << p.episode_length;
  out << YAML::Key << "chunk_size" << YAML::Value << p.chunk_size;
  if (with_run_identity) {
    out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << c.seeds;
  }
  out << YAML::Key << "starvation_timeout" << YAML::Value << p.starvation_timeout;
  out << YAML::EndMap;

  out << YAML::Key << "engine" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(engine_kind_name(c.engine));
  out << YAML::Key << "time_scale" << YAML::Value << c.time_scale;
  out << YAML::EndMap;

  if (with_run_identity) {
    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "dir" << YAML::Value << c.output_dir;
    out << YAML::EndMap;
  }

  out << YAML::Key << "learner" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_contexts" << YAML::Value << c.learner.n_contexts;
  out << YAML::Key << "n_arms" << YAML::Value << c.learner.n_arms;
  out << YAML::Key << "optimal_arms" << YAML::Value << YAML::Flow << c.learner.optimal_arms;
  out << YAML::Key << "learning_rate" << YAML::Value << c.learner.learning_rate;
  out << YAML::EndMap;

  const WorkloadSpec& w = c.workload;
  out << YAML::Key << "workload" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "env_step" << YAML::Value;
  emit_latency(out, w.env_step);
  out << YAML::Key << "env_on_device" << YAML::Value << w.env_on_device;
  out << YAML::Key << "inference" << YAML::Value;
  emit_latency(out, w.inference);
  out << YAML::Key << "train_microbatch" << YAML::Value;
  emit_latency(out, w.train_microbatch);
  out << YAML::Key << "grad_aggregate" << YAML::Value << w.grad_aggregate;
  out << YAML::Key << "weight_sync" << YAML::Value << w.weight_sync;
  out << YAML::Key << "comm_per_trajectory" << YAML::Value << w.comm_per_trajectory;
  out << YAML::Key << "comm_scale_per_node" << YAML::Value << w.comm_scale_per_node;
  if (!w.env_step_scale.empty()) {
    out << YAML::Key << "env_step_scale" << YAML::Value << YAML::Flow << w.env_step_scale;
  }
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace

std::string_view engine_kind_name(EngineKind kind) {
  return kind == EngineKind::kLive ? "live" : "virtual";
}

EnvOverrides environment_overrides() {
  EnvOverrides out;
  for (char** env = environ; env != nullptr && *env != nullptr; ++env) {
    const std::string entry = *env;
    if (entry.rfind(kEnvPrefix, 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string name = entry.substr(kEnvPrefix.size(), eq - kEnvPrefix.size());
    // Only SECTION__FIELD names are overrides; other ASYNCRL_* are ignored.
    if (name.find("__") == std::string::npos) continue;
    std::transform(name.begin(), name.end(), name.begin(), ::tolower);
    std::string dotted;
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (name.compare(i, 2, "__") == 0) {
        dotted += '.';
        ++i;
      } else {
        dotted += name[i];
      }
    }
    out[dotted] = entry.substr(eq + 1);
  }
  return out;
}

ExperimentConfig parse_config(const std::string& yaml_text,
                              const std::string& base_dir,
                              const EnvOverrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("invalid YAML: ") + e.what());
  }
  if (!root || !root.IsMap()) throw ConfigError("<root>", "expected a mapping");
  for (const auto& [path, value] : overrides) {
    const auto parts = split_path(path);
    if (parts.empty() || parts.size() > 2) {
      throw ConfigError(path, "override must name section.field or field");
    }
    set_path(root, parts, value);
  }

  check_known(root, "");
  for (const char* section :
       {"placement", "pipeline", "run", "engine", "output", "learner", "workload"}) {
    check_known(root[section], section);
  }

  ExperimentConfig c;
  c.schema_version = read<int>(root, "", "schema_version", -1);
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("schema_version",
                      "expected " + std::to_string(kSchemaVersion) + ", got " +
                          std::to_string(c.schema_version));
  }
  c.name = read<std::string>(root, "", "name", "");
  if (c.name.empty()) throw ConfigError("name", "missing");
  c.env_preset = read<std::string>(root, "", "env_preset", "");
  c.model_preset = read<std::string>(root, "", "model_preset", "");
  {
    fs::path dir = read<std::string>(root, "", "presets_dir", "../presets");
    if (dir.is_relative()) dir = fs::path(base_dir) / dir;
    c.presets_dir = fs::weakly_canonical(dir).string();
  }
  c.workload = parse_workload(merged_workload(root, c.presets_dir));
  try {
    c.workload.validate();
  } catch (const Error& e) {
    rethrow_as_config(e, "workload");
  }

  const YAML::Node pl = root["placement"];
  try {
    c.strategy = parse_strategy(read<std::string>(pl, "placement", "strategy", "colocated"));
  } catch (const Error& e) {
    throw ConfigError("placement.strategy", e.what());
  }
  c.n_devices = read<int>(pl, "placement", "n_devices", 1);
  try {
    c.ratio = parse_ratio(read<std::string>(pl, "placement", "ratio", "1:1"));
  } catch (const Error& e) {
    throw ConfigError("placement.ratio", e.what());
  }
  c.allow_hybrid = read<bool>(pl, "placement", "allow_hybrid", false);

  PipelineConfig& p = c.pipeline;
  p.devices_per_node = read<int>(pl, "placement", "devices_per_node", 8);
  const YAML::Node pp = root["pipeline"];
  p.train_async = read<bool>(pp, "pipeline", "train_async", false);
  p.rollout_async = read<bool>(pp, "pipeline", "rollout_async", false);
  p.streamer.enabled = read<bool>(pp, "pipeline", "streamer", false);
  p.streamer.micro_batch_size = read<int>(pp, "pipeline", "micro_batch", 1);
  p.streamer.global_batch_size = read<int>(pp, "pipeline", "global_batch", 1);
  p.trigger.b_max = read<int>(pp, "pipeline", "b_max", 1);
  p.trigger.t_max = read_double(pp, "pipeline", "t_max", kNoTimeout);
  p.max_staleness = read<int>(pp, "pipeline", "max_staleness", 1);
  const int capacity = read<int>(pp, "pipeline", "queue_capacity", 0);
  if (capacity < 0) throw ConfigError("pipeline.queue_capacity", "must be >= 0");
  if (capacity > 0) p.queue_capacity = capacity;
  p.mid_episode_adoption = read<bool>(pp, "pipeline", "mid_episode_adoption", false);
  p.context_switch = read<double>(pp, "pipeline", "context_switch", 0.0);

  const YAML::Node rn = root["run"];
  p.n_rollout_epochs = read<int>(rn, "run", "n_rollout_epochs", 1);
  p.n_env = read<int>(rn, "run", "n_env", 1);
  p.episode_length = read<int>(rn, "run", "n_es", 1);
  p.chunk_size = read<int>(rn, "run", "chunk_size", 1);
  p.starvation_timeout = read<double>(rn, "run", "starvation_timeout", 1e7);
  c.seeds = read<std::vector<std::uint64_t>>(rn, "run", "seeds", {});
  if (c.seeds.empty()) throw ConfigError("run.seeds", "at least one explicit seed is required");

  const YAML::Node en = root["engine"];
  const std::string kind = read<std::string>(en, "engine", "kind", "virtual");
  if (kind == "virtual") {
    c.engine = EngineKind::kVirtual;
  } else if (kind == "live") {
    c.engine = EngineKind::kLive;
  } else {
    throw ConfigError("engine.kind", "expected virtual or live, got '" + kind + "'");
  }
  c.time_scale = read<double>(en, "engine", "time_scale", 0.1);
  if (!(c.time_scale >= 0.0) || !std::isfinite(c.time_scale)) {
    throw ConfigError("engine.time_scale", "must be finite and >= 0");
  }

  c.output_dir = read<std::string>(root["output"], "output", "dir", "out");

  const YAML::Node ln = root["learner"];
  c.learner.n_contexts = read<int>(ln, "learner", "n_contexts", 4);
  c.learner.n_arms = read<int>(ln, "learner", "n_arms", 4);
  c.learner.optimal_arms =
      read<std::vector<int>>(ln, "learner", "optimal_arms", c.learner.optimal_arms);
  c.learner.learning_rate = read<double>(ln, "learner", "learning_rate", 0.5);
  if (c.learner.n_contexts < 1) throw ConfigError("learner.n_contexts", "must be >= 1");
  if (c.learner.n_arms < 2) throw ConfigError("learner.n_arms", "must be >= 2");
  if (static_cast<int>(c.learner.optimal_arms.size()) != c.learner.n_contexts) {
    throw ConfigError("learner.optimal_arms", "needs one arm per context");
  }
  for (int arm : c.learner.optimal_arms) {
    if (arm < 0 || arm >= c.learner.n_arms) {
      throw ConfigError("learner.optimal_arms", "arm index out of range");
    }
  }
  if (!(c.learner.learning_rate > 0.0)) {
    throw ConfigError("learner.learning_rate", "must be > 0");
  }

  PlacementPlan plan;
  try {
    plan = make_placement(c);
  } catch (const Error& e) {
    const std::string field = e.code() == ErrorCode::kIndivisibleRatio
                                  ? "placement.ratio"
                                  : e.code() == ErrorCode::kUnsupportedStrategy
                                        ? "placement.strategy"
                                        : "placement.n_devices";
    throw ConfigError(field, e.what());
  }
  try {
    validate_pipeline(p, plan);
  } catch (const Error& e) {
    rethrow_as_config(e, "pipeline");
  }
  if (c.engine == EngineKind::kLive && c.workload.env_on_device) {
    throw ConfigError("engine.kind", "the live engine only runs host-side envs");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, const EnvOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path base = fs::absolute(fs::path(path)).parent_path();
  return parse_config(buf.str(), base.string(), overrides);
}

std::string serialize_config(const ExperimentConfig& config) {
  return emit(config, /*with_run_identity=*/true);
}

std::string config_fingerprint(const ExperimentConfig& config) {
  return hex64(fnv1a64(emit(config, /*with_run_identity=*/false)));
}

PlacementPlan make_placement(const ExperimentConfig& config) {
  return build_placement(config.strategy, config.n_devices, config.ratio,
                         PlacementOptions{config.allow_hybrid});
}

RunSpec make_run_spec(const ExperimentConfig& config) {
  RunSpec spec;
  spec.pipeline = config.pipeline;
  spec.plan = make_placement(config);
  spec.workload = config.workload;
  spec.fingerprint = config_fingerprint(config);
  return spec;
}

toyrl::BanditEnv make_bandit(const ExperimentConfig& config) {
  return toyrl::BanditEnv::one_hot(config.learner.n_contexts, config.learner.n_arms,
                                   config.learner.optimal_arms,
                                   config.pipeline.episode_length);
}

LearnerConfig make_learner(const ExperimentConfig& config) {
  return LearnerConfig{make_bandit(config), config.learner.learning_rate};
}

ExperimentConfig with_field(const ExperimentConfig& config, const std::string& field,
                            const std::string& value) {
  return parse_config(serialize_config(config), config.presets_dir,
                      EnvOverrides{{field, value}});
}

}  // namespace asyncrl
