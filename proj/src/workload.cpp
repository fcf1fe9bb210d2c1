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

#include "asyncrl/workload.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "asyncrl/error.hpp"

namespace asyncrl {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndivisibleRatio: return "IndivisibleRatio";
    case ErrorCode::kUnsupportedStrategy: return "UnsupportedStrategy";
    case ErrorCode::kInconsistentConfig: return "InconsistentConfig";
    case ErrorCode::kStepAfterDone: return "StepAfterDone";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kVersionRegression: return "VersionRegression";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonPositiveTime: return "NonPositiveTime";
    case ErrorCode::kDeadlock: return "Deadlock";
    case ErrorCode::kStarvation: return "Starvation";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string_view latency_kind_name(LatencyKind kind) {
  switch (kind) {
    case LatencyKind::kDeterministic: return "deterministic";
    case LatencyKind::kLogNormalShifted: return "lognormal_shifted";
    case LatencyKind::kBatchAffine: return "batch_affine";
    case LatencyKind::kBatchedEnvAffine: return "batched_env_affine";
  }
  return "deterministic";
}

LatencyKind parse_latency_kind(std::string_view name) {
  if (name == "deterministic") return LatencyKind::kDeterministic;
  if (name == "lognormal_shifted") return LatencyKind::kLogNormalShifted;
  if (name == "batch_affine") return LatencyKind::kBatchAffine;
  if (name == "batched_env_affine") return LatencyKind::kBatchedEnvAffine;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown latency kind '" + std::string(name) + "'");
}

LatencyModel LatencyModel::deterministic(double value) {
  require(finite_non_negative(value), "deterministic value must be >= 0");
  return {LatencyKind::kDeterministic, Deterministic{value}};
}

LatencyModel LatencyModel::log_normal_shifted(double mu, double sigma,
                                              double shift) {
  require(std::isfinite(mu), "lognormal mu must be finite");
  require(std::isfinite(sigma) && sigma > 0.0, "lognormal sigma must be > 0");
  require(finite_non_negative(shift), "lognormal shift must be >= 0");
  return {LatencyKind::kLogNormalShifted, LogNormalShifted{mu, sigma, shift}};
}

LatencyModel LatencyModel::batch_affine(double base, double per_item) {
  require(finite_non_negative(base), "batch_affine base must be >= 0");
  require(finite_non_negative(per_item), "batch_affine per_item must be >= 0");
  return {LatencyKind::kBatchAffine, Affine{base, per_item}};
}

LatencyModel LatencyModel::batched_env_affine(double base, double per_item) {
  require(finite_non_negative(base), "batched_env_affine base must be >= 0");
  require(finite_non_negative(per_item),
          "batched_env_affine per_item must be >= 0");
  return {LatencyKind::kBatchedEnvAffine, Affine{base, per_item}};
}

const LatencyModel::Deterministic* LatencyModel::as_deterministic() const {
  return std::get_if<Deterministic>(&params_);
}

const LatencyModel::LogNormalShifted* LatencyModel::as_log_normal() const {
  return std::get_if<LogNormalShifted>(&params_);
}

const LatencyModel::Affine* LatencyModel::as_affine() const {
  return std::get_if<Affine>(&params_);
}

double LatencyModel::mean(int batch_size) const {
  switch (kind_) {
    case LatencyKind::kDeterministic:
      return as_deterministic()->value;
    case LatencyKind::kLogNormalShifted: {
      const auto& p = *as_log_normal();
      return p.shift + std::exp(p.mu + 0.5 * p.sigma * p.sigma);
    }
    case LatencyKind::kBatchAffine:
    case LatencyKind::kBatchedEnvAffine: {
      const auto& p = *as_affine();
      return p.base + p.per_item * batch_size;
    }
  }
  return 0.0;
}

double LatencyModel::split_cost(int batch_size, int sub_batches) const {
  const Affine* p = as_affine();
  require(p != nullptr, "split_cost needs an affine latency model");
  require(sub_batches >= 1 && batch_size >= sub_batches,
          "split_cost needs 1 <= sub_batches <= batch_size");
  return sub_batches * p->base + p->per_item * batch_size;
}

bool LatencyModel::operator==(const LatencyModel& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case LatencyKind::kDeterministic:
      return as_deterministic()->value == other.as_deterministic()->value;
    case LatencyKind::kLogNormalShifted: {
      const auto& a = *as_log_normal();
      const auto& b = *other.as_log_normal();
      return a.mu == b.mu && a.sigma == b.sigma && a.shift == b.shift;
    }
    default: {
      const auto& a = *as_affine();
      const auto& b = *other.as_affine();
      return a.base == b.base && a.per_item == b.per_item;
    }
  }
}

DurationMs sample_latency(const LatencyModel& model, int batch_size,
                          RngStream& rng) {
  require(batch_size >= 1, "batch_size must be >= 1");
  switch (model.kind()) {
    case LatencyKind::kDeterministic:
      return model.as_deterministic()->value;
    case LatencyKind::kLogNormalShifted: {
      const auto& p = *model.as_log_normal();
      return p.shift + std::exp(p.mu + p.sigma * rng.normal());
    }
    case LatencyKind::kBatchAffine:
    case LatencyKind::kBatchedEnvAffine:
      return model.mean(batch_size);
  }
  return 0.0;
}

void WorkloadSpec::validate() const {
  require(finite_non_negative(grad_aggregate),
          "workload.grad_aggregate must be finite and >= 0");
  require(finite_non_negative(weight_sync),
          "workload.weight_sync must be finite and >= 0");
  require(finite_non_negative(comm_per_trajectory),
          "workload.comm_per_trajectory must be finite and >= 0");
  require(finite_non_negative(comm_scale_per_node),
          "workload.comm_scale_per_node must be finite and >= 0");
  for (double f : env_step_scale) {
    require(finite_non_negative(f), "workload.env_step_scale entries must be finite and >= 0");
  }
  require(inference.kind() == LatencyKind::kBatchAffine ||
              inference.kind() == LatencyKind::kDeterministic,
          "workload.inference must be batch_affine or deterministic");
}

DurationMs WorkloadSpec::trajectory_comm(int nodes) const {
  const int extra = nodes > 1 ? nodes - 1 : 0;
  return comm_per_trajectory * (1.0 + comm_scale_per_node * extra);
}

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kColocated: return "colocated";
    case Strategy::kDisaggregated: return "disaggregated";
    case Strategy::kHybrid: return "hybrid";
  }
  return "colocated";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "colocated") return Strategy::kColocated;
  if (name == "disaggregated") return Strategy::kDisaggregated;
  if (name == "hybrid") return Strategy::kHybrid;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown strategy '" + std::string(name) + "'");
}

std::string Ratio::to_string() const {
  return std::to_string(rollout) + ":" + std::to_string(actor);
}

Ratio parse_ratio(std::string_view text) {
  const auto colon = text.find(':');
  Ratio r;
  auto parse_int = [&](std::string_view part, int& out) {
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, out);
    return ec == std::errc() && ptr == end;
  };
  if (colon == std::string_view::npos ||
      !parse_int(text.substr(0, colon), r.rollout) ||
      !parse_int(text.substr(colon + 1), r.actor) || r.rollout < 1 ||
      r.actor < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "ratio must look like R:A with positive integers, got '" +
                    std::string(text) + "'");
  }
  return r;
}

std::vector<int> DevicePool::ids() const {
  std::vector<int> out(static_cast<std::size_t>(n_devices));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

PlacementPlan build_placement(Strategy strategy, int n_devices, Ratio ratio,
                              PlacementOptions options) {
  require(n_devices >= 1, "n_devices must be >= 1");
  PlacementPlan plan;
  plan.strategy = strategy;
  plan.n_devices = n_devices;
  const auto all = DevicePool{n_devices}.ids();

  if (strategy == Strategy::kColocated) {
    plan.ratio = Ratio{1, 1};
    plan.rollout_devices = all;
    plan.actor_devices = all;
    plan.env_devices = all;
    return plan;
  }
  if (strategy == Strategy::kHybrid && !options.allow_hybrid) {
    throw Error(ErrorCode::kUnsupportedStrategy,
                "hybrid placement is disabled; set placement.allow_hybrid");
  }
  require(ratio.rollout >= 1 && ratio.actor >= 1,
          "ratio shares must be positive");
  if (n_devices < 2) {
    throw Error(ErrorCode::kIndivisibleRatio,
                "split placement needs at least 2 devices");
  }
  const int parts = ratio.rollout + ratio.actor;
  if (n_devices % parts != 0) {
    throw Error(ErrorCode::kIndivisibleRatio,
                "ratio " + ratio.to_string() + " (sum " +
                    std::to_string(parts) + ") does not divide n_devices=" +
                    std::to_string(n_devices));
  }
  const int unit = n_devices / parts;
  const int n_rollout = unit * ratio.rollout;
  plan.ratio = ratio;
  plan.rollout_devices.assign(all.begin(), all.begin() + n_rollout);
  plan.actor_devices.assign(all.begin() + n_rollout, all.end());
  if (strategy == Strategy::kHybrid) {
    // Env stepping shares the actor devices; rollout keeps its own.
    for (std::size_t g = 0; g < plan.rollout_devices.size(); ++g) {
      plan.env_devices.push_back(
          plan.actor_devices[g % plan.actor_devices.size()]);
    }
  } else {
    plan.env_devices = plan.rollout_devices;
  }
  return plan;
}

}  // namespace asyncrl
