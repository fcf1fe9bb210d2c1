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

// Latency and placement models. Every duration is in virtual milliseconds.

#ifndef ASYNCRL_WORKLOAD_HPP_
#define ASYNCRL_WORKLOAD_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "asyncrl/rng.hpp"

namespace asyncrl {

using DurationMs = double;
using TimeMs = double;

enum class LatencyKind {
  kDeterministic,
  kLogNormalShifted,
  kBatchAffine,
  kBatchedEnvAffine,
};

std::string_view latency_kind_name(LatencyKind kind);
LatencyKind parse_latency_kind(std::string_view name);

// Parameterized service-time distribution. Construct through the named
// factories, which reject invalid parameters; sampling never fails.
class LatencyModel {
 public:
  struct Deterministic {
    double value;
  };
  struct LogNormalShifted {
    double mu;
    double sigma;
    double shift;
  };
  // cost(B) = base + per_item * B
  struct Affine {
    double base;
    double per_item;
  };

  static LatencyModel deterministic(double value);
  static LatencyModel log_normal_shifted(double mu, double sigma, double shift);
  static LatencyModel batch_affine(double base, double per_item);
  static LatencyModel batched_env_affine(double base, double per_item);

  LatencyModel() : LatencyModel(deterministic(0.0)) {}

  LatencyKind kind() const { return kind_; }
  const Deterministic* as_deterministic() const;
  const LogNormalShifted* as_log_normal() const;
  const Affine* as_affine() const;

  // True for kinds whose duration does not depend on the random stream.
  bool is_deterministic() const { return kind_ != LatencyKind::kLogNormalShifted; }

  // Closed-form mean for a batch of `batch_size` (used by tests and
  // calibration tooling).
  double mean(int batch_size) const;

  // Cost of stepping `batch_size` items as `sub_batches` separate calls.
  // Only meaningful for the affine kinds: sub_batches*base + per_item*B.
  double split_cost(int batch_size, int sub_batches) const;

  bool operator==(const LatencyModel& other) const;

 private:
  using Params = std::variant<Deterministic, LogNormalShifted, Affine>;
  LatencyModel(LatencyKind kind, Params params) : kind_(kind), params_(params) {}

  LatencyKind kind_;
  Params params_;
};

// Draws one duration. Deterministic and affine kinds consume no draws;
// LogNormalShifted consumes exactly one. batch_size is ignored by the
// deterministic and log-normal kinds.
DurationMs sample_latency(const LatencyModel& model, int batch_size,
                          RngStream& rng);

struct WorkloadSpec {
  LatencyModel env_step;  // one action chunk executed by one env
  bool env_on_device = false;
  LatencyModel inference = LatencyModel::batch_affine(0.0, 0.0);
  LatencyModel train_microbatch;  // one data-parallel micro-step
  DurationMs grad_aggregate = 0.0;
  DurationMs weight_sync = 0.0;
  DurationMs comm_per_trajectory = 0.0;
  double comm_scale_per_node = 0.0;
  // Per-env multiplier on host-side env_step durations, indexed by env id.
  // Missing entries mean 1. Used to inject stragglers.
  std::vector<double> env_step_scale;

  // Throws Error(kInvalidArgument) naming the offending field.
  void validate() const;

  // Transfer cost of one trajectory on a cluster of `nodes` nodes.
  DurationMs trajectory_comm(int nodes) const;

  double env_scale(int env_id) const {
    return env_id >= 0 && env_id < static_cast<int>(env_step_scale.size())
               ? env_step_scale[static_cast<std::size_t>(env_id)]
               : 1.0;
  }

  bool operator==(const WorkloadSpec& other) const = default;
};

enum class Strategy { kColocated, kDisaggregated, kHybrid };

std::string_view strategy_name(Strategy strategy);
Strategy parse_strategy(std::string_view name);

struct Ratio {
  int rollout = 1;
  int actor = 1;

  std::string to_string() const;
  bool operator==(const Ratio& other) const = default;
};

// Parses "3:1".
Ratio parse_ratio(std::string_view text);

struct DevicePool {
  int n_devices = 1;
  std::vector<int> ids() const;
};

struct PlacementPlan {
  Strategy strategy = Strategy::kColocated;
  int n_devices = 1;
  Ratio ratio;
  std::vector<int> rollout_devices;
  std::vector<int> actor_devices;
  // Device hosting env stepping for rollout group g when envs run on the
  // accelerator. Only differs from rollout_devices under Hybrid.
  std::vector<int> env_devices;

  bool operator==(const PlacementPlan& other) const = default;
};

struct PlacementOptions {
  bool allow_hybrid = false;
};

// Rollout takes the lowest device ids. Ratio is ignored for Colocated.
PlacementPlan build_placement(Strategy strategy, int n_devices, Ratio ratio,
                              PlacementOptions options = {});

}  // namespace asyncrl

#endif  // ASYNCRL_WORKLOAD_HPP_
