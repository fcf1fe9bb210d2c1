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

#ifndef ASYNCRL_METRICS_HPP_
#define ASYNCRL_METRICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asyncrl/engine/run.hpp"
#include "asyncrl/engine/trace.hpp"

namespace asyncrl {

struct MetricsReport {
  std::string name;
  std::string strategy;
  int n_devices = 0;
  std::string ratio;
  double throughput = 0.0;  // env steps per second
  double total_s = 0.0;
  double rollout_s = 0.0;
  double actor_s = 0.0;
  std::int64_t env_steps = 0;
  std::map<int, double> per_device_utilization;
  std::string config_fingerprint;
  std::uint64_t seed = 0;
  std::string trace_hash;
  std::optional<double> increase_pct;  // against the comparison baseline
};

// Environment steps per second for a fixed workload of n_re epochs of
// n_env envs running n_es steps each. Throws NonPositiveTime when
// total_time_s <= 0 and InvalidArgument for non-positive counts.
double compute_throughput(double n_re, double n_env, double n_es,
                          double total_time_s);

// 100 * (variant - baseline) / baseline. Throws InvalidArgument unless
// baseline > 0.
double speedup_percent(double baseline_throughput, double variant_throughput);

// Busy time of `device` divided by the trace makespan.
double utilization(const Trace& trace, int device);

MetricsReport build_report(const std::string& name, const RunSpec& spec,
                           const RunResult& result);

struct ScalingRow {
  int scale = 0;
  double throughput = 0.0;
  double efficiency = 0.0;
};

struct ScalingReport {
  double threshold = 0.9;
  std::vector<ScalingRow> rows;  // ascending scale
  std::optional<int> first_below_threshold;
};

// efficiency(n) = throughput(n) / ((n / n0) * throughput(n0)) with n0 the
// smallest scale. Requires at least two scales.
ScalingReport scaling_report(const std::map<int, MetricsReport>& runs,
                             double threshold = 0.9);

struct RatioRow {
  std::string ratio;
  double rollout_s = 0.0;
  double actor_s = 0.0;
  double makespan_s = 0.0;
  double throughput = 0.0;
  double gap_s = 0.0;  // |rollout_s - actor_s|
};

struct RatioBalanceReport {
  std::vector<RatioRow> rows;
  std::size_t best = 0;  // row with the smallest makespan
};

// Requires reports for at least two ratios.
RatioBalanceReport ratio_balance_report(const std::vector<MetricsReport>& runs);

// Fills increase_pct of every report against runs[baseline].
void apply_baseline(std::vector<MetricsReport>& runs, std::size_t baseline);

std::string reports_to_csv(const std::vector<MetricsReport>& runs);
std::string reports_to_json(const std::vector<MetricsReport>& runs);
std::string report_to_json(const MetricsReport& report);
std::string reports_to_text(const std::vector<MetricsReport>& runs);
std::string scaling_report_to_json(const ScalingReport& report);
std::string ratio_report_to_json(const RatioBalanceReport& report);

}  // namespace asyncrl

#endif  // ASYNCRL_METRICS_HPP_
