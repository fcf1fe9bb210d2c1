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

#include "asyncrl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "asyncrl/error.hpp"

namespace asyncrl {

namespace {

std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

nlohmann::json report_json(const MetricsReport& r) {
  nlohmann::json util = nlohmann::json::object();
  for (const auto& [device, u] : r.per_device_utilization) {
    util[std::to_string(device)] = u;
  }
  nlohmann::json j = {
      {"name", r.name},
      {"strategy", r.strategy},
      {"n_devices", r.n_devices},
      {"ratio", r.ratio},
      {"throughput", r.throughput},
      {"total_s", r.total_s},
      {"rollout_s", r.rollout_s},
      {"actor_s", r.actor_s},
      {"env_steps", r.env_steps},
      {"per_device_utilization", util},
      {"config_fingerprint", r.config_fingerprint},
      {"seed", r.seed},
      {"trace_hash", r.trace_hash},
  };
  j["increase_pct"] = r.increase_pct ? nlohmann::json(*r.increase_pct) : nlohmann::json();
  return j;
}

}  // namespace

double compute_throughput(double n_re, double n_env, double n_es,
                          double total_time_s) {
  if (!(total_time_s > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTime,
                "total time must be positive, got " + std::to_string(total_time_s));
  }
  if (!(n_re > 0.0) || !(n_env > 0.0) || !(n_es > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "throughput inputs must be positive");
  }
  return n_re * n_env * n_es / total_time_s;
}

double speedup_percent(double baseline_throughput, double variant_throughput) {
  if (!(baseline_throughput > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "baseline throughput must be positive");
  }
  return 100.0 * (variant_throughput - baseline_throughput) / baseline_throughput;
}

double utilization(const Trace& trace, int device) {
  const TimeMs makespan = trace.makespan();
  if (!(makespan > 0.0)) {
    throw Error(ErrorCode::kNonPositiveTime, "trace has zero makespan");
  }
  return std::clamp(device_busy_time(trace, device) / makespan, 0.0, 1.0);
}

MetricsReport build_report(const std::string& name, const RunSpec& spec,
                           const RunResult& result) {
  const PhaseTotals totals = trace_phase_totals(result.trace);
  MetricsReport r;
  r.name = name;
  r.strategy = std::string(strategy_name(spec.plan.strategy));
  r.n_devices = spec.plan.n_devices;
  r.ratio = spec.plan.strategy == Strategy::kColocated ? "-" : spec.plan.ratio.to_string();
  r.total_s = totals.makespan / 1000.0;
  r.rollout_s = totals.rollout / 1000.0;
  r.actor_s = totals.actor / 1000.0;
  r.env_steps = result.env_steps;
  r.throughput = compute_throughput(spec.pipeline.n_rollout_epochs, spec.pipeline.n_env,
                                    spec.pipeline.episode_length, r.total_s);
  std::set<int> devices(spec.plan.rollout_devices.begin(), spec.plan.rollout_devices.end());
  devices.insert(spec.plan.actor_devices.begin(), spec.plan.actor_devices.end());
  for (int d : devices) r.per_device_utilization[d] = utilization(result.trace, d);
  r.config_fingerprint = spec.fingerprint;
  r.seed = result.trace.seed;
  r.trace_hash = trace_hash(result.trace);
  return r;
}

ScalingReport scaling_report(const std::map<int, MetricsReport>& runs,
                             double threshold) {
  if (runs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "scaling report needs at least two scales");
  }
  ScalingReport report;
  report.threshold = threshold;
  const auto& [n0, base] = *runs.begin();
  for (const auto& [n, r] : runs) {
    const double ideal = static_cast<double>(n) / n0 * base.throughput;
    const double eff = r.throughput / ideal;
    report.rows.push_back(ScalingRow{n, r.throughput, eff});
    if (!report.first_below_threshold && eff < threshold) {
      report.first_below_threshold = n;
    }
  }
  return report;
}

RatioBalanceReport ratio_balance_report(const std::vector<MetricsReport>& runs) {
  if (runs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ratio report needs at least two ratios");
  }
  RatioBalanceReport report;
  for (const MetricsReport& r : runs) {
    report.rows.push_back(RatioRow{r.ratio, r.rollout_s, r.actor_s, r.total_s,
                                   r.throughput, std::abs(r.rollout_s - r.actor_s)});
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].makespan_s < report.rows[report.best].makespan_s) report.best = i;
  }
  return report;
}

void apply_baseline(std::vector<MetricsReport>& runs, std::size_t baseline) {
  if (baseline >= runs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "baseline index out of range");
  }
  const double base = runs[baseline].throughput;
  for (MetricsReport& r : runs) r.increase_pct = speedup_percent(base, r.throughput);
}

std::string reports_to_csv(const std::vector<MetricsReport>& runs) {
  std::ostringstream out;
  out << "name,strategy,n_devices,ratio,throughput,total_s,rollout_s,actor_s,increase_pct\n";
  for (const MetricsReport& r : runs) {
    out << r.name << ',' << r.strategy << ',' << r.n_devices << ',' << r.ratio << ','
        << fmt(r.throughput, 4) << ',' << fmt(r.total_s, 4) << ','
        << fmt(r.rollout_s, 4) << ',' << fmt(r.actor_s, 4) << ','
        << (r.increase_pct ? fmt(*r.increase_pct, 4) : std::string()) << '\n';
  }
  return out.str();
}

std::string report_to_json(const MetricsReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<MetricsReport>& runs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MetricsReport& r : runs) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_text(const std::vector<MetricsReport>& runs) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-36s %-14s %4s %5s %11s %9s %9s %9s %9s\n",
                "name", "strategy", "dev", "ratio", "throughput", "total_s",
                "rollout_s", "actor_s", "increase");
  out << line;
  for (const MetricsReport& r : runs) {
    const std::string inc = r.increase_pct ? fmt(*r.increase_pct, 2) + "%" : "";
    std::snprintf(line, sizeof(line), "%-36s %-14s %4d %5s %11.2f %9.1f %9.1f %9.1f %9s\n",
                  r.name.c_str(), r.strategy.c_str(), r.n_devices, r.ratio.c_str(),
                  r.throughput, r.total_s, r.rollout_s, r.actor_s, inc.c_str());
    out << line;
  }
  return out.str();
}

std::string scaling_report_to_json(const ScalingReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ScalingRow& r : report.rows) {
    rows.push_back({{"scale", r.scale}, {"throughput", r.throughput},
                    {"efficiency", r.efficiency}});
  }
  nlohmann::json j = {{"threshold", report.threshold}, {"rows", rows}};
  j["first_below_threshold"] = report.first_below_threshold
                                   ? nlohmann::json(*report.first_below_threshold)
                                   : nlohmann::json();
  return j.dump(2) + "\n";
}

std::string ratio_report_to_json(const RatioBalanceReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const RatioRow& r : report.rows) {
    rows.push_back({{"ratio", r.ratio}, {"rollout_s", r.rollout_s},
                    {"actor_s", r.actor_s}, {"makespan_s", r.makespan_s},
                    {"throughput", r.throughput}, {"gap_s", r.gap_s}});
  }
  nlohmann::json j = {{"rows", rows}, {"best_ratio", report.rows[report.best].ratio}};
  return j.dump(2) + "\n";
}

}  // namespace asyncrl
