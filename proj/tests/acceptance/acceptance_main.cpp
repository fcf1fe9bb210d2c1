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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "asyncrl/config.hpp"
#include "asyncrl/engine/live_engine.hpp"
#include "asyncrl/engine/virtual_engine.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/metrics.hpp"
#include "asyncrl/pipeline/batcher.hpp"
#include "asyncrl/rng.hpp"
#include "asyncrl/strategy.hpp"

namespace asyncrl {
namespace {

// Tolerances and sizes.
constexpr double kThroughputRelTol = 0.01;
constexpr int kMinThroughputRows = 5;
constexpr double kMeasuredTotalS = 807.4;
constexpr double kColocatedRelTol = 0.01;
constexpr int kBatcherMaxLen = 6;
constexpr int kBatcherMaxTime = 10;
constexpr int kDominanceConfigs = 200;
constexpr double kFullAsyncMinPct = 25.0;
constexpr double kFullAsyncMaxPct = 32.5 + 10.0;
constexpr int kStreamerSeeds = 50;
constexpr double kStreamerTol = 1e-12;
constexpr int kDeterminismRepeats = 10;
constexpr double kToyMinSuccess = 0.9;
constexpr double kToyMaxMeanGap = 0.05;
constexpr int kToyMaxUpdates = 200;
constexpr double kLinearTol = 0.02;
constexpr int kMaxNodes = 8;
constexpr double kScalingCommPerTrajectory = 2000.0;
constexpr double kScalingCommScalePerNode = 0.5;

const std::string kExperiments = std::string(ASYNCRL_SOURCE_DIR) + "/configs/experiments/";

ExperimentConfig preset(const std::string& name) {
  return load_config(kExperiments + name + ".yaml");
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), format, a);
  return buf;
}

// Every consumed trajectory of every run with max_staleness == 1 passes
// through here.
struct StalenessMonitor {
  std::int64_t runs = 0;
  std::int64_t consumed = 0;
  std::int64_t violations = 0;

  void observe(const PipelineConfig& pipeline, const RunResult& result) {
    if (pipeline.max_staleness != 1) return;
    ++runs;
    for (const ConsumptionRecord& c : result.consumption) {
      ++consumed;
      if (c.gap() > 1 || c.gap() < 0) ++violations;
    }
  }
};

StalenessMonitor g_staleness;

RunResult simulate(const RunSpec& spec, std::uint64_t seed) {
  RunResult r = run_virtual(spec, seed);
  g_staleness.observe(spec.pipeline, r);
  return r;
}

MetricsReport simulate_report(const ExperimentConfig& c, std::uint64_t seed) {
  const RunSpec spec = make_run_spec(c);
  return build_report(c.name, spec, simulate(spec, seed));
}

// Mean throughput over the config's own seeds.
double mean_throughput(const ExperimentConfig& c) {
  double sum = 0.0;
  for (std::uint64_t s : c.seeds) sum += simulate_report(c, s).throughput;
  return sum / static_cast<double>(c.seeds.size());
}

Outcome throughput_back_check() {
  struct Row {
    const char* label;
    double n_re, n_env, n_es, time_s, reported;
  };
  // (N_re, N_env, N_es) per setup; run times and throughputs as reported.
  const Row rows[] = {
      {"pi0 colocated 8", 4, 128, 480, 807.4, 304.54},
      {"pi0 colocated 16", 4, 256, 480, 831.19, 591.35},
      {"pi0 colocated 32", 4, 512, 480, 905.6, 1085.51},
      {"pi0 hybrid 8", 4, 128, 480, 1190.0, 206.52},
      {"pi0 hybrid 16", 4, 256, 480, 1370.83, 358.56},
      {"pi0 hybrid 32", 4, 512, 480, 1438.0, 683.62},
      {"pi0 disaggregated 1:1 8", 4, 128, 480, 1911.8, 128.54},
      {"pi0 disaggregated 1:1 16", 4, 256, 480, 1504.0, 326.8},
      {"pi0 disaggregated 1:1 32", 4, 512, 480, 1574.0, 624.0},
      {"pi0 disaggregated 3:1 8", 4, 128, 480, 2542.0, 96.67},
      {"openvla-oft colocated 8", 4, 128, 512, 1006.0, 260.58},
      {"openvla-oft colocated 16", 4, 256, 512, 1125.0, 466.03},
      {"openvla-oft colocated 32", 4, 512, 512, 1336.0, 784.86},
  };
  int within = 0;
  double worst = 0.0;
  std::string worst_label;
  for (const Row& r : rows) {
    const double t = compute_throughput(r.n_re, r.n_env, r.n_es, r.time_s);
    const double rel = std::abs(t - r.reported) / r.reported;
    if (rel <= kThroughputRelTol) ++within;
    if (rel > worst) {
      worst = rel;
      worst_label = r.label;
    }
  }
  const int total = static_cast<int>(std::size(rows));
  const bool anchor_ok =
      std::abs(compute_throughput(4, 128, 480, 807.4) - 304.39) < 0.01;
  Outcome o;
  o.pass = within == total && within >= kMinThroughputRows && anchor_ok;
  o.detail = std::to_string(within) + "/" + std::to_string(total) +
             " rows within 1%, worst " + fmt("%.3f%%", 100 * worst) + " (" + worst_label + ")";
  return o;
}

Outcome colocated_additivity() {
  const ExperimentConfig c = preset("libero-pi0-8gpu-colocated-measured");
  const RunSpec spec = make_run_spec(c);
  const RunResult r = simulate(spec, c.seeds.front());
  const MetricsReport rep = build_report(c.name, spec, r);
  const double rel = std::abs(rep.total_s - kMeasuredTotalS) / kMeasuredTotalS;
  Outcome o;
  o.pass = rel <= kColocatedRelTol;
  o.detail = "rollout " + fmt("%.1f", rep.rollout_s) + " s + actor " + fmt("%.1f", rep.actor_s) +
             " s -> total " + fmt("%.1f", rep.total_s) + " s vs 807.4 (" +
             fmt("%.3f%%", 100 * rel) + ")";
  return o;
}

using BatchLog = std::vector<std::pair<int, std::vector<int>>>;  // (time, ids)

// Event-driven replay through DynamicBatcher.
BatchLog replay_batcher(const std::vector<int>& arrivals, const BatchTriggerConfig& cfg) {
  DynamicBatcher b;
  BatchLog log;
  std::size_t next = 0;
  while (true) {
    std::optional<double> t;
    if (next < arrivals.size()) t = arrivals[next];
    if (auto d = b.deadline(cfg)) t = t ? std::min(*t, *d) : *d;
    if (!t) break;
    const double now = *t;
    while (next < arrivals.size() && arrivals[next] == now) {
      InferenceRequest req;
      req.env_id = static_cast<int>(next);
      req.enqueue_time = now;
      b.offer(req, now);
      ++next;
    }
    while (auto batch = b.poll(now, cfg)) {
      std::vector<int> ids;
      for (const InferenceRequest& r : *batch) ids.push_back(r.env_id);
      log.emplace_back(static_cast<int>(now), ids);
    }
  }
  return log;
}

// Brute force: walk every integer instant and apply the trigger rule.
BatchLog oracle_batches(const std::vector<int>& arrivals, int b_max, int t_max) {
  BatchLog log;
  std::vector<int> pending;
  int anchor = 0;
  std::size_t next = 0;
  const int horizon = kBatcherMaxTime + static_cast<int>(arrivals.size()) * (t_max + 1) + 1;
  for (int t = 0; t <= horizon; ++t) {
    while (next < arrivals.size() && arrivals[next] == t) {
      if (pending.empty()) anchor = t;
      pending.push_back(static_cast<int>(next));
      ++next;
    }
    while (!pending.empty() &&
           (static_cast<int>(pending.size()) >= b_max || t - anchor >= t_max)) {
      const std::size_t take = std::min<std::size_t>(pending.size(), b_max);
      log.emplace_back(t, std::vector<int>(pending.begin(), pending.begin() + take));
      pending.erase(pending.begin(), pending.begin() + take);
      anchor = t;
    }
  }
  return log;
}

void nondecreasing_sequences(std::vector<int>& cur, int max_len,
                             const std::function<void(const std::vector<int>&)>& fn) {
  fn(cur);
  if (static_cast<int>(cur.size()) == max_len) return;
  const int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v <= kBatcherMaxTime; ++v) {
    cur.push_back(v);
    nondecreasing_sequences(cur, max_len, fn);
    cur.pop_back();
  }
}

Outcome batcher_oracle() {
  std::int64_t cases = 0, mismatches = 0;
  std::vector<int> cur;
  nondecreasing_sequences(cur, kBatcherMaxLen, [&](const std::vector<int>& arrivals) {
    for (int b = 1; b <= 4; ++b) {
      for (int t = 0; t <= kBatcherMaxTime; ++t) {
        ++cases;
        if (replay_batcher(arrivals, BatchTriggerConfig{b, static_cast<double>(t)}) !=
            oracle_batches(arrivals, b, t)) {
          ++mismatches;
        }
      }
    }
  });
  Outcome o;
  o.pass = mismatches == 0 && cases > 0;
  o.detail = std::to_string(cases) + " replays, " + std::to_string(mismatches) + " mismatches";
  return o;
}

int pick(RngStream& rng, int lo, int hi) {
  return lo + std::min(hi - lo, static_cast<int>(rng.uniform() * (hi - lo + 1)));
}

double uniform(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Random disaggregated shape; one update round per rollout epoch.
RunSpec random_shape(RngStream& g) {
  const int n_devices = std::vector<int>{2, 4, 8}[static_cast<std::size_t>(pick(g, 0, 2))];
  Ratio ratio{1, 1};
  if (n_devices % 4 == 0 && g.uniform() < 0.3) ratio = Ratio{3, 1};
  RunSpec s;
  s.plan = build_placement(Strategy::kDisaggregated, n_devices, ratio);
  const int groups = static_cast<int>(s.plan.rollout_devices.size());
  PipelineConfig& p = s.pipeline;
  p.n_env = groups * pick(g, 8, 16);
  p.episode_length = pick(g, 40, 120);
  p.chunk_size = pick(g, 5, 10);
  p.n_rollout_epochs = pick(g, 2, 4);
  const int spt = samples_per_trajectory(p);
  const int global = spt * p.n_env;
  p.streamer = StreamerConfig{g.uniform() < 0.5, g.uniform() < 0.5 ? spt : global, global};
  p.max_staleness = 1;
  return s;
}

Outcome dominance() {
  const WorkloadSpec longtail = make_run_spec(preset("libero-pi05-8gpu-rollout-async")).workload;
  const BatchTriggerConfig longtail_trigger =
      preset("libero-pi05-8gpu-rollout-async").pipeline.trigger;
  int ta_violations = 0, ra_violations = 0;
  double ta_worst = 0.0, ra_worst = 0.0;
  for (int i = 0; i < kDominanceConfigs; ++i) {
    RngStream g(0xd0d0 + static_cast<std::uint64_t>(i));
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);

    // train_async vs the synchronous disaggregated baseline, lockstep rollout.
    RunSpec s = random_shape(g);
    WorkloadSpec w;
    w.env_step = LatencyModel::log_normal_shifted(uniform(g, 0, 2), uniform(g, 0.2, 1),
                                                  uniform(g, 1, 10));
    w.inference = LatencyModel::batch_affine(uniform(g, 1, 5), uniform(g, 0, 1));
    w.train_microbatch = LatencyModel::log_normal_shifted(uniform(g, 0, 1.5), 0.3, 1);
    w.grad_aggregate = uniform(g, 0, 3);
    w.weight_sync = uniform(g, 0, 3);
    w.comm_per_trajectory = uniform(g, 0, 1);
    s.workload = w;
    s.pipeline.trigger = BatchTriggerConfig{s.pipeline.n_env, kNoTimeout};
    RunSpec sync = s;
    sync.pipeline.train_async = false;
    RunSpec ta = s;
    ta.pipeline.train_async = true;
    const double m_sync = simulate(sync, seed).makespan();
    const double m_ta = simulate(ta, seed).makespan();
    if (m_ta > m_sync) {
      ++ta_violations;
      ta_worst = std::max(ta_worst, (m_ta - m_sync) / m_sync);
    }

    // rollout_async vs lockstep on the long-tail preset.
    RunSpec l = random_shape(g);
    l.workload = longtail;
    l.pipeline.train_async = g.uniform() < 0.5;
    l.pipeline.trigger = longtail_trigger;
    RunSpec lock = l;
    lock.pipeline.rollout_async = false;
    RunSpec ra = l;
    ra.pipeline.rollout_async = true;
    const double m_lock = simulate(lock, seed).makespan();
    const double m_ra = simulate(ra, seed).makespan();
    if (m_ra > m_lock) {
      ++ra_violations;
      ra_worst = std::max(ra_worst, (m_ra - m_lock) / m_lock);
    }
  }
  Outcome o;
  o.pass = ta_violations == 0 && ra_violations == 0;
  o.detail = std::to_string(kDominanceConfigs) + " configs: train_async>sync " +
             std::to_string(ta_violations) + ", rollout_async>lockstep " +
             std::to_string(ra_violations) + " violations";
  if (!o.pass) {
    o.detail += " (worst " + fmt("%.2f%%", 100 * std::max(ta_worst, ra_worst)) + ")";
  }
  return o;
}

Outcome regime_reversal() {
  const double mani_ta = mean_throughput(preset("maniskill-pi0-8gpu-train-async"));
  const double mani_ra = mean_throughput(preset("maniskill-pi0-8gpu-rollout-async"));
  const double libero_ta = mean_throughput(preset("libero-pi05-8gpu-train-async"));
  const double libero_ra = mean_throughput(preset("libero-pi05-8gpu-rollout-async"));
  Outcome o;
  o.pass = mani_ra < mani_ta && libero_ra > libero_ta;
  o.detail = "maniskill train_async " + fmt("%.2f", mani_ta) + " vs +rollout_async " +
             fmt("%.2f", mani_ra) + "; libero " + fmt("%.2f", libero_ta) + " vs " +
             fmt("%.2f", libero_ra) + " steps/s";
  return o;
}

Outcome cumulative_trend() {
  const double colocated = mean_throughput(preset("libero-pi05-8gpu-colocated"));
  const double disagg = mean_throughput(preset("libero-pi05-8gpu-disaggregated"));
  const double ta = mean_throughput(preset("libero-pi05-8gpu-train-async"));
  const double ra = mean_throughput(preset("libero-pi05-8gpu-rollout-async"));
  const double streamer = mean_throughput(preset("libero-pi05-8gpu-streamer"));
  const double gain = speedup_percent(colocated, streamer);
  Outcome o;
  o.pass = disagg < ta && ta < ra && ra <= streamer && gain >= kFullAsyncMinPct &&
           gain <= kFullAsyncMaxPct;
  o.detail = "disaggregated " + fmt("%.1f", disagg) + " < train_async " + fmt("%.1f", ta) +
             " < rollout_async " + fmt("%.1f", ra) + " <= streamer " + fmt("%.1f", streamer) +
             "; full async vs colocated " + fmt("%+.2f%%", gain);
  return o;
}

std::map<std::string, double> ratio_makespans(const std::string& name) {
  const ExperimentConfig base = preset(name);
  std::map<std::string, double> out;
  for (const char* ratio : {"1:1", "3:1"}) {
    const ExperimentConfig c = with_field(base, "placement.ratio", ratio);
    out[ratio] = simulate_report(c, c.seeds.front()).total_s;
  }
  return out;
}

Outcome ratio_analysis() {
  const auto ta = ratio_makespans("libero-pi05-ratio-train-async");
  const auto ra = ratio_makespans("libero-pi05-ratio-rollout-async");
  Outcome o;
  o.pass = ta.at("3:1") < ta.at("1:1") && ra.at("1:1") <= ra.at("3:1");
  o.detail = "train_async makespan 1:1 " + fmt("%.0f", ta.at("1:1")) + " s, 3:1 " +
             fmt("%.0f", ta.at("3:1")) + " s; +rollout_async 1:1 " + fmt("%.0f", ra.at("1:1")) +
             " s, 3:1 " + fmt("%.0f", ra.at("3:1")) + " s";
  return o;
}

RunResult live_run(const ExperimentConfig& c, std::uint64_t seed, double time_scale) {
  const RunSpec spec = make_run_spec(c);
  RunResult r = run_live(spec, seed, LiveOptions{time_scale, make_learner(c), nullptr});
  g_staleness.observe(spec.pipeline, r);
  return r;
}

Outcome streamer_equivalence() {
  const ExperimentConfig c = preset("toy-bandit-async");
  const LearnerConfig learner = make_learner(c);
  StreamerConfig full = c.pipeline.streamer;
  full.enabled = false;
  double worst = 0.0;
  int failures = 0;
  for (int seed = 1; seed <= kStreamerSeeds; ++seed) {
    const RunResult r = live_run(c, static_cast<std::uint64_t>(seed), 0.001);
    const std::vector<double> batch = replay_updates(r, full, learner);
    double diff = r.final_weights.size() == batch.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < batch.size() && i < r.final_weights.size(); ++i) {
      diff = std::max(diff, std::abs(r.final_weights[i] - batch[i]));
    }
    worst = std::max(worst, diff);
    if (!(diff <= kStreamerTol)) ++failures;
  }
  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(kStreamerSeeds) + " seeds, max |w_streamer - w_full| = " +
             fmt("%.3g", worst);
  return o;
}

Outcome determinism() {
  int presets = 0, unstable = 0;
  std::string first_bad;
  for (const char* name :
       {"libero-pi05-8gpu-colocated", "libero-pi05-8gpu-disaggregated",
        "libero-pi05-8gpu-train-async", "libero-pi05-8gpu-rollout-async",
        "libero-pi05-8gpu-streamer", "libero-pi05-ratio-train-async",
        "libero-pi05-ratio-rollout-async", "maniskill-pi0-8gpu-colocated",
        "maniskill-pi0-8gpu-disaggregated", "maniskill-pi0-8gpu-train-async",
        "maniskill-pi0-8gpu-rollout-async", "maniskill-pi0-8gpu-streamer",
        "libero-pi0-8gpu-colocated-measured"}) {
    const ExperimentConfig c = preset(name);
    const RunSpec spec = make_run_spec(c);
    std::set<std::string> hashes;
    for (int i = 0; i < kDeterminismRepeats; ++i) {
      hashes.insert(trace_hash(simulate(spec, c.seeds.front()).trace));
    }
    ++presets;
    if (hashes.size() != 1) {
      ++unstable;
      if (first_bad.empty()) first_bad = name;
    }
  }
  Outcome o;
  o.pass = unstable == 0;
  o.detail = std::to_string(presets) + " presets x " + std::to_string(kDeterminismRepeats) +
             " runs, " + std::to_string(unstable) + " with differing hashes" +
             (first_bad.empty() ? "" : " (first: " + first_bad + ")");
  return o;
}

Outcome toy_parity() {
  double mean[2] = {0, 0};
  double lowest = 1.0;
  bool within_updates = true;
  const char* names[2] = {"toy-bandit-sync", "toy-bandit-async"};
  for (int k = 0; k < 2; ++k) {
    const ExperimentConfig c = preset(names[k]);
    for (std::uint64_t seed : c.seeds) {
      const RunResult r = live_run(c, seed, c.time_scale);
      const double success = r.success_curve.empty() ? 0.0 : r.success_curve.back().success_rate;
      if (r.rounds > kToyMaxUpdates) within_updates = false;
      lowest = std::min(lowest, success);
      mean[k] += success / static_cast<double>(c.seeds.size());
    }
  }
  Outcome o;
  o.pass = lowest >= kToyMinSuccess && std::abs(mean[0] - mean[1]) <= kToyMaxMeanGap &&
           within_updates;
  o.detail = "mean success sync " + fmt("%.3f", mean[0]) + ", async " + fmt("%.3f", mean[1]) +
             ", lowest run " + fmt("%.3f", lowest);
  return o;
}

std::vector<ScalingRow> scaling_sweep(double comm, double comm_scale) {
  const ExperimentConfig base = preset("libero-pi05-8gpu-streamer");
  std::map<int, MetricsReport> runs;
  for (int nodes = 1; nodes <= kMaxNodes; ++nodes) {
    ExperimentConfig c = base;
    c = with_field(c, "placement.n_devices", std::to_string(8 * nodes));
    c = with_field(c, "run.n_env", std::to_string(base.pipeline.n_env * nodes));
    c = with_field(c, "pipeline.global_batch",
                   std::to_string(base.pipeline.streamer.global_batch_size * nodes));
    c = with_field(c, "workload.comm_per_trajectory", fmt("%.17g", comm));
    c = with_field(c, "workload.comm_scale_per_node", fmt("%.17g", comm_scale));
    runs[nodes] = simulate_report(c, c.seeds.front());
  }
  return scaling_report(runs).rows;
}

Outcome scaling_trend() {
  const auto flat = scaling_sweep(0.0, 0.0);
  double worst = 0.0;
  for (const ScalingRow& r : flat) worst = std::max(worst, std::abs(r.efficiency - 1.0));
  const auto comm = scaling_sweep(kScalingCommPerTrajectory, kScalingCommScalePerNode);
  bool decreasing = true;
  for (std::size_t i = 1; i < comm.size(); ++i) {
    if (!(comm[i].efficiency < comm[i - 1].efficiency)) decreasing = false;
  }
  Outcome o;
  o.pass = worst <= kLinearTol && decreasing;
  o.detail = "no comm: max |efficiency - 1| " + fmt("%.4f", worst) + " over 1.." +
             std::to_string(kMaxNodes) + " nodes; with comm: efficiency " +
             fmt("%.3f", comm.front().efficiency) + " -> " + fmt("%.3f", comm.back().efficiency) +
             (decreasing ? ", strictly decreasing" : ", NOT strictly decreasing");
  return o;
}

Outcome staleness_bound() {
  Outcome o;
  o.pass = g_staleness.violations == 0 && g_staleness.consumed > 0;
  o.detail = std::to_string(g_staleness.runs) + " runs, " +
             std::to_string(g_staleness.consumed) + " consumed trajectories, " +
             std::to_string(g_staleness.violations) + " with gap > 1";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)();
};

}  // namespace
}  // namespace asyncrl

int main() {
  using namespace asyncrl;
  // Staleness is checked last so it sees every other run.
  const Criterion criteria[] = {
      {1, "throughput formula back-check", throughput_back_check},
      {2, "colocated additivity", colocated_additivity},
      {3, "dynamic batcher oracle", batcher_oracle},
      {4, "dominance properties", dominance},
      {5, "regime reversal", regime_reversal},
      {6, "cumulative improvement trend", cumulative_trend},
      {7, "ratio analysis", ratio_analysis},
      {8, "streamer gradient equivalence", streamer_equivalence},
      {10, "determinism", determinism},
      {11, "toy parity", toy_parity},
      {12, "scaling trend", scaling_trend},
      {9, "staleness bound", staleness_bound},
  };
  std::map<int, std::string> lines;
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::ostringstream line;
    line << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << " " << c.name << ": "
         << o.detail << " [" << fmt("%.1f", secs) << " s]";
    lines[c.id] = line.str();
  }
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
