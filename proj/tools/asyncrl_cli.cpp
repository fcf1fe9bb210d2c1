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

// Command-line front end.
//
//   asyncrl run --config cfg.yaml [--seed N] [--out DIR] [--check]
//   asyncrl compare --config a.yaml --config b.yaml [--baseline NAME]
//   asyncrl sweep --config cfg.yaml --param placement.ratio=1:1,3:1
//   asyncrl trace-export --trace trace.csv --out trace.json
//   asyncrl validate --config cfg.yaml
//
// Exit status: 0 success, 2 config error, 3 deadlock or starvation,
// 4 invariant violation under --check, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asyncrl/config.hpp"
#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/metrics.hpp"
#include "asyncrl/strategy.hpp"

namespace fs = std::filesystem;

namespace asyncrl {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCheck = 4;

struct CommonOptions {
  std::vector<std::string> configs;
  std::vector<std::uint64_t> seeds;
  std::string out;
  std::string engine;
  std::string format = "text";
  int jobs = 1;
  bool check = false;
};

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

ExperimentConfig load(const std::string& path, const CommonOptions& opts) {
  ExperimentConfig config = load_config(path, environment_overrides());
  if (!opts.engine.empty()) config = with_field(config, "engine.kind", opts.engine);
  if (!opts.seeds.empty()) config.seeds = opts.seeds;
  return config;
}

fs::path output_dir(const ExperimentConfig& config, const CommonOptions& opts) {
  return opts.out.empty() ? fs::path(config.output_dir) : fs::path(opts.out);
}

// Runs fn(i) for i in [0, n) with at most `jobs` in flight. Results keep
// index order; the first exception is rethrown after all tasks finish.
template <typename T>
std::vector<T> parallel_map(int n, int jobs, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::exception_ptr first_error;
  const int width = std::max(1, jobs);
  for (int begin = 0; begin < n; begin += width) {
    std::vector<std::future<T>> wave;
    const int end = std::min(n, begin + width);
    for (int i = begin; i < end; ++i) {
      wave.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                fn, i));
    }
    for (int i = begin; i < end; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = wave[static_cast<std::size_t>(i - begin)].get();
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::string success_csv(const RunResult& result) {
  std::ostringstream out;
  out << "update_index,exact_success_rate,policy_version\n";
  char buf[64];
  for (const SuccessPoint& p : result.success_curve) {
    std::snprintf(buf, sizeof(buf), "%.6f", p.success_rate);
    out << p.update_index << ',' << buf << ',' << p.version << '\n';
  }
  return out.str();
}

void enforce_invariants(const ExperimentConfig& config, std::uint64_t seed,
                        const RunResult& result) {
  const auto problems = check_run_invariants(make_run_spec(config), result);
  if (problems.empty()) return;
  std::string message = config.name + " seed " + std::to_string(seed) + ":";
  for (const std::string& p : problems) message += "\n  " + p;
  throw CheckFailure(message);
}

// Runs one seed, streaming its trace to `trace_path` (empty: no trace).
MetricsReport run_one(const ExperimentConfig& config, std::uint64_t seed,
                      const fs::path& trace_path, bool check,
                      RunResult* keep = nullptr) {
  StrategyOutcome outcome;
  if (!trace_path.empty()) {
    fs::create_directories(trace_path.parent_path());
    std::ofstream sink(trace_path);
    if (!sink) throw Error(ErrorCode::kIo, "cannot write " + trace_path.string());
    outcome = run_experiment(config, seed, &sink);
    sink.close();
    // The streamed file is in completion order; rewrite it sorted by start.
    save_trace(trace_path.string(), outcome.result.trace);
  } else {
    outcome = run_experiment(config, seed);
  }
  if (check) enforce_invariants(config, seed, outcome.result);
  if (keep != nullptr) *keep = std::move(outcome.result);
  return outcome.report;
}

void print_reports(const std::vector<MetricsReport>& reports, const std::string& format) {
  if (format == "json") {
    std::cout << reports_to_json(reports) << '\n';
  } else if (format == "csv") {
    std::cout << reports_to_csv(reports);
  } else {
    std::cout << reports_to_text(reports);
  }
}

int cmd_run(const CommonOptions& opts) {
  const ExperimentConfig config = load(opts.configs.front(), opts);
  const fs::path dir = output_dir(config, opts);
  const bool many = config.seeds.size() > 1;
  const bool live = config.engine == EngineKind::kLive;
  const int n = static_cast<int>(config.seeds.size());
  const auto reports = parallel_map<MetricsReport>(n, opts.jobs, [&](int i) {
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(i)];
    const std::string suffix = many ? "-" + std::to_string(seed) : "";
    RunResult result;
    MetricsReport report =
        run_one(config, seed, dir / ("trace" + suffix + ".csv"), opts.check, &result);
    if (live) write_file(dir / ("success" + suffix + ".csv"), success_csv(result));
    return report;
  });
  write_file(dir / "report.json", reports_to_json(reports) + "\n");
  write_file(dir / "report.csv", reports_to_csv(reports));
  print_reports(reports, opts.format);
  return kExitOk;
}

int cmd_compare(const CommonOptions& opts, const std::string& baseline) {
  std::vector<ExperimentConfig> configs;
  for (const std::string& path : opts.configs) configs.push_back(load(path, opts));
  const int n = static_cast<int>(configs.size());
  auto reports = parallel_map<MetricsReport>(n, opts.jobs, [&](int i) {
    const ExperimentConfig& c = configs[static_cast<std::size_t>(i)];
    return run_one(c, c.seeds.front(), {}, opts.check);
  });
  // Default baseline: the first colocated config, else the first config.
  std::size_t base = 0;
  const auto colocated = std::find_if(reports.begin(), reports.end(), [](const MetricsReport& r) {
    return r.strategy == "colocated";
  });
  if (colocated != reports.end()) base = static_cast<std::size_t>(colocated - reports.begin());
  if (!baseline.empty()) {
    const auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const MetricsReport& r) { return r.name == baseline; });
    if (it == reports.end()) throw ConfigError("baseline", "no config named " + baseline);
    base = static_cast<std::size_t>(it - reports.begin());
  }
  apply_baseline(reports, base);
  if (!opts.out.empty()) {
    write_file(fs::path(opts.out) / "compare.json", reports_to_json(reports) + "\n");
    write_file(fs::path(opts.out) / "compare.csv", reports_to_csv(reports));
  }
  print_reports(reports, opts.format);
  return kExitOk;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) values.push_back(item);
  }
  return values;
}

// n_devices sweeps keep the per-device load constant by scaling the env
// count and global batch with the device count.
ExperimentConfig sweep_point(const ExperimentConfig& base, const std::string& field,
                             const std::string& value) {
  ExperimentConfig c = with_field(base, field, value);
  if (field == "placement.n_devices") {
    const double factor = static_cast<double>(c.n_devices) / base.n_devices;
    const auto scale = [&](int x) {
      return static_cast<int>(std::llround(static_cast<double>(x) * factor));
    };
    c = with_field(c, "run.n_env", std::to_string(scale(base.pipeline.n_env)));
    c = with_field(c, "pipeline.global_batch",
                   std::to_string(scale(base.pipeline.streamer.global_batch_size)));
  }
  c.name = base.name + "[" + field + "=" + value + "]";
  return c;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param) {
  const auto eq = param.find('=');
  if (eq == std::string::npos) throw ConfigError("param", "expected field=v1,v2,...");
  const std::string field = param.substr(0, eq);
  const std::vector<std::string> values = split_values(param.substr(eq + 1));
  if (values.empty()) throw ConfigError("param", "empty value list for " + field);

  const ExperimentConfig base = load(opts.configs.front(), opts);
  std::vector<ExperimentConfig> points;
  for (const std::string& v : values) points.push_back(sweep_point(base, field, v));
  const int n = static_cast<int>(points.size());
  auto reports = parallel_map<MetricsReport>(n, opts.jobs, [&](int i) {
    const ExperimentConfig& c = points[static_cast<std::size_t>(i)];
    return run_one(c, c.seeds.front(), {}, opts.check);
  });
  apply_baseline(reports, 0);

  std::string extra;
  if (field == "placement.n_devices" && reports.size() > 1) {
    std::map<int, MetricsReport> by_scale;
    for (std::size_t i = 0; i < reports.size(); ++i) by_scale[points[i].n_devices] = reports[i];
    extra = scaling_report_to_json(scaling_report(by_scale));
  } else if (field == "placement.ratio" && reports.size() > 1) {
    extra = ratio_report_to_json(ratio_balance_report(reports));
  }
  const fs::path dir = output_dir(base, opts);
  write_file(dir / "sweep.csv", reports_to_csv(reports));
  write_file(dir / "sweep.json", reports_to_json(reports) + "\n");
  if (!extra.empty()) write_file(dir / "sweep_summary.json", extra + "\n");
  print_reports(reports, opts.format);
  if (!extra.empty() && opts.format == "text") std::cout << extra << '\n';
  return kExitOk;
}

int cmd_trace_export(const std::string& input, const std::string& output,
                     const std::string& format) {
  if (input.size() >= 5 && input.compare(input.size() - 5, 5, ".json") == 0) {
    std::ifstream in(input);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + input);
    std::stringstream text;
    text << in.rdbuf();
    const Trace trace = trace_from_chrome_json(text.str());
    write_file(output, format == "csv" || format == "text" ? trace_to_csv(trace)
                                                           : trace_to_chrome_json(trace));
    return kExitOk;
  }
  const Trace trace = load_trace(input);
  write_file(output, format == "csv" ? trace_to_csv(trace) : trace_to_chrome_json(trace));
  return kExitOk;
}

int cmd_validate(const CommonOptions& opts) {
  for (const std::string& path : opts.configs) {
    const ExperimentConfig config = load(path, opts);
    std::cout << path << ": ok (" << config.name << ", fingerprint "
              << config_fingerprint(config) << ")\n";
  }
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kDeadlock:
    case ErrorCode::kStarvation:
      return kExitRuntime;
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIndivisibleRatio:
    case ErrorCode::kUnsupportedStrategy:
    case ErrorCode::kInconsistentConfig:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool many_configs) {
  auto* config = cmd->add_option("--config", opts.configs, "Experiment config file")
                     ->required()
                     ->check(CLI::ExistingFile);
  if (!many_configs) config->expected(1);
  cmd->add_option("--seed", opts.seeds, "Seed(s), replacing the config's list");
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--engine", opts.engine, "Engine override")
      ->check(CLI::IsMember({"virtual", "live"}));
  cmd->add_option("--jobs", opts.jobs, "Runs executed in parallel")->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "Report format on stdout")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_flag("--check", opts.check, "Verify run invariants; exit 4 on violation");
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Simulate and compare RL training pipeline schedules"};
  app.require_subcommand(1);

  CommonOptions run_opts, compare_opts, sweep_opts, validate_opts;
  auto* run = app.add_subcommand("run", "Run one config over its seeds");
  add_common(run, run_opts, false);

  std::string baseline;
  auto* compare = app.add_subcommand("compare", "Run several configs side by side");
  add_common(compare, compare_opts, true);
  compare->add_option("--baseline", baseline, "Name of the baseline config");

  std::string param;
  auto* sweep = app.add_subcommand("sweep", "Vary one field over a list of values");
  add_common(sweep, sweep_opts, false);
  sweep->add_option("--param", param, "field=v1,v2,...")->required();

  std::string trace_in, trace_out, trace_format = "chrome";
  auto* export_cmd = app.add_subcommand("trace-export", "Convert a trace file");
  export_cmd->add_option("--trace", trace_in, "Input trace (.csv or chrome .json)")
      ->required()
      ->check(CLI::ExistingFile);
  export_cmd->add_option("--out", trace_out, "Output file")->required();
  export_cmd->add_option("--format", trace_format, "Output format")
      ->check(CLI::IsMember({"chrome", "csv"}));

  auto* validate = app.add_subcommand("validate", "Parse and validate configs");
  validate->add_option("--config", validate_opts.configs, "Config file(s)")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*compare) return cmd_compare(compare_opts, baseline);
    if (*sweep) return cmd_sweep(sweep_opts, param);
    if (*export_cmd) return cmd_trace_export(trace_in, trace_out, trace_format);
    if (*validate) return cmd_validate(validate_opts);
  } catch (const CheckFailure& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitCheck;
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace
}  // namespace asyncrl

int main(int argc, char** argv) { return asyncrl::main_impl(argc, argv); }
