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

// Python bindings: thin wrappers over config loading, the engines and
// the metric helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "asyncrl/config.hpp"
#include "asyncrl/engine/trace_io.hpp"
#include "asyncrl/error.hpp"
#include "asyncrl/metrics.hpp"
#include "asyncrl/strategy.hpp"

namespace py = pybind11;

namespace asyncrl {
namespace {

ExperimentConfig load(const std::string& path, const std::map<std::string, std::string>& overrides) {
  EnvOverrides all = environment_overrides();
  for (const auto& [k, v] : overrides) all[k] = v;
  return load_config(path, all);
}

py::dict config_summary(const ExperimentConfig& c) {
  py::dict d;
  d["name"] = c.name;
  d["fingerprint"] = config_fingerprint(c);
  d["strategy"] = std::string(strategy_name(c.strategy));
  d["n_devices"] = c.n_devices;
  d["ratio"] = c.ratio.to_string();
  d["engine"] = std::string(engine_kind_name(c.engine));
  d["seeds"] = c.seeds;
  return d;
}

py::dict run(const std::string& path, std::optional<std::uint64_t> seed,
             const std::map<std::string, std::string>& overrides, bool with_trace) {
  const ExperimentConfig c = load(path, overrides);
  const std::uint64_t s = seed.value_or(c.seeds.front());
  StrategyOutcome out;
  {
    py::gil_scoped_release release;
    out = run_experiment(c, s);
  }
  const MetricsReport& r = out.report;
  py::dict d;
  d["name"] = r.name;
  d["strategy"] = r.strategy;
  d["n_devices"] = r.n_devices;
  d["ratio"] = r.ratio;
  d["throughput"] = r.throughput;
  d["total_s"] = r.total_s;
  d["rollout_s"] = r.rollout_s;
  d["actor_s"] = r.actor_s;
  d["env_steps"] = r.env_steps;
  d["per_device_utilization"] = r.per_device_utilization;
  d["config_fingerprint"] = r.config_fingerprint;
  d["seed"] = r.seed;
  d["trace_hash"] = r.trace_hash;
  d["rounds"] = out.result.rounds;
  d["final_version"] = out.result.final_version;
  d["max_staleness_gap"] = out.result.max_gap();
  d["invariant_violations"] = check_run_invariants(make_run_spec(c), out.result);
  py::list curve;
  for (const SuccessPoint& p : out.result.success_curve) {
    curve.append(py::make_tuple(p.update_index, p.success_rate));
  }
  d["success_curve"] = curve;
  if (with_trace) d["trace_csv"] = trace_to_csv(out.result.trace);
  return d;
}

}  // namespace
}  // namespace asyncrl

PYBIND11_MODULE(_core, m) {
  using namespace asyncrl;
  m.doc() = "Asynchronous RL pipeline simulator";

  py::object error = py::exception<Error>(m, "Error", PyExc_RuntimeError);
  py::exception<ConfigError>(m, "ConfigError", error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::module_ core = py::module_::import("asyncrl._core");
      const auto* config = dynamic_cast<const ConfigError*>(&e);
      py::object type = core.attr(config ? "ConfigError" : "Error");
      py::object exc = type(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      exc.attr("field") = config ? py::object(py::str(config->field())) : py::object(py::none());
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("compute_throughput", &compute_throughput, py::arg("n_re"), py::arg("n_env"),
        py::arg("n_es"), py::arg("total_time_s"));
  m.def("speedup_percent", &speedup_percent, py::arg("baseline_throughput"),
        py::arg("variant_throughput"));
  m.def(
      "validate_config",
      [](const std::string& path, const std::map<std::string, std::string>& overrides) {
        return config_summary(load(path, overrides));
      },
      py::arg("path"), py::arg("overrides") = std::map<std::string, std::string>{});
  m.def("run_config", &run, py::arg("path"), py::arg("seed") = py::none(),
        py::arg("overrides") = std::map<std::string, std::string>{},
        py::arg("with_trace") = false);
}
