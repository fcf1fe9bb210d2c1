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

#include "asyncrl/engine/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asyncrl/error.hpp"

namespace asyncrl {

namespace {

constexpr std::string_view kMagic = "# asyncrl-trace v1";
constexpr std::string_view kColumns = "worker,class,device,phase,start_ms,end_ms,meta";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_trace(const std::string& what) {
  throw Error(ErrorCode::kIo, "malformed trace: " + what);
}

std::int64_t to_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    bad_trace("bad integer '" + s + "'");
  }
  return v;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad_trace("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_trace("bad number '" + s + "'");
  }
}

}  // namespace

void write_trace_header(std::ostream& out, const std::string& fingerprint,
                        std::uint64_t seed) {
  out << kMagic << " fingerprint=" << fingerprint << " seed=" << seed << '\n'
      << kColumns << '\n';
}

void write_trace_row(std::ostream& out, const TraceEvent& e) {
  out << e.worker << ',' << worker_class_name(e.worker_class) << ',';
  if (e.device) out << *e.device;
  out << ',' << phase_name(e.phase) << ',' << format_double(e.start) << ','
      << format_double(e.end) << ',';
  for (std::size_t i = 0; i < e.meta.size(); ++i) {
    if (i > 0) out << ';';
    out << e.meta[i].first << '=' << e.meta[i].second;
  }
  out << '\n';
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  write_trace_header(out, trace.config_fingerprint, trace.seed);
  for (const TraceEvent& e : trace.events) write_trace_row(out, e);
}

std::string trace_to_csv(const Trace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

Trace read_trace_csv(std::istream& in) {
  Trace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0) {
    bad_trace("missing header");
  }
  std::istringstream header(line.substr(kMagic.size()));
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) bad_trace("bad header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "fingerprint") {
      trace.config_fingerprint = value;
    } else if (key == "seed") {
      trace.seed = static_cast<std::uint64_t>(std::stoull(value));
    }
  }
  if (!std::getline(in, line) || line != kColumns) bad_trace("missing columns");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 7) bad_trace("expected 7 columns: " + line);
    TraceEvent e;
    e.worker = static_cast<int>(to_int(cols[0]));
    e.worker_class = parse_worker_class(cols[1]);
    if (!cols[2].empty()) e.device = static_cast<int>(to_int(cols[2]));
    e.phase = parse_phase(cols[3]);
    e.start = to_double(cols[4]);
    e.end = to_double(cols[5]);
    if (!cols[6].empty()) {
      for (const std::string& kv : split(cols[6], ';')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) bad_trace("bad meta '" + kv + "'");
        e.meta.emplace_back(kv.substr(0, eq), to_int(kv.substr(eq + 1)));
      }
    }
    trace.events.push_back(std::move(e));
  }
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace '" + path + "'");
  return read_trace_csv(in);
}

void save_trace(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write trace '" + path + "'");
  write_trace_csv(out, trace);
}

std::string trace_to_chrome_json(const Trace& trace) {
  nlohmann::json events = nlohmann::json::array();
  for (const TraceEvent& e : trace.events) {
    nlohmann::json args = nlohmann::json::object();
    for (const auto& [k, v] : e.meta) args[k] = v;
    events.push_back({
        {"name", phase_name(e.phase)},
        {"cat", worker_class_name(e.worker_class)},
        {"ph", "X"},
        {"ts", e.start * 1000.0},
        {"dur", (e.end - e.start) * 1000.0},
        {"pid", e.device.value_or(-1)},
        {"tid", e.worker},
        {"args", args},
    });
  }
  return events.dump();
}

Trace trace_from_chrome_json(const std::string& json) {
  nlohmann::json events;
  try {
    events = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& ex) {
    bad_trace(ex.what());
  }
  if (!events.is_array()) bad_trace("expected a JSON array");
  Trace trace;
  for (const auto& j : events) {
    TraceEvent e;
    e.phase = parse_phase(j.at("name").get<std::string>());
    e.worker_class = parse_worker_class(j.at("cat").get<std::string>());
    const double ts = j.at("ts").get<double>();
    e.start = ts / 1000.0;
    e.end = (ts + j.at("dur").get<double>()) / 1000.0;
    const int pid = j.at("pid").get<int>();
    if (pid >= 0) e.device = pid;
    e.worker = j.at("tid").get<int>();
    if (j.contains("args")) {
      for (const auto& [k, v] : j.at("args").items()) {
        e.meta.emplace_back(k, v.get<std::int64_t>());
      }
    }
    trace.events.push_back(std::move(e));
  }
  return trace;
}

}  // namespace asyncrl
