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

// Trace serialization.
//
// Internal format: CSV with a two-line preamble
//
//   # asyncrl-trace v1 fingerprint=<hex> seed=<n>
//   worker,class,device,phase,start_ms,end_ms,meta
//
// `device` is empty for host-side events and `meta` is "k=v;k=v".
//
// Export format: the browser trace-viewer JSON array, one complete ("X")
// event per interval with ts/dur in microseconds, pid = device (-1 for the
// host) and tid = worker.

#ifndef ASYNCRL_ENGINE_TRACE_IO_HPP_
#define ASYNCRL_ENGINE_TRACE_IO_HPP_

#include <iosfwd>
#include <string>

#include "asyncrl/engine/trace.hpp"

namespace asyncrl {

void write_trace_header(std::ostream& out, const std::string& fingerprint,
                        std::uint64_t seed);
void write_trace_row(std::ostream& out, const TraceEvent& event);
void write_trace_csv(std::ostream& out, const Trace& trace);
std::string trace_to_csv(const Trace& trace);

Trace read_trace_csv(std::istream& in);
Trace load_trace(const std::string& path);
void save_trace(const std::string& path, const Trace& trace);

std::string trace_to_chrome_json(const Trace& trace);
// Inverse of the export, used for round-trip checks.
Trace trace_from_chrome_json(const std::string& json);

}  // namespace asyncrl

#endif  // ASYNCRL_ENGINE_TRACE_IO_HPP_
