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

#ifndef ASYNCRL_RNG_HPP_
#define ASYNCRL_RNG_HPP_

#include <cstdint>
#include <random>

namespace asyncrl {

// Purpose tags used to derive independent streams from one run seed.
enum class StreamKind : std::uint64_t {
  kEnvLatency = 1,
  kEnvContext = 2,
  kPolicy = 3,
  kTrain = 4,
  kProperty = 5,
};

// A reproducible random stream. Every call to uniform() or normal()
// consumes exactly one 64-bit output of the underlying engine, so the
// position in the stream is a pure function of the number of draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);
  RngStream(std::uint64_t seed, StreamKind kind, std::uint64_t index);

  // Uniform in the open interval (0, 1).
  double uniform();
  // Standard normal via the inverse CDF of one uniform draw.
  double normal();

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace asyncrl

#endif  // ASYNCRL_RNG_HPP_
