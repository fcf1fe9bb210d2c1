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

#include "asyncrl/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>

namespace asyncrl {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t kind,
                            std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : engine_(make_engine(seed, 0, 0)) {}

RngStream::RngStream(std::uint64_t seed, StreamKind kind, std::uint64_t index)
    : engine_(make_engine(seed, static_cast<std::uint64_t>(kind), index)) {}

double RngStream::uniform() {
  ++draws_;
  // Top 53 bits, shifted by half an ulp so 0 is never produced.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u = uniform();
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
}

}  // namespace asyncrl
