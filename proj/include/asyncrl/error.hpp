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

#ifndef ASYNCRL_ERROR_HPP_
#define ASYNCRL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace asyncrl {

enum class ErrorCode {
  kInvalidArgument,
  kIndivisibleRatio,
  kUnsupportedStrategy,
  kInconsistentConfig,
  kStepAfterDone,
  kEmptyBatch,
  kVersionRegression,
  kDimensionMismatch,
  kNonPositiveTime,
  kDeadlock,
  kStarvation,
  kConfig,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this type. The code lets
// callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by config parsing/validation. `field` is the dotted path of the
// offending field, e.g. "placement.ratio".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorCode::kConfig, field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace asyncrl

#endif  // ASYNCRL_ERROR_HPP_
