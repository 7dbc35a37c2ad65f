// Copyright 2026 The cdmpo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdmpo {

enum class ErrorCode {
  MalformedLine,
  InconsistentLength,
  EmptyInput,
  MalformedFile,
  LengthMismatch,
  TooLarge,
  DimensionMismatch,
  NotNormalized,
  IndexOutOfRange,
  CutOutOfRange,
  EmptyOperator,
  RankCollapse,
  DimensionError,
  GaugeViolation,
  DuplicatePoolString,
  BadReference,
  SingularPencil,
  NoConvergence,
  SingularSystem,
  ZeroOperator,
  SupportChanged,
};

std::string_view to_string(ErrorCode code);

/// True for failures of a numerical procedure (as opposed to bad input data).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cdmpo
