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

#include "cdmpo/errors.hpp"

namespace cdmpo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::InconsistentLength: return "InconsistentLength";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CutOutOfRange: return "CutOutOfRange";
    case ErrorCode::EmptyOperator: return "EmptyOperator";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::GaugeViolation: return "GaugeViolation";
    case ErrorCode::DuplicatePoolString: return "DuplicatePoolString";
    case ErrorCode::BadReference: return "BadReference";
    case ErrorCode::SingularPencil: return "SingularPencil";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::SupportChanged: return "SupportChanged";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::RankCollapse:
    case ErrorCode::GaugeViolation:
    case ErrorCode::SingularPencil:
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularSystem:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace cdmpo
