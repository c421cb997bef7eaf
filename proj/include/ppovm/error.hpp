// Copyright 2026 The ppovm Authors
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

#ifndef PPOVM_ERROR_HPP
#define PPOVM_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace ppovm {

enum class ErrorCode {
  DimensionMismatch,
  NotSquare,
  NotHermitian,
  NotPsd,
  EffectExceedsIdentity,
  NotUnitary,
  InvalidParameter,
  InvalidState,
  IncompletePovm,
  NotTracePreserving,
  InvalidProcessState,
  NotProductNormalization,
  NormStateInvalid,
  SupportViolation,
  ProbabilityNormalization,
  NoHull,
  NotPerfectlyDiscriminable,
  EmptyInput,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::EffectExceedsIdentity: return "EffectExceedsIdentity";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::IncompletePovm: return "IncompletePovm";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::InvalidProcessState: return "InvalidProcessState";
    case ErrorCode::NotProductNormalization: return "NotProductNormalization";
    case ErrorCode::NormStateInvalid: return "NormStateInvalid";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::ProbabilityNormalization: return "ProbabilityNormalization";
    case ErrorCode::NoHull: return "NoHull";
    case ErrorCode::NotPerfectlyDiscriminable: return "NotPerfectlyDiscriminable";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

// Domain error. `index` names the offending element (effect, Kraus operator,
// couple) when the failure is attributable to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace ppovm

#endif  // PPOVM_ERROR_HPP
