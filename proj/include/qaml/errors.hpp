// Copyright 2026 The qaml Authors.
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
/**
 * @file
 * Exception types shared by every qaml module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qaml {

enum class ErrorCode {
    InvalidBitstring,
    QubitCountExceeded,
    InvalidState,
    NonFiniteAngle,
    TargetOutOfRange,
    DuplicateTarget,
    ArityMismatch,
    UnknownGate,
    OracleSizeExceeded,
    DuplicateBasisState,
    LengthMismatch,
    EmptyInput,
    NonFiniteFeature,
    ZeroVector,
    UnsupportedEncoding,
    ParamCountMismatch,
    NonFiniteParam,
    InvalidTemplate,
    QubitMismatch,
    EmptyDataset,
    InvalidConfig,
    InvalidDataset,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidBitstring: return "InvalidBitstring";
    case ErrorCode::QubitCountExceeded: return "QubitCountExceeded";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NonFiniteAngle: return "NonFiniteAngle";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::DuplicateTarget: return "DuplicateTarget";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::OracleSizeExceeded: return "OracleSizeExceeded";
    case ErrorCode::DuplicateBasisState: return "DuplicateBasisState";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::ParamCountMismatch: return "ParamCountMismatch";
    case ErrorCode::NonFiniteParam: return "NonFiniteParam";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::QubitMismatch: return "QubitMismatch";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidDataset: return "InvalidDataset";
    }
    return "Unknown";
}

/// Base error. The message is prefixed with the code name, e.g. "ZeroVector: ...".
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by circuit execution; carries the index of the offending op.
class ExecutionError : public Error {
  public:
    ExecutionError(const Error &cause, std::size_t op_index)
        : Error(cause.code(), "op " + std::to_string(op_index) + ": " +
                                  cause.what()),
          op_index_(op_index) {}

    [[nodiscard]] std::size_t op_index() const noexcept { return op_index_; }

  private:
    std::size_t op_index_;
};

/// Circuit-DSL syntax or validation failure. Line and column are 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::size_t column, std::string message,
               std::string offending_token, const std::string &origin = "<input>")
        : std::runtime_error(origin + ":" + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message +
                             (offending_token.empty()
                                  ? std::string{}
                                  : " ('" + offending_token + "')")),
          line_(line), column_(column), message_(std::move(message)),
          token_(std::move(offending_token)) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string &message() const noexcept { return message_; }
    [[nodiscard]] const std::string &offending_token() const noexcept { return token_; }

  private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string token_;
};

} // namespace qaml
