// Copyright 2026 The gsep Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsep {

enum class ErrorKind {
  Syntax,
  Range,
  FieldMismatch,
  DuplicateEntry,
  InvalidArgument,
  ZeroOrNegativeTrace,
  NotPositiveSemidefinite,
  DimensionMismatch,
  ConvergenceFailure,
  EdgeCollision,
  InfeasibleWitness,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroOrNegativeTrace: return "ZeroOrNegativeTrace";
    case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::EdgeCollision: return "EdgeCollision";
    case ErrorKind::InfeasibleWitness: return "InfeasibleWitness";
  }
  return "Error";
}

// Errors caused by the caller's input, as opposed to numerical breakdown.
inline bool is_input_error(ErrorKind kind) {
  return kind != ErrorKind::ConvergenceFailure &&
         kind != ErrorKind::InfeasibleWitness;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorKind kind, int line, int column, const std::string& what)
      : Error(kind, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gsep
