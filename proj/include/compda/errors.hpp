// Copyright 2026 The compda Authors
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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace compda {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed PDA text. line/column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A parameter outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The PDA's minimum storage number is below K-Q+1.
class InsufficientTau : public Error {
 public:
  InsufficientTau(std::size_t tau, std::size_t required)
      : Error("minimum storage number " + std::to_string(tau) +
              " is below the required K-Q+1 = " + std::to_string(required)),
        tau_(tau),
        required_(required) {}

  std::size_t tau() const noexcept { return tau_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t tau_;
  std::size_t required_;
};

// A row lost all of its Stars when restricted to an active set (outage).
class EmptyStarRow : public Error {
 public:
  explicit EmptyStarRow(std::size_t row)
      : Error("row " + std::to_string(row + 1) +
              " has no Star in the selected columns (outage)"),
        row_(row) {}

  // 0-based.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// `divisor` must divide `value`. `suggested_v` is set when the fix is a
// larger IVA length.
class DivisibilityError : public Error {
 public:
  DivisibilityError(std::uint64_t divisor, std::uint64_t value,
                    const std::string& what,
                    std::optional<std::uint64_t> suggested_v = std::nullopt)
      : Error(what),
        divisor_(divisor),
        value_(value),
        suggested_v_(suggested_v) {}

  std::uint64_t divisor() const noexcept { return divisor_; }
  std::uint64_t value() const noexcept { return value_; }
  std::optional<std::uint64_t> suggested_v() const noexcept {
    return suggested_v_;
  }

 private:
  std::uint64_t divisor_;
  std::uint64_t value_;
  std::optional<std::uint64_t> suggested_v_;
};

// Neither r | K nor (K-r) | K with an admissible q.
class NoMatchingFamily : public Error {
 public:
  using Error::Error;
};

// A scheme invariant broke at run time. Always a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace compda
