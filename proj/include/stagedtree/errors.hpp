// Copyright 2026 The stagedtree Authors
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
#include <stdexcept>
#include <string>
#include <vector>

namespace stagedtree {

/// Root of every error raised by the library. Domain errors (a requested
/// transformation is not admissible for the given tree) derive from
/// DomainError; malformed input derives from InputError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// Text that does not follow the tree file format or the polynomial grammar.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                   message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called on a tree that is not a well-formed event tree.
class InvalidTree : public InputError {
 public:
  using InputError::InputError;
};

class UnknownVertex : public InputError {
 public:
  explicit UnknownVertex(const std::string& id)
      : InputError("unknown vertex '" + id + "'") {}
};

/// A primitive symbol occurs twice in one product (non-square-free).
class SymbolRepeat : public DomainError {
 public:
  explicit SymbolRepeat(const std::string& symbol)
      : DomainError("symbol '" + symbol + "' repeats in a product"),
        symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class MissingSymbol : public DomainError {
 public:
  explicit MissingSymbol(const std::string& symbol)
      : DomainError("no value assigned to symbol '" + symbol + "'") {}
};

class NormalizationViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A factorization node with fewer than two entries, or with repeated labels.
class NodeTooSmall : public DomainError {
 public:
  using DomainError::DomainError;
};

class TwinNotFound : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The result of a transformation breaks the stage structure.
class NotStaged : public DomainError {
 public:
  explicit NotStaged(std::vector<std::string> violations)
      : DomainError(Join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out = "result is not a staged tree";
    for (const auto& s : v) out += "; " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class InvalidSite : public DomainError {
 public:
  explicit InvalidSite(const std::string& reason)
      : DomainError("invalid resize site: " + reason) {}
};

class FactorizationMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A (probability) distribution handed to the membership probe that does
/// not satisfy its preconditions.
class InvalidDistribution : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace stagedtree
