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

#include <compare>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace stagedtree {

/// True iff `s` matches `[A-Za-z_][A-Za-z0-9_]*`.
bool is_valid_symbol(std::string_view s);

/// The label of one edge: a non-empty set of primitive indeterminates. A
/// primitive label holds one symbol; a composite label (produced by a
/// resize) is the product of two or more distinct primitives. Two labels are
/// equal iff their primitive sets are equal.
class Label {
 public:
  explicit Label(std::string symbol);
  explicit Label(std::vector<std::string> symbols);
  Label(std::initializer_list<std::string> symbols)
      : Label(std::vector<std::string>(symbols)) {}

  bool is_primitive() const { return symbols_.size() == 1; }
  bool is_composite() const { return symbols_.size() > 1; }

  /// Sorted, pairwise distinct.
  const std::vector<std::string>& symbols() const { return symbols_; }

  /// Primitive symbols joined by '*', e.g. "a" or "a*b".
  std::string str() const;

  bool contains(std::string_view symbol) const;

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// The product of two labels' primitive sets; throws SymbolRepeat if they
/// share a symbol.
Label label_product(const Label& a, const Label& b);

std::ostream& operator<<(std::ostream& os, const Label& label);

}  // namespace stagedtree
