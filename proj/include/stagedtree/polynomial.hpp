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
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "stagedtree/label.hpp"
#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

using Rational = boost::rational<long long>;

/// A square-free product of primitive symbols, kept as a sorted set.
class Monomial {
 public:
  /// Throws SymbolRepeat on a repeated symbol and InputError when empty.
  explicit Monomial(std::vector<std::string> symbols);
  explicit Monomial(const Label& label) : symbols_(label.symbols()) {}

  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t degree() const { return symbols_.size(); }
  bool contains(const std::string& symbol) const;

  /// This monomial times the primitives of `label`; throws SymbolRepeat.
  Monomial times(const Label& label) const;

  /// Symbols joined by '*'.
  std::string str() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  Monomial() = default;
  std::vector<std::string> symbols_;
};

/// A formal sum of monomials with exact rational coefficients. Adding a
/// monomial twice raises its coefficient; nothing ever cancels.
class Poly {
 public:
  Poly() = default;

  void add(const Monomial& m, Rational coefficient = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  /// Number of distinct monomials.
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::set<std::string> symbols() const;
  bool has_unit_coefficients() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::map<Monomial, Rational> terms_;
};

/// Multiset equality of monomials together with their coefficients.
bool poly_equal(const Poly& p, const Poly& q);

struct FactorTerm;

/// One bracket level of a tree-compatible factorization: a sum of labels,
/// each optionally multiplied by a nested sum. A term without a nested sum
/// ends a root-to-leaf path.
struct Factorization {
  std::vector<FactorTerm> terms;
};

struct FactorTerm {
  Label label;
  Factorization sub;

  bool is_leaf() const { return sub.terms.empty(); }
};

/// Sorts every level by label, recursively.
Factorization canonicalize(Factorization f);
bool operator==(const Factorization& a, const Factorization& b);

/// The product of all labels along `path`, composites contributing their
/// primitives. Throws SymbolRepeat if a symbol occurs twice.
Monomial atomic_monomial(const StagedTree& tree, const Path& path);

/// Sum of the atomic monomials of all root-to-leaf paths.
Poly interpolating_polynomial(const StagedTree& tree);

/// Sum over paths of g(path) times the atomic monomial.
Poly network_polynomial(const StagedTree& tree,
                        const std::function<Rational(const Path&)>& g);

/// The bracketing read off the tree: one level per floret.
Factorization nested_factorization(const StagedTree& tree);
Factorization nested_factorization(const StagedTree& tree, const VertexId& v);

/// Multiplies out every bracket. Throws SymbolRepeat.
Poly expand(const Factorization& f);

}  // namespace stagedtree
