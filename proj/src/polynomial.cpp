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

#include "stagedtree/polynomial.hpp"

#include <algorithm>

#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"

namespace stagedtree {

Monomial::Monomial(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("a monomial needs at least one symbol");
  std::sort(symbols_.begin(), symbols_.end());
  auto dup = std::adjacent_find(symbols_.begin(), symbols_.end());
  if (dup != symbols_.end()) throw SymbolRepeat(*dup);
}

bool Monomial::contains(const std::string& symbol) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), symbol);
}

Monomial Monomial::times(const Label& label) const {
  std::vector<std::string> all = symbols_;
  all.insert(all.end(), label.symbols().begin(), label.symbols().end());
  return Monomial(std::move(all));
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& s : symbols_) out += (out.empty() ? "" : "*") + s;
  return out;
}

void Poly::add(const Monomial& m, Rational coefficient) {
  auto [it, fresh] = terms_.emplace(m, coefficient);
  if (!fresh) it->second += coefficient;
}

std::set<std::string> Poly::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) out.insert(m.symbols().begin(), m.symbols().end());
  return out;
}

bool Poly::has_unit_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second == Rational(1); });
}

bool poly_equal(const Poly& p, const Poly& q) { return p == q; }

Factorization canonicalize(Factorization f) {
  for (auto& t : f.terms) t.sub = canonicalize(std::move(t.sub));
  std::sort(f.terms.begin(), f.terms.end(), [](const FactorTerm& a, const FactorTerm& b) {
    return a.label.str() < b.label.str();
  });
  return f;
}

bool operator==(const Factorization& a, const Factorization& b) {
  return to_string(canonicalize(a)) == to_string(canonicalize(b));
}

Monomial atomic_monomial(const StagedTree& tree, const Path& path) {
  std::vector<std::string> symbols;
  for (std::size_t e : path.edges) {
    const auto& s = tree.edges().at(e).label.symbols();
    symbols.insert(symbols.end(), s.begin(), s.end());
  }
  return Monomial(std::move(symbols));
}

Poly interpolating_polynomial(const StagedTree& tree) {
  Poly out;
  for (const auto& p : paths(tree)) out.add(atomic_monomial(tree, p));
  return out;
}

Poly network_polynomial(const StagedTree& tree,
                        const std::function<Rational(const Path&)>& g) {
  Poly out;
  for (const auto& p : paths(tree)) {
    Rational c = g(p);
    if (c != Rational(0)) out.add(atomic_monomial(tree, p), c);
  }
  return out;
}

Factorization nested_factorization(const StagedTree& tree, const VertexId& v) {
  tree.require_event_tree();
  Factorization out;
  for (std::size_t e : tree.out_edges(v)) {
    const auto& edge = tree.edges()[e];
    out.terms.push_back({edge.label, nested_factorization(tree, edge.to)});
  }
  return out;
}

Factorization nested_factorization(const StagedTree& tree) {
  return nested_factorization(tree, tree.root());
}

namespace {

void ExpandInto(const Factorization& f, const std::optional<Monomial>& prefix, Poly& out) {
  for (const auto& t : f.terms) {
    Monomial m = prefix ? prefix->times(t.label) : Monomial(t.label);
    if (t.is_leaf()) {
      out.add(m);
    } else {
      ExpandInto(t.sub, m, out);
    }
  }
}

}  // namespace

Poly expand(const Factorization& f) {
  Poly out;
  ExpandInto(f, std::nullopt, out);
  return out;
}

}  // namespace stagedtree
