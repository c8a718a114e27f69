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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "stagedtree/polynomial.hpp"
#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

struct CompatSearchConfig {
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
  std::size_t max_depth = 64;
  /// Keep only factorizations whose tree is well staged.
  bool require_staged = false;
};

/// Result of a factorization search. `complete` is false when a bound in
/// the config cut the search short; an empty, complete result proves that
/// the polynomial has no tree-compatible factorization.
struct FactorizationSearch {
  std::vector<Factorization> results;
  bool complete = true;
};

/// Every tree-compatible factorization of `p`, canonicalized and sorted by
/// text. `p` must have unit coefficients and at least two terms to have
/// any. A sum level is built from a label set A such that every term holds
/// exactly one element of A; terms are grouped by that element and the
/// groups are factorized recursively.
FactorizationSearch find_factorizations(const Poly& p, const CompatSearchConfig& cfg = {});

/// The same search over the tree's labels taken as indivisible symbols:
/// all labeled trees whose atomic label-products coincide with `tree`'s.
FactorizationSearch find_label_factorizations(const StagedTree& tree,
                                              const CompatSearchConfig& cfg = {});

enum class Compatibility { kYes, kNo, kUnknown };

struct CompatVerdict {
  Compatibility status = Compatibility::kNo;
  /// Set when status is kYes.
  std::optional<Factorization> witness;
};

CompatVerdict is_tree_compatible(const Poly& p, const CompatSearchConfig& cfg = {});

/// Draws one floret per bracket level and attaches the summed labels to its
/// edges. Vertex ids are "v0", "v1", ... in pre-order. Throws NodeTooSmall
/// for a level with fewer than two entries or with a repeated label.
StagedTree tree_from_factorization(const Factorization& f);

}  // namespace stagedtree
