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

#include <optional>
#include <string>
#include <vector>

#include "stagedtree/label.hpp"
#include "stagedtree/polynomial.hpp"
#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

/// A depth-two subtree: `root` together with the children `members`, all in
/// one stage whose floret labels are `stage`. The root is not in that stage.
struct Twin {
  VertexId root;
  std::vector<VertexId> members;  // sorted, at least two
  std::vector<Label> stage;       // sorted

  std::string str() const;
  friend bool operator==(const Twin&, const Twin&) = default;
};

/// Every twin, for every member subset of size ≥ 2. Roots are visited in
/// depth-first label order, stages by floret key, subsets by size and then
/// lexicographically.
std::vector<Twin> find_twins(const StagedTree& tree);

/// Exchanges the two levels of the twin. The root's edges into the members
/// are replaced by one edge per stage label b, each leading to a fresh
/// vertex whose floret carries the old root-to-member labels; the subtree
/// that hung below (a, b) now hangs below (b, a). The result need not be
/// staged. Throws TwinNotFound when `twin` does not describe a twin of
/// `tree`.
StagedTree apply_naive_swap(const StagedTree& tree, const Twin& twin);

/// The twin of `after = apply_naive_swap(before, twin)` whose naive swap
/// restores `before`.
Twin inverse_twin(const StagedTree& before, const Twin& twin, const StagedTree& after);

/// A naive swap whose result is a valid staged tree. Throws NotStaged with
/// the violations otherwise.
StagedTree apply_swap(const StagedTree& tree, const Twin& twin);

struct CompositionFlags {
  /// The multiset of floret label multisets is unchanged.
  bool floret_swap = false;
  /// Every step acts at one depth d and the label sets of depths d and d+1
  /// are exchanged while all other depths keep theirs.
  bool level_swap = false;
};

/// Classifies the naive-swap sequence `steps` taking `before` to `after`.
/// Throws InputError when replaying `steps` does not reproduce `after`.
CompositionFlags classify_composition(const StagedTree& before, const StagedTree& after,
                                      const std::vector<Twin>& steps);

/// Whole florets rooted at `root`: `internal` holds the root and every
/// included vertex whose floret is part of the subgraph. Children of
/// internal vertices that are not internal themselves are the grafting
/// points.
struct Subgraph {
  VertexId root;
  std::vector<VertexId> internal;  // sorted

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

enum class ResizeCondition {
  /// One subgraph whose internal vertices are stage singletons.
  kSaturated,
  /// Two or more polynomially equivalent subgraphs whose vertices share
  /// stages only with each other.
  kEquivalent,
};

std::string to_string(ResizeCondition c);

struct ResizeSite {
  ResizeCondition condition = ResizeCondition::kSaturated;
  std::vector<Subgraph> subgraphs;

  std::string str() const;
  friend bool operator==(const ResizeSite&, const ResizeSite&) = default;
};

/// Maximal saturated subgraphs with at least two florets, followed by the
/// families of sibling-rooted subgraphs (truncated at a common depth ≥ 2)
/// that satisfy the equivalence condition.
std::vector<ResizeSite> find_resize_sites(const StagedTree& tree);

/// Why `site` is not a valid resize site of `tree`; nullopt if it is.
std::optional<std::string> site_problem(const StagedTree& tree, const ResizeSite& site);

/// Contracts every subgraph of the site into a single floret at its root,
/// one edge per path to a grafting point labeled with the product of the
/// path's labels. Throws InvalidSite.
StagedTree apply_resize(const StagedTree& tree, const ResizeSite& site);

/// The nested factorization of a subgraph, stopping at its grafting points.
Factorization subgraph_factorization(const StagedTree& tree, const Subgraph& g);

/// Replaces the floret at `center` by the subtree drawn from `f`, where
/// every bracket-free term of `f` ends in the child previously reached by
/// the label equal to that term's path product. New vertices receive fresh
/// ids. Throws FactorizationMismatch when expand(f) is not the sum of the
/// floret's labels.
StagedTree apply_inverse_resize(const StagedTree& tree, const VertexId& center,
                                const Factorization& f);

}  // namespace stagedtree
