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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stagedtree/label.hpp"

namespace stagedtree {

using VertexId = std::string;

struct Edge {
  VertexId from;
  VertexId to;
  Label label;
};

/// A root-to-leaf path as a sequence of indices into StagedTree::edges().
struct Path {
  std::vector<std::size_t> edges;
  VertexId leaf;
};

/// A labeled event tree. Children of a vertex are unordered; all
/// comparisons go through canonical_form(). The constructor accepts any edge
/// list so that malformed input can be reported by validate(); operations
/// that need a well-formed event tree throw InvalidTree otherwise.
class StagedTree {
 public:
  StagedTree(VertexId root, std::vector<Edge> edges,
             std::map<std::string, VertexId> atoms = {},
             std::optional<std::vector<std::vector<VertexId>>> declared_stages =
                 std::nullopt);

  const VertexId& root() const { return vertices_[0]; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Root first, then in order of first appearance in the edge list.
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::map<std::string, VertexId>& atoms() const { return atoms_; }
  const std::optional<std::vector<std::vector<VertexId>>>& declared_stages() const {
    return declared_stages_;
  }

  bool contains(const VertexId& v) const { return index_.count(v) > 0; }
  bool is_leaf(const VertexId& v) const { return out_edges(v).empty(); }

  /// Edge indices leaving `v`, ordered by label string.
  std::span<const std::size_t> out_edges(const VertexId& v) const;
  /// The edge entering `v`; nullopt for the root. (If the input had several
  /// parents this is the first one; validate() reports the rest.)
  std::optional<std::size_t> in_edge(const VertexId& v) const;

  std::vector<VertexId> children(const VertexId& v) const;
  /// Sorted edge labels of the floret at `v`.
  std::vector<Label> floret(const VertexId& v) const;
  /// Number of edges between the root and `v`.
  std::size_t depth(const VertexId& v) const;
  /// The child of `v` reached through the edge labeled `label`.
  std::optional<VertexId> child_by_label(const VertexId& v, const Label& label) const;

  /// Leaves in canonical depth-first order.
  std::vector<VertexId> leaves() const;
  std::vector<VertexId> internal_vertices() const;

  /// True iff the edge list forms an event tree (connected, one parent per
  /// non-root vertex, root without parent, no unary vertices, ≥ 1 edge).
  bool is_event_tree() const { return structural_ok_; }
  void require_event_tree() const;

  /// A vertex id that does not occur in the tree, derived from `base`.
  VertexId fresh_id(const std::string& base) const;

 private:
  std::size_t index(const VertexId& v) const;

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId> atoms_;
  std::optional<std::vector<std::vector<VertexId>>> declared_stages_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  bool structural_ok_ = false;
};

enum class ViolationKind {
  kNoEdges,
  kRootHasParent,
  kMultipleParents,
  kUnreachable,
  kOutDegree,
  kDuplicateFloretLabel,
  kPartialStageOverlap,
  kNotSquareFree,
  kAtomMap,
  kDeclaredStages,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string message;

  std::string str() const;
};

struct ValidateOptions {
  bool require_square_free = false;
};

/// Every violated invariant with its location; empty iff `tree` is a
/// well-formed staged tree.
std::vector<Violation> validate(const StagedTree& tree, ValidateOptions options = {});
bool is_valid(const StagedTree& tree, ValidateOptions options = {});

/// Vertices grouped by equal floret label multisets. Leaves are excluded.
/// Blocks are ordered by floret key, vertices inside a block by id.
struct StagePartition {
  std::vector<std::vector<VertexId>> blocks;
  std::vector<std::vector<Label>> florets;

  std::size_t block_of(const VertexId& v) const;
  bool is_singleton(const VertexId& v) const { return blocks[block_of(v)].size() == 1; }
};

StagePartition stages(const StagedTree& tree);

/// Sorted labels of the floret joined by ','; identifies the stage of `v`.
std::string floret_key(const StagedTree& tree, const VertexId& v);

/// No root-to-leaf path visits two same-stage vertices and no primitive
/// symbol repeats along a path.
bool is_square_free(const StagedTree& tree);

/// Root-to-leaf paths in canonical depth-first order.
std::vector<Path> paths(const StagedTree& tree);
/// Paths passing through `v`; all paths for the root. Throws UnknownVertex.
std::vector<Path> vertex_event(const StagedTree& tree, const VertexId& v);

/// Every label used on an edge.
std::set<Label> alphabet(const StagedTree& tree);

/// Order-independent serialization of the subtree at `v` in the nested
/// polynomial grammar, e.g. "a + b*(c + d)". Leaves serialize as "".
std::string canonical_form(const StagedTree& tree, const VertexId& v);
std::string canonical_form(const StagedTree& tree);
bool canonical_equal(const StagedTree& a, const StagedTree& b);

/// For canonically equal trees, maps every vertex of `a` to its counterpart
/// in `b`. Throws InvalidTree when the trees differ.
std::map<VertexId, VertexId> match_vertices(const StagedTree& a, const StagedTree& b);

}  // namespace stagedtree
