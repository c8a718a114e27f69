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

#include "stagedtree/staged_tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "stagedtree/errors.hpp"

namespace stagedtree {

StagedTree::StagedTree(VertexId root, std::vector<Edge> edges,
                       std::map<std::string, VertexId> atoms,
                       std::optional<std::vector<std::vector<VertexId>>> declared_stages)
    : edges_(std::move(edges)),
      atoms_(std::move(atoms)),
      declared_stages_(std::move(declared_stages)) {
  auto add = [this](const VertexId& v) {
    if (index_.emplace(v, vertices_.size()).second) vertices_.push_back(v);
  };
  add(root);
  for (const auto& e : edges_) {
    add(e.from);
    add(e.to);
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[index_.at(edges_[i].from)].push_back(i);
    in_[index_.at(edges_[i].to)].push_back(i);
  }
  for (auto& list : out_) {
    std::stable_sort(list.begin(), list.end(), [this](std::size_t a, std::size_t b) {
      return edges_[a].label.str() < edges_[b].label.str();
    });
  }

  bool ok = !edges_.empty() && in_[0].empty();
  for (std::size_t i = 1; ok && i < vertices_.size(); ++i) ok = in_[i].size() == 1;
  for (std::size_t i = 0; ok && i < vertices_.size(); ++i) ok = out_[i].size() != 1;
  if (ok) {
    std::vector<bool> seen(vertices_.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t e : out_[v]) {
        std::size_t c = index_.at(edges_[e].to);
        if (!seen[c]) {
          seen[c] = true;
          ++reached;
          queue.push_back(c);
        }
      }
    }
    ok = reached == vertices_.size();
  }
  structural_ok_ = ok;
}

std::size_t StagedTree::index(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw UnknownVertex(v);
  return it->second;
}

std::span<const std::size_t> StagedTree::out_edges(const VertexId& v) const {
  return out_[index(v)];
}

std::optional<std::size_t> StagedTree::in_edge(const VertexId& v) const {
  const auto& list = in_[index(v)];
  if (list.empty()) return std::nullopt;
  return list.front();
}

std::vector<VertexId> StagedTree::children(const VertexId& v) const {
  std::vector<VertexId> out;
  for (std::size_t e : out_edges(v)) out.push_back(edges_[e].to);
  return out;
}

std::vector<Label> StagedTree::floret(const VertexId& v) const {
  std::vector<Label> out;
  for (std::size_t e : out_edges(v)) out.push_back(edges_[e].label);
  std::sort(out.begin(), out.end(),
            [](const Label& a, const Label& b) { return a.str() < b.str(); });
  return out;
}

std::size_t StagedTree::depth(const VertexId& v) const {
  require_event_tree();
  std::size_t d = 0;
  VertexId cur = v;
  while (auto e = in_edge(cur)) {
    cur = edges_[*e].from;
    ++d;
  }
  return d;
}

std::optional<VertexId> StagedTree::child_by_label(const VertexId& v,
                                                   const Label& label) const {
  for (std::size_t e : out_edges(v)) {
    if (edges_[e].label == label) return edges_[e].to;
  }
  return std::nullopt;
}

std::vector<VertexId> StagedTree::leaves() const {
  std::vector<VertexId> out;
  for (const auto& p : paths(*this)) out.push_back(p.leaf);
  return out;
}

std::vector<VertexId> StagedTree::internal_vertices() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!out_[i].empty()) out.push_back(vertices_[i]);
  }
  return out;
}

void StagedTree::require_event_tree() const {
  if (structural_ok_) return;
  std::string msg = "not an event tree";
  for (const auto& v : validate(*this)) {
    if (v.kind <= ViolationKind::kOutDegree) msg += "; " + v.str();
  }
  throw InvalidTree(msg);
}

VertexId StagedTree::fresh_id(const std::string& base) const {
  if (!contains(base)) return base;
  for (std::size_t k = 1;; ++k) {
    VertexId candidate = base + "_" + std::to_string(k);
    if (!contains(candidate)) return candidate;
  }
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNoEdges: return "no-edges";
    case ViolationKind::kRootHasParent: return "root-has-parent";
    case ViolationKind::kMultipleParents: return "multiple-parents";
    case ViolationKind::kUnreachable: return "unreachable";
    case ViolationKind::kOutDegree: return "out-degree";
    case ViolationKind::kDuplicateFloretLabel: return "duplicate-floret-label";
    case ViolationKind::kPartialStageOverlap: return "partial-stage-overlap";
    case ViolationKind::kNotSquareFree: return "not-square-free";
    case ViolationKind::kAtomMap: return "atom-map";
    case ViolationKind::kDeclaredStages: return "declared-stages";
  }
  return "unknown";
}

std::string Violation::str() const {
  return to_string(kind) + " at " + location + ": " + message;
}

namespace {

std::string JoinIds(const std::vector<VertexId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out + "}";
}

void CheckStructure(const StagedTree& tree, std::vector<Violation>& out) {
  if (tree.edges().empty()) {
    out.push_back({ViolationKind::kNoEdges, tree.root(), "tree has no edges"});
  }
  for (std::size_t i = 0; i < tree.edges().size(); ++i) {
    if (tree.edges()[i].to == tree.root()) {
      out.push_back({ViolationKind::kRootHasParent, tree.root(),
                     "root is the target of edge from " + tree.edges()[i].from});
    }
  }
  std::map<VertexId, std::size_t> parents;
  for (const auto& e : tree.edges()) ++parents[e.to];
  for (const auto& [v, n] : parents) {
    if (n > 1 && v != tree.root()) {
      out.push_back({ViolationKind::kMultipleParents, v,
                     std::to_string(n) + " parents"});
    }
  }
  // Reachability from the root, guarded against cycles.
  std::set<VertexId> seen{tree.root()};
  std::deque<VertexId> queue{tree.root()};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (std::size_t e : tree.out_edges(v)) {
      const auto& c = tree.edges()[e].to;
      if (seen.insert(c).second) queue.push_back(c);
    }
  }
  for (const auto& v : tree.vertices()) {
    if (!seen.count(v)) {
      out.push_back({ViolationKind::kUnreachable, v, "not reachable from the root"});
    }
    if (tree.out_edges(v).size() == 1) {
      out.push_back({ViolationKind::kOutDegree, v, "non-leaf out-degree < 2"});
    }
  }
}

void CheckStages(const StagedTree& tree, std::vector<Violation>& out) {
  std::map<Label, std::set<std::string>> keys_by_label;
  for (const auto& v : tree.internal_vertices()) {
    auto labels = tree.floret(v);
    auto dup = std::adjacent_find(labels.begin(), labels.end());
    if (dup != labels.end()) {
      out.push_back({ViolationKind::kDuplicateFloretLabel, v,
                     "label " + dup->str() + " occurs twice in the floret"});
    }
    auto key = floret_key(tree, v);
    for (const auto& l : labels) keys_by_label[l].insert(key);
  }
  for (const auto& [label, keys] : keys_by_label) {
    if (keys.size() < 2) continue;
    std::string msg = "label shared by florets that are not in one stage:";
    for (const auto& k : keys) msg += " (" + k + ")";
    out.push_back({ViolationKind::kPartialStageOverlap, label.str(), msg});
  }
}

void CheckAtoms(const StagedTree& tree, std::vector<Violation>& out) {
  if (tree.atoms().empty()) return;
  std::map<VertexId, std::string> owner;
  for (const auto& [name, leaf] : tree.atoms()) {
    if (!tree.contains(leaf) || !tree.is_leaf(leaf)) {
      out.push_back({ViolationKind::kAtomMap, name, "atom maps to non-leaf " + leaf});
      continue;
    }
    auto [it, fresh] = owner.emplace(leaf, name);
    if (!fresh) {
      out.push_back({ViolationKind::kAtomMap, name,
                     "leaf " + leaf + " already taken by atom " + it->second});
    }
  }
  for (const auto& v : tree.vertices()) {
    if (tree.is_leaf(v) && v != tree.root() && !owner.count(v)) {
      out.push_back({ViolationKind::kAtomMap, v, "leaf has no atom"});
    }
  }
}

void CheckDeclaredStages(const StagedTree& tree, std::vector<Violation>& out) {
  if (!tree.declared_stages()) return;
  std::set<std::set<VertexId>> declared;
  for (const auto& b : *tree.declared_stages()) declared.emplace(b.begin(), b.end());
  std::set<std::set<VertexId>> derived;
  for (const auto& b : stages(tree).blocks) derived.emplace(b.begin(), b.end());
  for (const auto& b : declared) {
    if (!derived.count(b)) {
      out.push_back({ViolationKind::kDeclaredStages,
                     JoinIds({b.begin(), b.end()}),
                     "declared stage does not match the floret labels"});
    }
  }
  for (const auto& b : derived) {
    if (!declared.count(b)) {
      out.push_back({ViolationKind::kDeclaredStages,
                     JoinIds({b.begin(), b.end()}), "derived stage not declared"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const StagedTree& tree, ValidateOptions options) {
  std::vector<Violation> out;
  CheckStructure(tree, out);
  CheckStages(tree, out);
  CheckAtoms(tree, out);
  CheckDeclaredStages(tree, out);
  if (options.require_square_free && tree.is_event_tree() && !is_square_free(tree)) {
    out.push_back({ViolationKind::kNotSquareFree, tree.root(),
                   "a root-to-leaf path visits two vertices of one stage"});
  }
  return out;
}

bool is_valid(const StagedTree& tree, ValidateOptions options) {
  return validate(tree, options).empty();
}

std::size_t StagePartition::block_of(const VertexId& v) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (std::find(blocks[i].begin(), blocks[i].end(), v) != blocks[i].end()) return i;
  }
  throw UnknownVertex(v);
}

std::string floret_key(const StagedTree& tree, const VertexId& v) {
  std::string key;
  for (const auto& l : tree.floret(v)) key += (key.empty() ? "" : ",") + l.str();
  return key;
}

StagePartition stages(const StagedTree& tree) {
  std::map<std::string, std::vector<VertexId>> by_key;
  for (const auto& v : tree.internal_vertices()) by_key[floret_key(tree, v)].push_back(v);
  StagePartition out;
  for (auto& [key, members] : by_key) {
    std::sort(members.begin(), members.end());
    out.florets.push_back(tree.floret(members.front()));
    out.blocks.push_back(std::move(members));
  }
  return out;
}

bool is_square_free(const StagedTree& tree) {
  tree.require_event_tree();
  std::multiset<std::string> stage_keys;
  std::multiset<std::string> symbols;
  std::function<bool(const VertexId&)> walk = [&](const VertexId& v) {
    if (tree.is_leaf(v)) return true;
    auto key = floret_key(tree, v);
    if (stage_keys.count(key)) return false;
    stage_keys.insert(key);
    bool ok = true;
    for (std::size_t e : tree.out_edges(v)) {
      const auto& label = tree.edges()[e].label;
      for (const auto& s : label.symbols()) {
        if (symbols.count(s)) ok = false;
      }
      if (!ok) break;
      for (const auto& s : label.symbols()) symbols.insert(s);
      ok = walk(tree.edges()[e].to);
      for (const auto& s : label.symbols()) symbols.erase(symbols.find(s));
      if (!ok) break;
    }
    stage_keys.erase(stage_keys.find(key));
    return ok;
  };
  return walk(tree.root());
}

std::vector<Path> paths(const StagedTree& tree) {
  tree.require_event_tree();
  std::vector<Path> out;
  Path current;
  std::function<void(const VertexId&)> walk = [&](const VertexId& v) {
    if (tree.is_leaf(v)) {
      current.leaf = v;
      out.push_back(current);
      return;
    }
    for (std::size_t e : tree.out_edges(v)) {
      current.edges.push_back(e);
      walk(tree.edges()[e].to);
      current.edges.pop_back();
    }
  };
  walk(tree.root());
  return out;
}

std::vector<Path> vertex_event(const StagedTree& tree, const VertexId& v) {
  if (!tree.contains(v)) throw UnknownVertex(v);
  auto all = paths(tree);
  if (v == tree.root()) return all;
  std::vector<Path> out;
  for (auto& p : all) {
    bool through = std::any_of(p.edges.begin(), p.edges.end(),
                               [&](std::size_t e) { return tree.edges()[e].to == v; });
    if (through) out.push_back(std::move(p));
  }
  return out;
}

std::set<Label> alphabet(const StagedTree& tree) {
  std::set<Label> out;
  for (const auto& e : tree.edges()) out.insert(e.label);
  return out;
}

std::string canonical_form(const StagedTree& tree, const VertexId& v) {
  tree.require_event_tree();
  // (label, term) pairs; sorting by label first matches canonicalize().
  std::vector<std::pair<std::string, std::string>> terms;
  for (std::size_t e : tree.out_edges(v)) {
    const auto& edge = tree.edges()[e];
    std::string term = edge.label.str();
    if (!tree.is_leaf(edge.to)) term += "*(" + canonical_form(tree, edge.to) + ")";
    terms.emplace_back(edge.label.str(), std::move(term));
  }
  std::sort(terms.begin(), terms.end());
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i].second;
  return out;
}

std::string canonical_form(const StagedTree& tree) {
  return canonical_form(tree, tree.root());
}

bool canonical_equal(const StagedTree& a, const StagedTree& b) {
  return canonical_form(a) == canonical_form(b);
}

std::map<VertexId, VertexId> match_vertices(const StagedTree& a, const StagedTree& b) {
  if (!canonical_equal(a, b)) throw InvalidTree("trees are not canonically equal");
  std::map<VertexId, VertexId> out;
  std::function<void(const VertexId&, const VertexId&)> walk =
      [&](const VertexId& va, const VertexId& vb) {
        out[va] = vb;
        for (std::size_t e : a.out_edges(va)) {
          const auto& edge = a.edges()[e];
          walk(edge.to, *b.child_by_label(vb, edge.label));
        }
      };
  walk(a.root(), b.root());
  return out;
}

}  // namespace stagedtree
