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

#include "stagedtree/transform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"

namespace stagedtree {
namespace {

std::string JoinIds(const std::vector<VertexId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out + "}";
}

std::vector<Label> SortedLabels(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end(),
            [](const Label& a, const Label& b) { return a.str() < b.str(); });
  return labels;
}

std::vector<VertexId> PreorderInternal(const StagedTree& tree) {
  std::vector<VertexId> out;
  std::function<void(const VertexId&)> visit = [&](const VertexId& v) {
    if (tree.is_leaf(v)) return;
    out.push_back(v);
    for (std::size_t e : tree.out_edges(v)) visit(tree.edges()[e].to);
  };
  visit(tree.root());
  return out;
}

// Ids not present in `tree` and not handed out before.
class FreshIds {
 public:
  explicit FreshIds(const StagedTree& tree) : tree_(tree) {}
  VertexId Next(const std::string& base) {
    VertexId id = tree_.fresh_id(base);
    for (std::size_t k = 1; used_.count(id); ++k) id = tree_.fresh_id(base + "_" + std::to_string(k));
    used_.insert(id);
    return id;
  }

 private:
  const StagedTree& tree_;
  std::set<VertexId> used_;
};

void RequireTwin(const StagedTree& tree, const Twin& twin) {
  auto fail = [&](const std::string& why) {
    throw TwinNotFound("no twin " + twin.str() + ": " + why);
  };
  if (!tree.contains(twin.root)) fail("unknown root");
  if (twin.members.size() < 2) fail("fewer than two members");
  std::set<VertexId> seen;
  auto stage = SortedLabels(twin.stage);
  for (const auto& c : twin.members) {
    if (!seen.insert(c).second) fail("repeated member " + c);
    if (!tree.contains(c)) fail("unknown member " + c);
    auto in = tree.in_edge(c);
    if (!in || tree.edges()[*in].from != twin.root) fail(c + " is not a child of " + twin.root);
    if (tree.floret(c) != stage) fail("floret of " + c + " differs from the stage");
  }
  if (tree.floret(twin.root) == stage) fail("root lies in the stage of its members");
}

std::vector<std::set<Label>> LabelLevels(const StagedTree& tree) {
  std::vector<std::set<Label>> out;
  for (const auto& p : paths(tree)) {
    if (out.size() < p.edges.size()) out.resize(p.edges.size());
    for (std::size_t i = 0; i < p.edges.size(); ++i) out[i].insert(tree.edges()[p.edges[i]].label);
  }
  return out;
}

std::vector<std::string> FloretMultiset(const StagedTree& tree) {
  std::vector<std::string> out;
  for (const auto& v : tree.internal_vertices()) out.push_back(floret_key(tree, v));
  std::sort(out.begin(), out.end());
  return out;
}

struct GraftPath {
  std::vector<Label> labels;
  VertexId target;
};

std::vector<GraftPath> GraftPaths(const StagedTree& tree, const Subgraph& g) {
  std::set<VertexId> inside(g.internal.begin(), g.internal.end());
  std::vector<GraftPath> out;
  std::vector<Label> prefix;
  std::function<void(const VertexId&)> visit = [&](const VertexId& v) {
    for (std::size_t e : tree.out_edges(v)) {
      const auto& edge = tree.edges()[e];
      prefix.push_back(edge.label);
      if (inside.count(edge.to)) {
        visit(edge.to);
      } else {
        out.push_back({prefix, edge.to});
      }
      prefix.pop_back();
    }
  };
  visit(g.root);
  return out;
}

Label PathProduct(const std::vector<Label>& labels) {
  Label out = labels.front();
  for (std::size_t i = 1; i < labels.size(); ++i) out = label_product(out, labels[i]);
  return out;
}

Poly SubgraphPoly(const StagedTree& tree, const Subgraph& g) {
  Poly p;
  for (const auto& gp : GraftPaths(tree, g)) p.add(Monomial(PathProduct(gp.labels)));
  return p;
}

std::optional<std::string> StructureProblem(const StagedTree& tree, const Subgraph& g) {
  if (!tree.contains(g.root)) return "unknown vertex " + g.root;
  std::set<VertexId> inside(g.internal.begin(), g.internal.end());
  if (!inside.count(g.root)) return "subgraph root " + g.root + " is not among its vertices";
  for (const auto& v : g.internal) {
    if (!tree.contains(v)) return "unknown vertex " + v;
    if (tree.is_leaf(v)) return v + " is a leaf";
    if (v == g.root) continue;
    auto in = tree.in_edge(v);
    if (!in || !inside.count(tree.edges()[*in].from)) {
      return v + " is not connected to " + g.root + " inside the subgraph";
    }
  }
  return std::nullopt;
}

bool IsDescendant(const StagedTree& tree, VertexId v, const VertexId& ancestor) {
  for (;;) {
    if (v == ancestor) return true;
    auto in = tree.in_edge(v);
    if (!in) return false;
    v = tree.edges()[*in].from;
  }
}

std::set<VertexId> Truncated(const StagedTree& tree, const VertexId& c, std::size_t d) {
  std::set<VertexId> out;
  std::function<void(const VertexId&, std::size_t)> visit = [&](const VertexId& v,
                                                                std::size_t depth) {
    if (depth >= d || tree.is_leaf(v)) return;
    out.insert(v);
    for (const auto& child : tree.children(v)) visit(child, depth + 1);
  };
  visit(c, 0);
  return out;
}

}  // namespace

std::string Twin::str() const {
  std::string labels;
  for (std::size_t i = 0; i < stage.size(); ++i) labels += (i ? "," : "") + stage[i].str();
  return root + " " + JoinIds(members) + " (" + labels + ")";
}

std::vector<Twin> find_twins(const StagedTree& tree) {
  tree.require_event_tree();
  std::vector<Twin> out;
  for (const auto& w : PreorderInternal(tree)) {
    auto own = floret_key(tree, w);
    std::map<std::string, std::vector<VertexId>> groups;
    for (const auto& c : tree.children(w)) {
      if (tree.is_leaf(c)) continue;
      auto key = floret_key(tree, c);
      if (key != own) groups[key].push_back(c);
    }
    for (auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      auto stage = tree.floret(members.front());
      const std::size_t n = members.size();
      for (std::size_t size = 2; size <= n; ++size) {
        // Lexicographic combinations via a selection mask.
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + size, true);
        do {
          Twin t{w, {}, stage};
          for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) t.members.push_back(members[i]);
          }
          out.push_back(std::move(t));
        } while (std::prev_permutation(mask.begin(), mask.end()));
      }
    }
  }
  return out;
}

StagedTree apply_naive_swap(const StagedTree& tree, const Twin& twin) {
  tree.require_event_tree();
  RequireTwin(tree, twin);
  std::set<VertexId> members(twin.members.begin(), twin.members.end());
  std::vector<Edge> edges;
  for (const auto& e : tree.edges()) {
    if (members.count(e.from)) continue;
    if (e.from == twin.root && members.count(e.to)) continue;
    edges.push_back(e);
  }
  FreshIds fresh(tree);
  for (const auto& b : SortedLabels(twin.stage)) {
    VertexId n = fresh.Next(twin.root + "." + b.str());
    edges.push_back({twin.root, n, b});
    for (const auto& c : twin.members) {
      const Label& a = tree.edges()[*tree.in_edge(c)].label;
      edges.push_back({n, *tree.child_by_label(c, b), a});
    }
  }
  return StagedTree(tree.root(), std::move(edges), tree.atoms());
}

Twin inverse_twin(const StagedTree& before, const Twin& twin, const StagedTree& after) {
  Twin out{twin.root, {}, {}};
  for (const auto& b : twin.stage) {
    auto n = after.child_by_label(twin.root, b);
    if (!n) throw TwinNotFound("'" + b.str() + "' does not leave " + twin.root + " after the swap");
    out.members.push_back(*n);
  }
  for (const auto& c : twin.members) out.stage.push_back(before.edges()[*before.in_edge(c)].label);
  std::sort(out.members.begin(), out.members.end());
  out.stage = SortedLabels(std::move(out.stage));
  return out;
}

StagedTree apply_swap(const StagedTree& tree, const Twin& twin) {
  auto result = apply_naive_swap(tree, twin);
  auto violations = validate(result);
  if (!violations.empty()) {
    std::vector<std::string> text;
    for (const auto& v : violations) text.push_back(v.str());
    throw NotStaged(std::move(text));
  }
  return result;
}

CompositionFlags classify_composition(const StagedTree& before, const StagedTree& after,
                                      const std::vector<Twin>& steps) {
  StagedTree current = before;
  std::vector<std::size_t> depths;
  for (const auto& t : steps) {
    depths.push_back(current.depth(t.root));
    current = apply_naive_swap(current, t);
  }
  if (!canonical_equal(current, after)) {
    throw InputError("the swap sequence does not transform the first tree into the second");
  }
  CompositionFlags out;
  out.floret_swap = FloretMultiset(before) == FloretMultiset(after);
  if (steps.empty()) {
    out.level_swap = true;
    return out;
  }
  std::size_t d = depths.front();
  if (std::any_of(depths.begin(), depths.end(), [d](std::size_t x) { return x != d; })) return out;
  auto lb = LabelLevels(before);
  auto la = LabelLevels(after);
  if (lb.size() != la.size() || d + 1 >= lb.size()) return out;
  bool ok = lb[d] == la[d + 1] && lb[d + 1] == la[d];
  for (std::size_t i = 0; ok && i < lb.size(); ++i) {
    if (i != d && i != d + 1) ok = lb[i] == la[i];
  }
  out.level_swap = ok;
  return out;
}

std::string to_string(ResizeCondition c) {
  return c == ResizeCondition::kSaturated ? "saturated" : "equivalent";
}

std::string ResizeSite::str() const {
  std::string out = to_string(condition);
  for (const auto& g : subgraphs) out += " " + g.root + JoinIds(g.internal);
  return out;
}

std::optional<std::string> site_problem(const StagedTree& tree, const ResizeSite& site) {
  if (!tree.is_event_tree()) return "not an event tree";
  if (site.subgraphs.empty()) return "no subgraphs";
  for (const auto& g : site.subgraphs) {
    if (auto p = StructureProblem(tree, g)) return p;
  }
  for (std::size_t i = 0; i < site.subgraphs.size(); ++i) {
    for (std::size_t j = 0; j < site.subgraphs.size(); ++j) {
      if (i != j && IsDescendant(tree, site.subgraphs[j].root, site.subgraphs[i].root)) {
        return "subgraphs rooted at " + site.subgraphs[i].root + " and " +
               site.subgraphs[j].root + " overlap";
      }
    }
  }
  auto partition = stages(tree);
  std::set<VertexId> inside;
  for (const auto& g : site.subgraphs) inside.insert(g.internal.begin(), g.internal.end());
  if (site.condition == ResizeCondition::kSaturated) {
    if (site.subgraphs.size() != 1) return "a saturated site has exactly one subgraph";
    for (const auto& v : site.subgraphs.front().internal) {
      if (!partition.is_singleton(v)) {
        return "stage leakage: " + v + " shares its stage " +
               JoinIds(partition.blocks[partition.block_of(v)]);
      }
    }
    return std::nullopt;
  }
  if (site.subgraphs.size() < 2) return "an equivalence site needs at least two subgraphs";
  try {
    auto first = SubgraphPoly(tree, site.subgraphs.front());
    for (std::size_t i = 1; i < site.subgraphs.size(); ++i) {
      if (!poly_equal(first, SubgraphPoly(tree, site.subgraphs[i]))) {
        return "subgraphs rooted at " + site.subgraphs.front().root + " and " +
               site.subgraphs[i].root + " are not polynomially equivalent";
      }
    }
  } catch (const SymbolRepeat& e) {
    return std::string(e.what());
  }
  for (const auto& v : inside) {
    for (const auto& u : partition.blocks[partition.block_of(v)]) {
      if (!inside.count(u)) {
        return "stage leakage: " + v + " shares its stage with " + u + " outside the site";
      }
    }
  }
  for (const auto& g : site.subgraphs) {
    std::map<std::size_t, VertexId> seen;
    for (const auto& v : g.internal) {
      auto [it, fresh] = seen.emplace(partition.block_of(v), v);
      if (!fresh) return it->second + " and " + v + " share a stage within one subgraph";
    }
  }
  return std::nullopt;
}

std::vector<ResizeSite> find_resize_sites(const StagedTree& tree) {
  tree.require_event_tree();
  auto partition = stages(tree);
  auto order = PreorderInternal(tree);
  std::vector<ResizeSite> out;

  auto singleton = [&](const VertexId& v) {
    return !tree.is_leaf(v) && partition.is_singleton(v);
  };
  for (const auto& top : order) {
    if (!singleton(top)) continue;
    if (auto in = tree.in_edge(top); in && singleton(tree.edges()[*in].from)) continue;
    Subgraph g{top, {}};
    std::function<void(const VertexId&)> grow = [&](const VertexId& v) {
      g.internal.push_back(v);
      for (const auto& c : tree.children(v)) {
        if (singleton(c)) grow(c);
      }
    };
    grow(top);
    if (g.internal.size() < 2) continue;
    std::sort(g.internal.begin(), g.internal.end());
    out.push_back({ResizeCondition::kSaturated, {std::move(g)}});
  }

  std::set<std::vector<std::vector<VertexId>>> reported;
  for (const auto& w : order) {
    std::vector<VertexId> kids;
    for (const auto& c : tree.children(w)) {
      if (!tree.is_leaf(c)) kids.push_back(c);
    }
    if (kids.size() < 2) continue;
    for (std::size_t d = 2;; ++d) {
      bool grew = false;
      std::map<std::string, std::vector<Subgraph>> groups;
      for (const auto& c : kids) {
        auto inner = Truncated(tree, c, d);
        if (inner.size() < 2) continue;
        grew |= Truncated(tree, c, d - 1).size() != inner.size();
        Subgraph g{c, std::vector<VertexId>(inner.begin(), inner.end())};
        try {
          groups[to_string(SubgraphPoly(tree, g))].push_back(std::move(g));
        } catch (const SymbolRepeat&) {
        }
      }
      if (!grew) break;
      for (auto& [key, family] : groups) {
        if (family.size() < 2) continue;
        ResizeSite site{ResizeCondition::kEquivalent, std::move(family)};
        if (site_problem(tree, site)) continue;
        std::vector<std::vector<VertexId>> id;
        for (const auto& g : site.subgraphs) id.push_back(g.internal);
        if (reported.insert(id).second) out.push_back(std::move(site));
      }
    }
  }
  return out;
}

StagedTree apply_resize(const StagedTree& tree, const ResizeSite& site) {
  if (auto p = site_problem(tree, site)) throw InvalidSite(*p);
  std::set<VertexId> inside;
  for (const auto& g : site.subgraphs) inside.insert(g.internal.begin(), g.internal.end());
  std::vector<Edge> edges;
  for (const auto& e : tree.edges()) {
    if (!inside.count(e.from)) edges.push_back(e);
  }
  for (const auto& g : site.subgraphs) {
    for (const auto& gp : GraftPaths(tree, g)) {
      edges.push_back({g.root, gp.target, PathProduct(gp.labels)});
    }
  }
  return StagedTree(tree.root(), std::move(edges), tree.atoms());
}

Factorization subgraph_factorization(const StagedTree& tree, const Subgraph& g) {
  if (auto p = StructureProblem(tree, g)) throw InvalidSite(*p);
  std::set<VertexId> inside(g.internal.begin(), g.internal.end());
  std::function<Factorization(const VertexId&)> build = [&](const VertexId& v) {
    Factorization f;
    for (std::size_t e : tree.out_edges(v)) {
      const auto& edge = tree.edges()[e];
      f.terms.push_back({edge.label, inside.count(edge.to) ? build(edge.to) : Factorization{}});
    }
    return f;
  };
  return build(g.root);
}

StagedTree apply_inverse_resize(const StagedTree& tree, const VertexId& center,
                                const Factorization& f) {
  tree.require_event_tree();
  if (tree.is_leaf(center)) throw FactorizationMismatch(center + " is a leaf");
  Poly floret_sum;
  std::map<Label, VertexId> target;
  for (std::size_t e : tree.out_edges(center)) {
    floret_sum.add(Monomial(tree.edges()[e].label));
    target.emplace(tree.edges()[e].label, tree.edges()[e].to);
  }
  Poly expanded = expand(f);
  if (!poly_equal(expanded, floret_sum)) {
    throw FactorizationMismatch("factorization expands to " + to_string(expanded) +
                                " but the floret at " + center + " sums to " +
                                to_string(floret_sum));
  }
  std::vector<Edge> edges;
  for (const auto& e : tree.edges()) {
    if (e.from != center) edges.push_back(e);
  }
  FreshIds fresh(tree);
  std::size_t counter = 0;
  std::function<void(const Factorization&, const VertexId&, const std::optional<Label>&)> build =
      [&](const Factorization& level, const VertexId& at, const std::optional<Label>& prefix) {
        if (level.terms.size() < 2) {
          throw NodeTooSmall("a sum in the factorization has fewer than two entries");
        }
        for (const auto& t : level.terms) {
          Label product = prefix ? label_product(*prefix, t.label) : t.label;
          if (t.is_leaf()) {
            // Labels are compared as primitive sets, so the product matches
            // exactly one floret edge once the expansion check has passed.
            edges.push_back({at, target.at(product), t.label});
          } else {
            VertexId n = fresh.Next(center + "." + std::to_string(++counter));
            edges.push_back({at, n, t.label});
            build(t.sub, n, product);
          }
        }
      };
  build(f, center, std::nullopt);
  return StagedTree(tree.root(), std::move(edges), tree.atoms());
}

}  // namespace stagedtree
