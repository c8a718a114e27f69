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

#include "stagedtree/compat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"

namespace stagedtree {
namespace {

// Terms are sorted vectors of token ids; a term list is kept sorted so it
// can key the memo tables.
using Term = std::vector<int>;
using Terms = std::vector<Term>;

Terms Normalize(Terms terms) {
  for (auto& t : terms) std::sort(t.begin(), t.end());
  std::sort(terms.begin(), terms.end());
  return terms;
}

// All token sets A with |A| >= 2 such that every term contains exactly one
// element of A. Branches on the uncovered term with the fewest admissible
// tokens; choosing a token covers every term holding it and forbids all
// tokens co-occurring with it, so each set is produced once.
class HittingSets {
 public:
  HittingSets(const Terms& terms, std::size_t token_count)
      : terms_(terms), containing_(token_count) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      for (int s : terms_[i]) containing_[s].push_back(i);
    }
  }

  std::vector<std::vector<int>> All() {
    std::vector<char> covered(terms_.size(), 0);
    std::vector<char> forbidden(containing_.size(), 0);
    std::vector<int> chosen;
    Recurse(covered, forbidden, chosen);
    return std::move(out_);
  }

 private:
  void Recurse(std::vector<char>& covered, std::vector<char>& forbidden,
               std::vector<int>& chosen) {
    std::size_t best = terms_.size();
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (covered[i]) continue;
      std::size_t n = 0;
      for (int s : terms_[i]) n += !forbidden[s];
      if (best == terms_.size() || n < best_count) {
        best = i;
        best_count = n;
      }
      if (n == 0) return;
    }
    if (best == terms_.size()) {
      if (chosen.size() >= 2) {
        auto a = chosen;
        std::sort(a.begin(), a.end());
        out_.push_back(std::move(a));
      }
      return;
    }
    for (int s : terms_[best]) {
      if (forbidden[s]) continue;
      auto saved_covered = covered;
      auto saved_forbidden = forbidden;
      for (std::size_t i : containing_[s]) {
        covered[i] = 1;
        for (int other : terms_[i]) forbidden[other] = 1;
      }
      chosen.push_back(s);
      Recurse(covered, forbidden, chosen);
      chosen.pop_back();
      covered = std::move(saved_covered);
      forbidden = std::move(saved_forbidden);
    }
  }

  const Terms& terms_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::vector<int>> out_;
};

// Splits `terms` by the element of `a` they contain. Returns false when
// some group cannot become a sub-floret: a bare label next to longer terms,
// a repeated bare label, or a single longer term.
struct Group {
  int token;
  bool leaf;
  Terms rest;
};

bool SplitBy(const Terms& terms, const std::vector<int>& a, std::vector<Group>& groups) {
  groups.clear();
  for (int s : a) {
    Group g{s, false, {}};
    bool has_empty = false;
    for (const auto& t : terms) {
      if (!std::binary_search(t.begin(), t.end(), s)) continue;
      Term stripped;
      for (int x : t) {
        if (x != s) stripped.push_back(x);
      }
      has_empty |= stripped.empty();
      g.rest.push_back(std::move(stripped));
    }
    if (has_empty) {
      if (g.rest.size() != 1) return false;
      g.leaf = true;
      g.rest.clear();
    } else if (g.rest.size() < 2) {
      return false;
    } else {
      g.rest = Normalize(std::move(g.rest));
    }
    groups.push_back(std::move(g));
  }
  return true;
}

class Searcher {
 public:
  Searcher(std::vector<Label> tokens, const CompatSearchConfig& cfg, std::size_t inner_cap)
      : tokens_(std::move(tokens)), cfg_(cfg), inner_cap_(inner_cap) {}

  bool truncated() const { return truncated_; }

  std::vector<Factorization> Solve(const Terms& terms, std::size_t depth, std::size_t cap) {
    if (depth > cfg_.max_depth) {
      truncated_ = true;
      return {};
    }
    if (auto it = all_memo_.find(terms); it != all_memo_.end()) return it->second;
    std::vector<Factorization> results;
    std::vector<Group> groups;
    for (const auto& a : HittingSets(terms, tokens_.size()).All()) {
      if (!SplitBy(terms, a, groups)) continue;
      std::vector<std::vector<Factorization>> options;
      bool ok = true;
      for (const auto& g : groups) {
        if (g.leaf) {
          options.push_back({Factorization{}});
          continue;
        }
        auto sub = Solve(g.rest, depth + 1, inner_cap_);
        if (sub.empty()) {
          ok = false;
          break;
        }
        options.push_back(std::move(sub));
      }
      if (!ok) continue;
      // Cartesian product over the groups' options.
      std::vector<std::size_t> pick(groups.size(), 0);
      for (;;) {
        if (results.size() >= cap) {
          truncated_ = true;
          break;
        }
        Factorization f;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          f.terms.push_back({tokens_[groups[i].token], options[i][pick[i]]});
        }
        results.push_back(std::move(f));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      if (results.size() >= cap) break;
    }
    all_memo_[terms] = results;
    return results;
  }

  std::optional<Factorization> First(const Terms& terms, std::size_t depth) {
    if (depth > cfg_.max_depth) {
      truncated_ = true;
      return std::nullopt;
    }
    if (auto it = first_memo_.find(terms); it != first_memo_.end()) return it->second;
    std::optional<Factorization> found;
    std::vector<Group> groups;
    for (const auto& a : HittingSets(terms, tokens_.size()).All()) {
      if (!SplitBy(terms, a, groups)) continue;
      Factorization f;
      bool ok = true;
      for (const auto& g : groups) {
        if (g.leaf) {
          f.terms.push_back({tokens_[g.token], {}});
          continue;
        }
        auto sub = First(g.rest, depth + 1);
        if (!sub) {
          ok = false;
          break;
        }
        f.terms.push_back({tokens_[g.token], std::move(*sub)});
      }
      if (ok) {
        found = std::move(f);
        break;
      }
    }
    first_memo_[terms] = found;
    return found;
  }

 private:
  std::vector<Label> tokens_;
  const CompatSearchConfig& cfg_;
  std::size_t inner_cap_;
  bool truncated_ = false;
  std::map<Terms, std::vector<Factorization>> all_memo_;
  std::map<Terms, std::optional<Factorization>> first_memo_;
};

struct Encoded {
  std::vector<Label> tokens;
  Terms terms;
};

Encoded EncodePoly(const Poly& p) {
  if (!p.has_unit_coefficients()) {
    throw InputError("tree compatibility is defined for unit coefficients only");
  }
  Encoded out;
  std::map<std::string, int> id;
  for (const auto& s : p.symbols()) {
    id[s] = static_cast<int>(out.tokens.size());
    out.tokens.emplace_back(s);
  }
  for (const auto& [m, c] : p.terms()) {
    Term t;
    for (const auto& s : m.symbols()) t.push_back(id.at(s));
    out.terms.push_back(std::move(t));
  }
  out.terms = Normalize(std::move(out.terms));
  return out;
}

bool IsWellStaged(const Factorization& f) {
  for (const auto& v : validate(tree_from_factorization(f))) {
    if (v.kind == ViolationKind::kPartialStageOverlap ||
        v.kind == ViolationKind::kDuplicateFloretLabel) {
      return false;
    }
  }
  return true;
}

FactorizationSearch Run(const Encoded& enc, const CompatSearchConfig& cfg) {
  if (cfg.max_results < 1) throw InputError("max_results must be at least 1");
  FactorizationSearch out;
  if (enc.terms.size() < 2) return out;
  std::size_t inner_cap = cfg.require_staged ? std::numeric_limits<std::size_t>::max()
                                             : cfg.max_results;
  Searcher searcher(enc.tokens, cfg, inner_cap);
  auto all = searcher.Solve(enc.terms, 1, std::numeric_limits<std::size_t>::max());
  bool capped = false;
  for (auto& f : all) {
    if (cfg.require_staged && !IsWellStaged(f)) continue;
    if (out.results.size() >= cfg.max_results) {
      capped = true;
      break;
    }
    out.results.push_back(canonicalize(std::move(f)));
  }
  std::sort(out.results.begin(), out.results.end(),
            [](const Factorization& a, const Factorization& b) {
              return to_string(a) < to_string(b);
            });
  out.complete = !capped && !searcher.truncated();
  return out;
}

void BuildTree(const Factorization& f, const VertexId& at, std::size_t& next,
               std::vector<Edge>& edges) {
  if (f.terms.size() < 2) {
    throw NodeTooSmall("a sum in a tree-compatible factorization needs at least two "
                       "entries, got '" + to_string(f) + "'");
  }
  std::set<Label> seen;
  for (const auto& t : f.terms) {
    if (!seen.insert(t.label).second) {
      throw NodeTooSmall("label " + t.label.str() + " repeats within one sum");
    }
  }
  for (const auto& t : f.terms) {
    VertexId child = "v" + std::to_string(next++);
    edges.push_back({at, child, t.label});
    if (!t.is_leaf()) BuildTree(t.sub, child, next, edges);
  }
}

}  // namespace

FactorizationSearch find_factorizations(const Poly& p, const CompatSearchConfig& cfg) {
  return Run(EncodePoly(p), cfg);
}

FactorizationSearch find_label_factorizations(const StagedTree& tree,
                                              const CompatSearchConfig& cfg) {
  Encoded enc;
  std::map<Label, int> id;
  for (const auto& l : alphabet(tree)) {
    id[l] = static_cast<int>(enc.tokens.size());
    enc.tokens.push_back(l);
  }
  for (const auto& path : paths(tree)) {
    Term t;
    for (std::size_t e : path.edges) t.push_back(id.at(tree.edges()[e].label));
    std::sort(t.begin(), t.end());
    auto dup = std::adjacent_find(t.begin(), t.end());
    if (dup != t.end()) throw SymbolRepeat(enc.tokens[*dup].str());
    enc.terms.push_back(std::move(t));
  }
  enc.terms = Normalize(std::move(enc.terms));
  return Run(enc, cfg);
}

CompatVerdict is_tree_compatible(const Poly& p, const CompatSearchConfig& cfg) {
  auto enc = EncodePoly(p);
  CompatVerdict out;
  if (enc.terms.size() < 2) return out;
  Searcher searcher(enc.tokens, cfg, cfg.max_results);
  if (auto w = searcher.First(enc.terms, 1)) {
    out.status = Compatibility::kYes;
    out.witness = canonicalize(std::move(*w));
  } else {
    out.status = searcher.truncated() ? Compatibility::kUnknown : Compatibility::kNo;
  }
  return out;
}

StagedTree tree_from_factorization(const Factorization& f) {
  std::vector<Edge> edges;
  std::size_t next = 1;
  BuildTree(f, "v0", next, edges);
  return StagedTree("v0", std::move(edges));
}

}  // namespace stagedtree
