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

#include "stagedtree/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <set>

#include "stagedtree/errors.hpp"
#include "stagedtree/evaluate.hpp"
#include "stagedtree/expression.hpp"

namespace stagedtree {
namespace {

bool IsStaged(const StagedTree& tree) { return validate(tree).empty(); }

bool Close(double x, double y) {
  return std::abs(x - y) <= kProbeTolerance * std::max(std::abs(x), std::abs(y));
}
bool Close(const Rational& x, const Rational& y) { return x == y; }

std::string Show(double x) { return std::to_string(x); }
std::string Show(const Rational& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

void CheckTotal(double total) {
  if (std::abs(total - 1.0) > kProbeTolerance) {
    throw InvalidDistribution("probabilities sum to " + Show(total));
  }
}
void CheckTotal(const Rational& total) {
  if (total != Rational(1)) throw InvalidDistribution("probabilities sum to " + Show(total));
}

template <class T>
Membership<T> Probe(const StagedTree& tree, const Distribution<T>& p) {
  tree.require_event_tree();
  auto all = paths(tree);
  if (all.size() != p.size()) {
    throw InvalidDistribution("distribution has " + std::to_string(p.size()) +
                              " atoms, tree has " + std::to_string(all.size()));
  }
  std::vector<T> prob;
  T total(0);
  for (const auto& path : all) {
    auto m = atomic_monomial(tree, path);
    auto it = p.find(m);
    if (it == p.end()) throw InvalidDistribution("no probability for atom " + m.str());
    if (!(it->second > T(0))) throw InvalidDistribution("atom " + m.str() + " is not positive");
    prob.push_back(it->second);
    total += it->second;
  }
  CheckTotal(total);

  std::map<VertexId, T> mass;
  for (std::size_t i = 0; i < all.size(); ++i) {
    mass[tree.root()] += prob[i];
    for (std::size_t e : all[i].edges) mass[tree.edges()[e].to] += prob[i];
  }
  Membership<T> out;
  std::map<Label, std::size_t> first_edge;
  for (std::size_t e = 0; e < tree.edges().size(); ++e) {
    const auto& edge = tree.edges()[e];
    T value = mass.at(edge.to) / mass.at(edge.from);
    auto [it, fresh] = out.params.emplace(edge.label, value);
    if (fresh) {
      first_edge[edge.label] = e;
      continue;
    }
    if (!Close(it->second, value)) {
      const auto& prev = tree.edges()[first_edge.at(edge.label)];
      out.params.clear();
      out.reason = "stage constraint on " + edge.label.str() + ": " + Show(it->second) +
                   " at " + prev.from + "->" + prev.to + " but " + Show(value) + " at " +
                   edge.from + "->" + edge.to;
      return out;
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    T product(1);
    for (std::size_t e : all[i].edges) product *= out.params.at(tree.edges()[e].label);
    if (!Close(product, prob[i])) {
      out.params.clear();
      out.reason = "product mismatch at atom " + atomic_monomial(tree, all[i]).str() + ": " +
                   Show(product) + " vs " + Show(prob[i]);
      return out;
    }
  }
  out.accepted = true;
  return out;
}

std::set<Monomial> Monomials(const StagedTree& tree) {
  std::set<Monomial> out;
  for (const auto& p : paths(tree)) out.insert(atomic_monomial(tree, p));
  return out;
}

Distribution<double> MapKeys(const Distribution<double>& p, const std::map<Monomial, Monomial>& m) {
  Distribution<double> out;
  for (const auto& [k, v] : p) out.emplace(m.at(k), v);
  return out;
}

std::uint64_t Pow2Saturating(std::size_t k) {
  return k >= 63 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << k);
}

// Search state for one side of the bidirectional search.
struct Node {
  StagedTree tree;
  std::string parent;
  std::optional<Step> step;
};

struct Side {
  std::map<std::string, Node> nodes;
  std::vector<std::string> frontier;
};

std::vector<Step> Moves(const StagedTree& tree, bool use_resizes) {
  std::vector<Step> out;
  for (auto& t : find_twins(tree)) out.push_back(SwapStep{std::move(t)});
  if (use_resizes && IsStaged(tree)) {
    for (auto& s : find_resize_sites(tree)) out.push_back(ResizeStep{std::move(s)});
  }
  return out;
}

// Steps from the side's start to `key`, in application order.
std::vector<std::pair<const Node*, Step>> Chain(const Side& side, std::string key) {
  std::vector<std::pair<const Node*, Step>> out;
  for (;;) {
    const Node& n = side.nodes.at(key);
    if (!n.step) break;
    const Node& parent = side.nodes.at(n.parent);
    out.emplace_back(&parent, *n.step);
    key = n.parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

VertexId Map(const std::map<VertexId, VertexId>& m, const VertexId& v) {
  auto it = m.find(v);
  if (it == m.end()) throw UnknownVertex(v);
  return it->second;
}

Step Translate(const Step& step, const std::map<VertexId, VertexId>& m) {
  if (const auto* s = std::get_if<SwapStep>(&step)) {
    Twin t{Map(m, s->twin.root), {}, s->twin.stage};
    for (const auto& c : s->twin.members) t.members.push_back(Map(m, c));
    std::sort(t.members.begin(), t.members.end());
    return SwapStep{std::move(t)};
  }
  if (const auto* r = std::get_if<ResizeStep>(&step)) {
    ResizeSite site{r->site.condition, {}};
    for (const auto& g : r->site.subgraphs) {
      Subgraph h{Map(m, g.root), {}};
      for (const auto& v : g.internal) h.internal.push_back(Map(m, v));
      std::sort(h.internal.begin(), h.internal.end());
      site.subgraphs.push_back(std::move(h));
    }
    return ResizeStep{std::move(site)};
  }
  const auto& inv = std::get<InverseResizeStep>(step);
  return InverseResizeStep{Map(m, inv.center), inv.factorization};
}

// Steps undoing `step`, which took `before` to `after`; expressed in the
// ids of `after` and to be applied in order.
std::vector<Step> Inverse(const StagedTree& before, const Step& step, const StagedTree& after) {
  if (const auto* s = std::get_if<SwapStep>(&step)) {
    return {SwapStep{inverse_twin(before, s->twin, after)}};
  }
  if (const auto* r = std::get_if<ResizeStep>(&step)) {
    std::vector<Step> out;
    for (const auto& g : r->site.subgraphs) {
      out.push_back(InverseResizeStep{g.root, subgraph_factorization(before, g)});
    }
    return out;
  }
  throw InputError("inverse resizes are not search moves");
}

}  // namespace

bool polynomially_equivalent(const StagedTree& a, const StagedTree& b) {
  if (alphabet(a) != alphabet(b)) return false;
  return poly_equal(interpolating_polynomial(a), interpolating_polynomial(b));
}

ClassReport enumerate_class(const StagedTree& seed, const ClassConfig& cfg) {
  seed.require_event_tree();
  ClassReport report;
  auto seed_twins = find_twins(seed);
  std::size_t pairs = std::count_if(seed_twins.begin(), seed_twins.end(),
                                    [](const Twin& t) { return t.members.size() == 2; });
  report.naive_count = Pow2Saturating(pairs);

  std::set<std::string> single;
  for (const auto& t : seed_twins) {
    auto next = apply_naive_swap(seed, t);
    if (IsStaged(next)) single.insert(canonical_form(next));
  }
  report.valid_single_swaps = single.size();

  std::optional<std::mt19937_64> rng;
  if (cfg.shuffle_seed) rng.emplace(*cfg.shuffle_seed);
  std::set<std::string> visited{canonical_form(seed)};
  std::map<std::string, StagedTree> staged;
  if (IsStaged(seed)) staged.emplace(canonical_form(seed), seed);
  std::deque<StagedTree> queue{seed};
  while (!queue.empty()) {
    StagedTree tree = std::move(queue.front());
    queue.pop_front();
    auto twins = find_twins(tree);
    if (rng) std::shuffle(twins.begin(), twins.end(), *rng);
    for (const auto& t : twins) {
      auto next = apply_naive_swap(tree, t);
      auto key = canonical_form(next);
      if (visited.count(key)) continue;
      if (visited.size() >= cfg.max_states) {
        report.complete = false;
        continue;
      }
      visited.insert(key);
      if (IsStaged(next)) staged.emplace(key, next);
      queue.push_back(std::move(next));
    }
  }
  report.explored_states = visited.size();
  for (auto& [key, tree] : staged) report.staged_members.push_back(std::move(tree));
  return report;
}

Membership<double> distribution_membership(const StagedTree& tree, const Distribution<double>& p) {
  return Probe(tree, p);
}

Membership<Rational> distribution_membership(const StagedTree& tree,
                                             const Distribution<Rational>& p) {
  return Probe(tree, p);
}

Distribution<double> random_distribution(const StagedTree& tree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto theta = random_normalized_assignment(tree, rng);
  auto all = paths(tree);
  auto probs = atomic_probabilities(tree, theta);
  Distribution<double> out;
  for (std::size_t i = 0; i < all.size(); ++i) out.emplace(atomic_monomial(tree, all[i]), probs[i]);
  return out;
}

std::optional<std::map<Monomial, Monomial>> atom_correspondence(const StagedTree& from,
                                                                const StagedTree& to) {
  auto monomial_of = [](const StagedTree& t) {
    std::map<VertexId, Monomial> out;
    for (const auto& p : paths(t)) out.emplace(p.leaf, atomic_monomial(t, p));
    return out;
  };
  std::map<Monomial, Monomial> out;
  bool same_names = !from.atoms().empty() && from.atoms().size() == to.atoms().size() &&
                    std::equal(from.atoms().begin(), from.atoms().end(), to.atoms().begin(),
                               [](const auto& x, const auto& y) { return x.first == y.first; });
  if (same_names) {
    auto mf = monomial_of(from);
    auto mt = monomial_of(to);
    for (const auto& [name, leaf] : from.atoms()) {
      auto a = mf.find(leaf);
      auto b = mt.find(to.atoms().at(name));
      if (a == mf.end() || b == mt.end()) return std::nullopt;
      out.emplace(a->second, b->second);
    }
    if (out.size() == mf.size()) return out;
    out.clear();
  }
  auto mf = Monomials(from);
  if (mf != Monomials(to)) return std::nullopt;
  for (const auto& m : mf) out.emplace(m, m);
  return out;
}

StagedTree apply_step(const StagedTree& tree, const Step& step) {
  if (const auto* s = std::get_if<SwapStep>(&step)) return apply_naive_swap(tree, s->twin);
  if (const auto* r = std::get_if<ResizeStep>(&step)) return apply_resize(tree, r->site);
  const auto& inv = std::get<InverseResizeStep>(step);
  return apply_inverse_resize(tree, inv.center, inv.factorization);
}

StagedTree replay(const StagedTree& tree, const std::vector<Step>& path) {
  StagedTree current = tree;
  for (const auto& step : path) current = apply_step(current, step);
  return current;
}

std::string describe(const Step& step) {
  if (const auto* s = std::get_if<SwapStep>(&step)) return "swap " + s->twin.str();
  if (const auto* r = std::get_if<ResizeStep>(&step)) return "resize " + r->site.str();
  const auto& inv = std::get<InverseResizeStep>(step);
  return "expand-floret " + inv.center + " " + to_string(inv.factorization);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kEquivalent: return "equivalent";
    case Verdict::kNotEquivalent: return "not_equivalent";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

EquivVerdict statistically_equivalent(const StagedTree& a, const StagedTree& b,
                                      const EquivConfig& cfg) {
  for (const auto* t : {&a, &b}) {
    auto violations = validate(*t, {.require_square_free = true});
    if (!violations.empty()) throw InvalidTree(violations.front().str());
  }
  EquivVerdict out;
  auto na = paths(a).size();
  auto nb = paths(b).size();
  if (na != nb) {
    out.status = Verdict::kNotEquivalent;
    out.reason = "atom counts differ: " + std::to_string(na) + " vs " + std::to_string(nb);
    return out;
  }
  if (canonical_equal(a, b)) {
    out.status = Verdict::kEquivalent;
    return out;
  }

  auto ab = atom_correspondence(a, b);
  auto ba = atom_correspondence(b, a);
  if (!ab || !ba) {
    out.reason = "no atom correspondence between the trees";
    return out;
  }
  struct Direction {
    const StagedTree* source;
    const StagedTree* target;
    const std::map<Monomial, Monomial>* keys;
    const char* name;
  };
  for (const auto& d : {Direction{&a, &b, &*ab, "first"}, Direction{&b, &a, &*ba, "second"}}) {
    for (std::size_t k = 0; k < cfg.probes; ++k) {
      std::uint64_t seed = cfg.seed + k;
      auto p = MapKeys(random_distribution(*d.source, seed), *d.keys);
      auto m = distribution_membership(*d.target, p);
      if (!m.accepted) {
        out.status = Verdict::kNotEquivalent;
        out.probe = ProbeCertificate{d.name, seed, std::move(p), m.reason};
        out.reason = m.reason;
        return out;
      }
    }
  }
  if (Monomials(a) != Monomials(b)) {
    out.reason = "every probe was accepted, but the trees use different symbols";
    return out;
  }

  Side sides[2];
  auto ka = canonical_form(a);
  auto kb = canonical_form(b);
  sides[0].nodes.emplace(ka, Node{a, "", std::nullopt});
  sides[0].frontier.push_back(ka);
  sides[1].nodes.emplace(kb, Node{b, "", std::nullopt});
  sides[1].frontier.push_back(kb);
  std::optional<std::string> meet;
  bool exhausted = false;
  while (!meet && !exhausted) {
    std::size_t s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    if (sides[s].frontier.empty()) s = 1 - s;
    if (sides[s].frontier.empty()) break;
    std::vector<std::string> next;
    for (const auto& key : sides[s].frontier) {
      const StagedTree tree = sides[s].nodes.at(key).tree;
      for (const auto& step : Moves(tree, cfg.use_resizes)) {
        std::optional<StagedTree> child;
        try {
          child = apply_step(tree, step);
        } catch (const DomainError&) {
          continue;
        }
        auto ck = canonical_form(*child);
        if (sides[s].nodes.count(ck)) continue;
        if (sides[0].nodes.size() + sides[1].nodes.size() >= cfg.max_states) {
          exhausted = true;
          break;
        }
        sides[s].nodes.emplace(ck, Node{std::move(*child), key, step});
        next.push_back(ck);
        if (sides[1 - s].nodes.count(ck)) {
          meet = ck;
          break;
        }
      }
      if (meet || exhausted) break;
    }
    sides[s].frontier = std::move(next);
    if (sides[0].frontier.empty() && sides[1].frontier.empty()) break;
  }
  out.explored_states = sides[0].nodes.size() + sides[1].nodes.size();
  if (!meet) {
    out.reason = exhausted ? "search budget exhausted after " + std::to_string(out.explored_states) +
                                 " states"
                           : "no swap or resize path found; the search space was exhausted";
    return out;
  }

  for (const auto& [node, step] : Chain(sides[0], *meet)) out.path.push_back(step);
  StagedTree forward = sides[0].nodes.at(*meet).tree;
  auto back = Chain(sides[1], *meet);
  for (std::size_t i = back.size(); i-- > 0;) {
    const StagedTree& before = back[i].first->tree;
    const StagedTree& after =
        i + 1 < back.size() ? back[i + 1].first->tree : sides[1].nodes.at(*meet).tree;
    StagedTree current = after;
    for (const auto& inv : Inverse(before, back[i].second, after)) {
      auto translated = Translate(inv, match_vertices(current, forward));
      forward = apply_step(forward, translated);
      current = apply_step(current, inv);
      out.path.push_back(std::move(translated));
    }
  }
  if (!canonical_equal(replay(a, out.path), b)) {
    out.path.clear();
    out.reason = "internal error: the assembled path does not replay";
    return out;
  }
  out.status = Verdict::kEquivalent;
  return out;
}

bool check_certificate(const StagedTree& a, const StagedTree& b, const ProbeCertificate& cert) {
  bool first = cert.source == "first";
  if (!first && cert.source != "second") return false;
  const StagedTree& source = first ? a : b;
  const StagedTree& target = first ? b : a;
  auto keys = atom_correspondence(source, target);
  if (!keys) return false;
  auto p = MapKeys(random_distribution(source, cert.seed), *keys);
  if (p != cert.distribution) return false;
  return !distribution_membership(target, p).accepted;
}

}  // namespace stagedtree
