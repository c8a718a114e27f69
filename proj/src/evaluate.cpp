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

#include "stagedtree/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "stagedtree/compat.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"

namespace stagedtree {

double ParameterAssignment::value(const Label& label) const {
  double out = 1.0;
  for (const auto& s : label.symbols()) {
    auto it = values.find(s);
    if (it == values.end()) throw MissingSymbol(s);
    out *= it->second;
  }
  return out;
}

PathWeight unit_weight() {
  return [](const Path&) { return 1.0; };
}

PathWeight indicator(std::set<VertexId> leaves) {
  return [leaves = std::move(leaves)](const Path& p) { return leaves.count(p.leaf) ? 1.0 : 0.0; };
}

PathWeight through_vertex(const StagedTree& tree, const VertexId& v) {
  std::set<VertexId> leaves;
  for (const auto& p : vertex_event(tree, v)) leaves.insert(p.leaf);
  return indicator(std::move(leaves));
}

void check_normalized(const StagedTree& tree, const ParameterAssignment& theta) {
  for (const auto& v : tree.internal_vertices()) {
    double sum = 0.0;
    for (const auto& label : tree.floret(v)) {
      double x = theta.value(label);
      if (!(x > 0.0 && x < 1.0)) {
        throw NormalizationViolation("value of " + label.str() + " at " + v +
                                     " is outside (0, 1)");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      throw NormalizationViolation("floret " + v + " sums to " + std::to_string(sum));
    }
  }
}

double evaluate(const StagedTree& tree, const PathWeight& g,
                const ParameterAssignment& theta, Normalization normalization) {
  if (normalization == Normalization::kRequired) check_normalized(tree, theta);
  double total = 0.0;
  for (const auto& p : paths(tree)) {
    double w = g(p);
    if (w == 0.0) continue;
    double product = 1.0;
    for (std::size_t e : p.edges) product *= theta.value(tree.edges()[e].label);
    total += w * product;
  }
  return total;
}

std::vector<double> atomic_probabilities(const StagedTree& tree,
                                         const ParameterAssignment& theta) {
  std::vector<double> out;
  for (const auto& p : paths(tree)) {
    double product = 1.0;
    for (std::size_t e : p.edges) product *= theta.value(tree.edges()[e].label);
    out.push_back(product);
  }
  return out;
}

namespace {

void SampleInto(const StagedTree& tree, std::mt19937_64& rng, ParameterAssignment& theta) {
  std::exponential_distribution<double> gamma1(1.0);
  auto partition = stages(tree);
  for (const auto& labels : partition.florets) {
    bool primitive = std::all_of(labels.begin(), labels.end(),
                                 [](const Label& l) { return l.is_primitive(); });
    if (primitive) {
      std::vector<double> draws;
      double total = 0.0;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        draws.push_back(gamma1(rng));
        total += draws.back();
      }
      for (std::size_t i = 0; i < labels.size(); ++i) {
        theta.values.emplace(labels[i].symbols().front(), draws[i] / total);
      }
      continue;
    }
    Poly sum;
    for (const auto& l : labels) sum.add(Monomial(l));
    auto verdict = is_tree_compatible(sum);
    if (verdict.status != Compatibility::kYes) {
      throw NormalizationViolation("composite floret (" + to_string(sum) +
                                   ") has no normalized parametrization by its constituents");
    }
    SampleInto(tree_from_factorization(*verdict.witness), rng, theta);
  }
}

}  // namespace

ParameterAssignment random_normalized_assignment(const StagedTree& tree, std::mt19937_64& rng) {
  ParameterAssignment theta;
  SampleInto(tree, rng, theta);
  check_normalized(tree, theta);
  return theta;
}

}  // namespace stagedtree
