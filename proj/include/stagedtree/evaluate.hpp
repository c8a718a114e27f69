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

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stagedtree/label.hpp"
#include "stagedtree/polynomial.hpp"
#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

/// Numeric values of primitive symbols. A composite label evaluates to the
/// product of its constituents.
struct ParameterAssignment {
  std::map<std::string, double> values;

  /// Throws MissingSymbol.
  double value(const Label& label) const;
};

/// Coefficient g(λ) of a network polynomial.
using PathWeight = std::function<double(const Path&)>;

PathWeight unit_weight();
/// Indicator of the paths ending in one of `leaves`.
PathWeight indicator(std::set<VertexId> leaves);
/// Indicator of the vertex-centred event through `v`.
PathWeight through_vertex(const StagedTree& tree, const VertexId& v);

enum class Normalization { kUnchecked, kRequired };

inline constexpr double kNormalizationTolerance = 1e-12;

/// Throws NormalizationViolation unless every floret sums to one and every
/// value lies in (0, 1).
void check_normalized(const StagedTree& tree, const ParameterAssignment& theta);

/// Σ_λ g(λ) ∏_{e ∈ λ} θ(e).
double evaluate(const StagedTree& tree, const PathWeight& g,
                const ParameterAssignment& theta,
                Normalization normalization = Normalization::kUnchecked);

/// Atomic probabilities in paths() order.
std::vector<double> atomic_probabilities(const StagedTree& tree,
                                         const ParameterAssignment& theta);

/// A uniformly random point in the product of floret simplices with stage
/// constraints honoured (one draw per stage). Florets with composite labels
/// are sampled through a tree-compatible factorization of their label sum so
/// that the constituents themselves stay normalized.
ParameterAssignment random_normalized_assignment(const StagedTree& tree, std::mt19937_64& rng);

}  // namespace stagedtree
