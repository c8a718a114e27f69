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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stagedtree/polynomial.hpp"
#include "stagedtree/staged_tree.hpp"
#include "stagedtree/transform.hpp"

namespace stagedtree {

/// Same label alphabet and formally equal interpolating polynomials.
bool polynomially_equivalent(const StagedTree& a, const StagedTree& b);

struct ClassConfig {
  /// Distinct states (canonical forms) the closure may visit.
  std::size_t max_states = 200000;
  /// When set, the twins of every state are explored in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

struct ClassReport {
  /// Well-staged trees reached by naive swaps, sorted by canonical form.
  /// The seed is among them.
  std::vector<StagedTree> staged_members;
  /// 2^k for the k twins of the seed with exactly two members. A rough
  /// indicator only; the closure gives the exact class.
  std::size_t naive_count = 0;
  std::size_t explored_states = 0;
  /// Distinct staged trees one swap away from the seed.
  std::size_t valid_single_swaps = 0;
  /// False when max_states cut the closure short.
  bool complete = true;
};

/// Breadth-first closure of `seed` under naive swaps, with non-staged
/// intermediate trees traversed but not reported.
ClassReport enumerate_class(const StagedTree& seed, const ClassConfig& cfg = {});

/// Probabilities of the atoms, keyed by atomic monomial.
template <class T>
using Distribution = std::map<Monomial, T>;

template <class T>
struct Membership {
  bool accepted = false;
  /// Forced value of every label, when accepted.
  std::map<Label, T> params;
  /// The violated constraint, when rejected.
  std::string reason;
};

/// Relative tolerance of the floating-point probe.
inline constexpr double kProbeTolerance = 1e-9;

/// Decides whether `p` lies in the model of `tree`. Every edge value is
/// forced to P(paths through child) / P(paths through parent); the
/// distribution is accepted iff edges sharing a label receive equal values
/// and the label products reproduce `p`. Throws InvalidDistribution unless
/// `p` is strictly positive, sums to one and is keyed by exactly the atomic
/// monomials of `tree`.
Membership<double> distribution_membership(const StagedTree& tree, const Distribution<double>& p);
Membership<Rational> distribution_membership(const StagedTree& tree,
                                             const Distribution<Rational>& p);

/// The distribution of `tree` under `theta`-values drawn by
/// random_normalized_assignment from a generator seeded with `seed`.
Distribution<double> random_distribution(const StagedTree& tree, std::uint64_t seed);

/// Maps the atomic monomials of `from` to those of `to`: through the atom
/// names when both trees name the same atoms, otherwise by identity when the
/// two monomial sets coincide. nullopt when neither applies.
std::optional<std::map<Monomial, Monomial>> atom_correspondence(const StagedTree& from,
                                                                const StagedTree& to);

struct SwapStep {
  Twin twin;
  friend bool operator==(const SwapStep&, const SwapStep&) = default;
};
struct ResizeStep {
  ResizeSite site;
  friend bool operator==(const ResizeStep&, const ResizeStep&) = default;
};
struct InverseResizeStep {
  VertexId center;
  Factorization factorization;
  friend bool operator==(const InverseResizeStep& a, const InverseResizeStep& b) {
    return a.center == b.center && a.factorization == b.factorization;
  }
};
using Step = std::variant<SwapStep, ResizeStep, InverseResizeStep>;

/// Swap steps are applied naively so that a path may pass through
/// non-staged trees; resizes are checked against their site conditions.
StagedTree apply_step(const StagedTree& tree, const Step& step);
StagedTree replay(const StagedTree& tree, const std::vector<Step>& path);
std::string describe(const Step& step);

/// A refuting probe: the distribution drawn with `seed` from the `source`
/// tree ("first" or "second"), mapped onto the other tree's atoms, is
/// rejected there for `reason`.
struct ProbeCertificate {
  std::string source;
  std::uint64_t seed = 0;
  Distribution<double> distribution;  // keyed by the other tree's monomials
  std::string reason;
};

enum class Verdict { kEquivalent, kNotEquivalent, kUnknown };
std::string to_string(Verdict v);

struct EquivVerdict {
  Verdict status = Verdict::kUnknown;
  /// Steps taking the first tree to the second, when equivalent.
  std::vector<Step> path;
  /// Set for a refutation by probe.
  std::optional<ProbeCertificate> probe;
  /// Structural refutation, or why the search gave up.
  std::string reason;
  std::size_t explored_states = 0;
};

/// Seed of randomized probes unless the caller supplies one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct EquivConfig {
  std::size_t max_states = 20000;
  std::uint64_t seed = kDefaultSeed;
  /// Probes drawn from each tree.
  std::size_t probes = 4;
  bool use_resizes = true;
};

/// Atom counts first, then random membership probes in both directions,
/// then a bidirectional breadth-first search over naive swaps and valid
/// resizes that meets in the middle. An `equivalent` path has been replayed
/// against the second tree's canonical form.
EquivVerdict statistically_equivalent(const StagedTree& a, const StagedTree& b,
                                      const EquivConfig& cfg = {});

/// True iff the certificate's distribution is regenerated from its seed and
/// rejected again by the other tree.
bool check_certificate(const StagedTree& a, const StagedTree& b, const ProbeCertificate& cert);

}  // namespace stagedtree
