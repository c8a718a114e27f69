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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/evaluate.hpp"

using namespace stagedtree;
using stagedtree::testing::fixture;

namespace {

ParameterAssignment Fig2aThirds() {
  ParameterAssignment theta;
  for (auto s : {"t1", "t2", "t3", "t6", "t7", "t8"}) theta.values[s] = 1.0 / 3;
  theta.values["t4"] = 0.5;
  theta.values["t5"] = 0.5;
  return theta;
}

}  // namespace

TEST(Evaluate, Fig2aNormalization) {
  auto t = fixture("fig2a");
  EXPECT_NEAR(evaluate(t, unit_weight(), Fig2aThirds(), Normalization::kRequired), 1.0, 1e-12);
}

TEST(Evaluate, Fig2aIndicators) {
  auto t = fixture("fig2a");
  auto theta = Fig2aThirds();
  auto v1 = *t.child_by_label(t.root(), Label("t2"));
  EXPECT_NEAR(evaluate(t, through_vertex(t, v1), theta), 1.0 / 3, 1e-12);
  for (const auto& p : paths(t)) {
    if (atomic_monomial(t, p) == Monomial(std::vector<std::string>{"t3", "t4", "t6"})) {
      EXPECT_NEAR(evaluate(t, indicator({p.leaf}), theta), 1.0 / 18, 1e-12);
    }
  }
}

TEST(Evaluate, MissingSymbol) {
  ParameterAssignment theta;
  theta.values["a"] = 0.5;
  EXPECT_THROW(evaluate(fixture("star3"), unit_weight(), theta), MissingSymbol);
}

TEST(Evaluate, NormalizationChecked) {
  ParameterAssignment theta;
  theta.values = {{"a", 0.5}, {"b", 0.4}, {"c", 0.2}};
  auto t = fixture("star3");
  EXPECT_THROW(evaluate(t, unit_weight(), theta, Normalization::kRequired),
               NormalizationViolation);
  EXPECT_NEAR(evaluate(t, unit_weight(), theta), 1.1, 1e-12);
}

TEST(Evaluate, RandomAssignmentsHonourStages) {
  std::mt19937_64 rng(3);
  auto t = fixture("fig1");
  for (int i = 0; i < 20; ++i) {
    auto theta = random_normalized_assignment(t, rng);
    EXPECT_NO_THROW(check_normalized(t, theta));
    EXPECT_EQ(theta.values.size(), 8u);
  }
}

TEST(Evaluate, CompositeLabelsMultiply) {
  ParameterAssignment theta;
  theta.values = {{"a", 0.5}, {"b", 0.25}};
  EXPECT_DOUBLE_EQ(theta.value(Label{"a", "b"}), 0.125);
  std::mt19937_64 rng(5);
  auto t = fixture("chds_b");
  auto random = random_normalized_assignment(t, rng);
  EXPECT_NEAR(evaluate(t, unit_weight(), random, Normalization::kRequired), 1.0, 1e-12);
}

TEST(Evaluate, AtomicProbabilitiesSumToOne) {
  std::mt19937_64 rng(9);
  auto t = fixture("chds_a");
  auto probs = atomic_probabilities(t, random_normalized_assignment(t, rng));
  double sum = 0;
  for (double p : probs) sum += p;
  EXPECT_EQ(probs.size(), 24u);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}
