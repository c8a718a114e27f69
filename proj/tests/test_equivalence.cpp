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

#include <random>

#include "fixtures.hpp"
#include "stagedtree/equivalence.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/evaluate.hpp"
#include "stagedtree/expression.hpp"
#include "stagedtree/serialize.hpp"

using namespace stagedtree;
using stagedtree::testing::fixture;

TEST(PolynomialEquivalence, Examples) {
  EXPECT_TRUE(polynomially_equivalent(fixture("fig2a"), fixture("fig2b")));
  EXPECT_TRUE(polynomially_equivalent(fixture("chds_b"), fixture("chds_b")));
  EXPECT_FALSE(polynomially_equivalent(fixture("chds_a"), fixture("chds_b")));
  EXPECT_FALSE(polynomially_equivalent(fixture("fig1"), fixture("fig1_unstaged")));
}

TEST(EnumerateClass, Star) {
  auto r = enumerate_class(fixture("star3"));
  EXPECT_EQ(r.staged_members.size(), 1u);
  EXPECT_EQ(r.naive_count, 1u);
  EXPECT_TRUE(r.complete);
}

TEST(EnumerateClass, Fig2a) {
  auto r = enumerate_class(fixture("fig2a"));
  EXPECT_TRUE(r.complete);
  auto contains = [&](const StagedTree& t) {
    for (const auto& m : r.staged_members) {
      if (canonical_equal(m, t)) return true;
    }
    return false;
  };
  EXPECT_TRUE(contains(fixture("fig2a")));
  EXPECT_TRUE(contains(fixture("fig2b")));
  EXPECT_EQ(r.staged_members.size(), 2u);
  for (const auto& m : r.staged_members) {
    EXPECT_TRUE(polynomially_equivalent(m, fixture("fig2a")));
  }
}

TEST(EnumerateClass, BudgetIsReported) {
  auto r = enumerate_class(fixture("chds_b"), {.max_states = 10});
  EXPECT_FALSE(r.complete);
  EXPECT_LE(r.explored_states, 10u);
}

TEST(EnumerateClass, ShuffleKeepsResult) {
  auto plain = enumerate_class(fixture("fig1"));
  auto shuffled = enumerate_class(fixture("fig1"), {.shuffle_seed = 99});
  ASSERT_EQ(plain.staged_members.size(), shuffled.staged_members.size());
  for (std::size_t i = 0; i < plain.staged_members.size(); ++i) {
    EXPECT_EQ(canonical_form(plain.staged_members[i]), canonical_form(shuffled.staged_members[i]));
  }
}

TEST(Membership, StarIsSaturated) {
  auto t = fixture("star3");
  Distribution<double> p{{Monomial(std::vector<std::string>{"a"}), 0.2}, {Monomial(std::vector<std::string>{"b"}), 0.3}, {Monomial(std::vector<std::string>{"c"}), 0.5}};
  auto m = distribution_membership(t, p);
  ASSERT_TRUE(m.accepted) << m.reason;
  EXPECT_NEAR(m.params.at(Label("a")), 0.2, 1e-15);
  EXPECT_NEAR(m.params.at(Label("c")), 0.5, 1e-15);
}

TEST(Membership, ExactRationals) {
  auto t = fixture("star3");
  Distribution<Rational> p{{Monomial(std::vector<std::string>{"a"}), Rational(1, 6)},
                           {Monomial(std::vector<std::string>{"b"}), Rational(1, 3)},
                           {Monomial(std::vector<std::string>{"c"}), Rational(1, 2)}};
  auto m = distribution_membership(t, p);
  ASSERT_TRUE(m.accepted);
  EXPECT_EQ(m.params.at(Label("a")), Rational(1, 6));
}

TEST(Membership, Fig2aDistributionOnFig2b) {
  auto a = fixture("fig2a");
  auto b = fixture("fig2b");
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = random_distribution(a, seed);
    auto m = distribution_membership(b, p);
    ASSERT_TRUE(m.accepted) << m.reason;
    for (const auto& path : paths(b)) {
      double product = 1;
      for (auto e : path.edges) product *= m.params.at(b.edges()[e].label);
      EXPECT_NEAR(product, p.at(atomic_monomial(b, path)), 1e-10);
    }
  }
}

TEST(Membership, Fig1StageViolation) {
  auto t = fixture("fig1");
  auto p = random_distribution(t, 4);
  // Move mass within the v1 floret only, so that v1 and v2 disagree.
  Monomial hi(std::vector<std::string>{"lh_b", "sh_eh"});
  Monomial lo(std::vector<std::string>{"ll_b", "sh_eh"});
  double shift = p.at(hi) / 2;
  p[hi] -= shift;
  p[lo] += shift;
  auto m = distribution_membership(t, p);
  EXPECT_FALSE(m.accepted);
  EXPECT_NE(m.reason.find("lh_b"), std::string::npos);
}

TEST(Membership, InvalidInputs) {
  auto t = fixture("star3");
  EXPECT_THROW(distribution_membership(t, Distribution<double>{{Monomial(std::vector<std::string>{"a"}), 1.0}}),
               InvalidDistribution);
  Distribution<double> unnormalized{
      {Monomial(std::vector<std::string>{"a"}), 0.5}, {Monomial(std::vector<std::string>{"b"}), 0.5}, {Monomial(std::vector<std::string>{"c"}), 0.5}};
  EXPECT_THROW(distribution_membership(t, unnormalized), InvalidDistribution);
  Distribution<double> zero{{Monomial(std::vector<std::string>{"a"}), 0.5}, {Monomial(std::vector<std::string>{"b"}), 0.5}, {Monomial(std::vector<std::string>{"c"}), 0}};
  EXPECT_THROW(distribution_membership(t, zero), InvalidDistribution);
}

TEST(StatisticalEquivalence, ChdsResize) {
  auto a = fixture("chds_a");
  auto b = fixture("chds_b");
  auto v = statistically_equivalent(a, b);
  ASSERT_EQ(v.status, Verdict::kEquivalent) << v.reason;
  ASSERT_EQ(v.path.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<ResizeStep>(v.path[0]));
  EXPECT_TRUE(canonical_equal(replay(a, v.path), b));
  auto reverse = statistically_equivalent(b, a);
  ASSERT_EQ(reverse.status, Verdict::kEquivalent) << reverse.reason;
  EXPECT_TRUE(canonical_equal(replay(b, reverse.path), a));
}

TEST(StatisticalEquivalence, SelfIsEmptyPath) {
  auto t = fixture("chds_b");
  auto v = statistically_equivalent(t, t);
  EXPECT_EQ(v.status, Verdict::kEquivalent);
  EXPECT_TRUE(v.path.empty());
}

TEST(StatisticalEquivalence, Fig2Swap) {
  auto a = fixture("fig2a");
  auto b = fixture("fig2b");
  auto v = statistically_equivalent(a, b);
  ASSERT_EQ(v.status, Verdict::kEquivalent);
  EXPECT_TRUE(canonical_equal(replay(a, v.path), b));
}

TEST(StatisticalEquivalence, Fig1VersusUnstaged) {
  auto a = fixture("fig1");
  auto b = fixture("fig1_unstaged");
  auto v = statistically_equivalent(a, b);
  ASSERT_EQ(v.status, Verdict::kNotEquivalent);
  ASSERT_TRUE(v.probe);
  EXPECT_EQ(v.probe->source, "second");
  EXPECT_TRUE(check_certificate(a, b, *v.probe));
  auto other = *v.probe;
  other.seed += 1;
  EXPECT_FALSE(check_certificate(a, b, other));
}

TEST(StatisticalEquivalence, DifferentAtomCounts) {
  auto v = statistically_equivalent(fixture("star3"), fixture("fig2a"));
  EXPECT_EQ(v.status, Verdict::kNotEquivalent);
  EXPECT_FALSE(v.reason.empty());
}

TEST(StatisticalEquivalence, BudgetGivesUnknown) {
  auto a = fixture("chds_a");
  auto b = fixture("chds_b");
  auto members = enumerate_class(b).staged_members;
  auto c = canonical_equal(members[0], b) ? members[1] : members[0];
  auto v = statistically_equivalent(a, c, {.max_states = 1});
  EXPECT_EQ(v.status, Verdict::kUnknown);
}

TEST(StatisticalEquivalence, RejectsNonSquareFree) {
  StagedTree chain("r", {{"r", "a", Label("x")}, {"r", "b", Label("y")},
                         {"a", "c", Label("x")}, {"a", "d", Label("y")}});
  EXPECT_THROW(statistically_equivalent(chain, chain), InvalidTree);
}

TEST(Serialize, PathRoundTrip) {
  auto a = fixture("chds_a");
  auto v = statistically_equivalent(a, fixture("chds_b"));
  auto json = nlohmann::json::parse(to_json(v).dump());
  auto steps = steps_from_json(json);
  EXPECT_EQ(steps, v.path);
  EXPECT_TRUE(canonical_equal(replay(a, steps), fixture("chds_b")));

  auto f = fixture("fig1");
  for (const auto& t : find_twins(f)) {
    EXPECT_EQ(twin_from_json(nlohmann::json::parse(to_json(t).dump())), t);
  }
  InverseResizeStep inv{"v0", parse_factorization("sh_eh + sh_el + sl_eh + sl_el")};
  auto back = step_from_json(nlohmann::json::parse(to_json(Step(inv)).dump()));
  EXPECT_EQ(std::get<InverseResizeStep>(back), inv);
  EXPECT_THROW(step_from_json(nlohmann::json::parse(R"({"rotate":1})")), InputError);
}
