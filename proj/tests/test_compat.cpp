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

#include <algorithm>

#include "compat_oracle.hpp"
#include "fixtures.hpp"
#include "stagedtree/compat.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"

using namespace stagedtree;
using stagedtree::testing::fixture;

namespace {

stagedtree::testing::TermSet Terms(const Poly& p) {
  stagedtree::testing::TermSet out;
  for (const auto& [m, c] : p.terms()) out.insert({m.symbols().begin(), m.symbols().end()});
  return out;
}

}  // namespace

TEST(Oracle, KnownAnswers) {
  EXPECT_TRUE(stagedtree::testing::brute_force_compatible(Terms(parse_polynomial("a + b"))));
  EXPECT_FALSE(
      stagedtree::testing::brute_force_compatible(Terms(parse_polynomial("a*b + b*c + a*c"))));
  EXPECT_FALSE(stagedtree::testing::brute_force_compatible(Terms(parse_polynomial("a*b"))));
  EXPECT_TRUE(stagedtree::testing::brute_force_compatible(
      Terms(parse_polynomial("a*c + a*d + b*c + b*d"))));
}

TEST(FindFactorizations, TwoStar) {
  auto s = find_factorizations(parse_polynomial("a + b"));
  ASSERT_EQ(s.results.size(), 1u);
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(to_string(s.results[0]), "a + b");
}

TEST(FindFactorizations, ProvenEmpty) {
  auto s = find_factorizations(parse_polynomial("a*b + b*c + c*a"));
  EXPECT_TRUE(s.results.empty());
  EXPECT_TRUE(s.complete);
}

TEST(FindFactorizations, Fig2ContainsBothBracketings) {
  auto s = find_factorizations(interpolating_polynomial(fixture("fig2a")));
  auto has = [&](const char* text) {
    auto f = canonicalize(parse_factorization(text));
    return std::find(s.results.begin(), s.results.end(), f) != s.results.end();
  };
  EXPECT_TRUE(has("t1 + t2*(t4 + t5) + t3*(t4*(t6 + t7 + t8) + t5)"));
  EXPECT_TRUE(has("t1 + t4*(t2 + t3*(t6 + t7 + t8)) + t5*(t2 + t3)"));
  for (const auto& f : s.results) {
    EXPECT_TRUE(poly_equal(expand(f), interpolating_polynomial(fixture("fig2a"))));
  }
  for (std::size_t i = 1; i < s.results.size(); ++i) {
    EXPECT_NE(canonical_form(tree_from_factorization(s.results[i - 1])),
              canonical_form(tree_from_factorization(s.results[i])));
  }
}

TEST(FindFactorizations, BudgetIsReported) {
  auto s = find_factorizations(parse_polynomial("a*c + a*d + b*c + b*d"), {.max_results = 1});
  EXPECT_EQ(s.results.size(), 1u);
  EXPECT_FALSE(s.complete);
  auto full = find_factorizations(parse_polynomial("a*c + a*d + b*c + b*d"));
  EXPECT_EQ(full.results.size(), 2u);
  EXPECT_TRUE(full.complete);
}

TEST(FindFactorizations, StagedFilter) {
  auto p = parse_polynomial("a*c + a*d + b*c + b*e");
  auto all = find_factorizations(p);
  auto staged = find_factorizations(p, {.require_staged = true});
  EXPECT_LE(staged.results.size(), all.results.size());
  for (const auto& f : staged.results) EXPECT_TRUE(is_valid(tree_from_factorization(f)));
}

TEST(IsTreeCompatible, Verdicts) {
  auto yes = is_tree_compatible(interpolating_polynomial(fixture("fig2a")));
  EXPECT_EQ(yes.status, Compatibility::kYes);
  ASSERT_TRUE(yes.witness);
  EXPECT_EQ(is_tree_compatible(parse_polynomial("a*b")).status, Compatibility::kNo);
  EXPECT_EQ(is_tree_compatible(parse_polynomial("a*b + b*c + c*a")).status, Compatibility::kNo);
}

TEST(TreeFromFactorization, Fig2bBracketing) {
  auto t = tree_from_factorization(
      parse_factorization("t1 + t4*(t2 + t3*(t6 + t7 + t8)) + t5*(t2 + t3)"));
  EXPECT_TRUE(canonical_equal(t, fixture("fig2b")));
  EXPECT_TRUE(is_valid(t));
}

TEST(TreeFromFactorization, FlatIsStar) {
  auto t = tree_from_factorization(parse_factorization("a + b + c"));
  EXPECT_TRUE(canonical_equal(t, fixture("star3")));
  EXPECT_EQ(t.root(), "v0");
}

TEST(TreeFromFactorization, RoundTripFixtures) {
  for (auto name : {"fig1", "fig2a", "fig2b", "chds_a", "chds_b", "star3"}) {
    auto t = fixture(name);
    EXPECT_TRUE(canonical_equal(tree_from_factorization(nested_factorization(t)), t)) << name;
  }
}

TEST(TreeFromFactorization, NodeTooSmall) {
  Factorization f;
  f.terms.push_back({Label("a"), {}});
  EXPECT_THROW(tree_from_factorization(f), NodeTooSmall);
  EXPECT_THROW(tree_from_factorization(parse_factorization("a*(b) + c")), NodeTooSmall);
}
