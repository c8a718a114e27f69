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
#include <random>

#include "fixtures.hpp"
#include "random_tree.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/staged_tree.hpp"
#include "stagedtree/tree_io.hpp"

using namespace stagedtree;
using stagedtree::testing::fixture;

namespace {

bool HasKind(const std::vector<Violation>& vs, ViolationKind kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

StagedTree Star(std::initializer_list<const char*> labels) {
  std::vector<Edge> edges;
  int i = 0;
  for (const char* l : labels) edges.push_back({"r", "l" + std::to_string(i++), Label(l)});
  return StagedTree("r", edges);
}

}  // namespace

TEST(Label, ValidSymbols) {
  EXPECT_TRUE(is_valid_symbol("a"));
  EXPECT_TRUE(is_valid_symbol("_x9"));
  EXPECT_FALSE(is_valid_symbol("9x"));
  EXPECT_FALSE(is_valid_symbol(""));
  EXPECT_FALSE(is_valid_symbol("a-b"));
  EXPECT_THROW(Label("a b"), InputError);
}

TEST(Label, CompositeIsSortedSet) {
  Label l{"b", "a"};
  EXPECT_TRUE(l.is_composite());
  EXPECT_EQ(l.str(), "a*b");
  EXPECT_EQ(l, (Label{"a", "b"}));
  EXPECT_THROW((Label{"a", "a"}), SymbolRepeat);
  EXPECT_EQ(label_product(Label("a"), Label{"b", "c"}).str(), "a*b*c");
  EXPECT_THROW(label_product(Label("a"), Label{"a", "c"}), SymbolRepeat);
}

TEST(Validate, StarIsValid) { EXPECT_TRUE(validate(Star({"a", "b", "c"})).empty()); }

TEST(Validate, FixturesAreValid) {
  for (auto name : {"fig1", "fig1_unstaged", "fig2a", "fig2b", "fig3a_section3",
                    "fig3b_section3", "chds_a", "chds_b", "star3"}) {
    auto vs = validate(fixture(name), {.require_square_free = true});
    EXPECT_TRUE(vs.empty()) << name << ": " << (vs.empty() ? "" : vs[0].str());
  }
}

TEST(Validate, UnaryVertex) {
  StagedTree t("r", {{"r", "a", Label("x")}, {"r", "b", Label("y")}, {"a", "c", Label("z")}});
  EXPECT_TRUE(HasKind(validate(t), ViolationKind::kOutDegree));
  EXPECT_FALSE(t.is_event_tree());
  EXPECT_THROW(t.require_event_tree(), InvalidTree);
}

TEST(Validate, StructuralProblems) {
  EXPECT_TRUE(HasKind(validate(StagedTree("r", {})), ViolationKind::kNoEdges));
  StagedTree two_parents("r", {{"r", "a", Label("x")}, {"r", "b", Label("y")},
                               {"a", "c", Label("p")}, {"a", "d", Label("q")},
                               {"b", "c", Label("s")}, {"b", "e", Label("u")}});
  EXPECT_TRUE(HasKind(validate(two_parents), ViolationKind::kMultipleParents));
  StagedTree dup("r", {{"r", "a", Label("x")}, {"r", "b", Label("x")}});
  EXPECT_TRUE(HasKind(validate(dup), ViolationKind::kDuplicateFloretLabel));
}

TEST(Validate, PartialStageOverlap) {
  StagedTree t("r", {{"r", "a", Label("x")}, {"r", "b", Label("y")},
                     {"a", "c", Label("p")}, {"a", "d", Label("q")},
                     {"b", "e", Label("p")}, {"b", "f", Label("s")}});
  EXPECT_TRUE(HasKind(validate(t), ViolationKind::kPartialStageOverlap));
}

TEST(Validate, DeclaredStagesMustMatch) {
  auto t = fixture("fig1");
  StagedTree wrong(t.root(), t.edges(), t.atoms(),
                   std::vector<std::vector<VertexId>>{{"v0"}, {"v1", "v3"}, {"v2", "v4"}});
  EXPECT_TRUE(HasKind(validate(wrong), ViolationKind::kDeclaredStages));
}

TEST(Validate, AtomMapMustNameLeaves) {
  auto t = fixture("star3");
  StagedTree bad(t.root(), t.edges(), {{"x", "v0"}});
  EXPECT_TRUE(HasKind(validate(bad), ViolationKind::kAtomMap));
}

TEST(Stages, Fig1Blocks) {
  auto p = stages(fixture("fig1"));
  auto blocks = p.blocks;
  std::sort(blocks.begin(), blocks.end());
  std::vector<std::vector<VertexId>> expected{{"v0"}, {"v1", "v2"}, {"v3", "v4"}};
  EXPECT_EQ(blocks, expected);
  EXPECT_TRUE(p.is_singleton("v0"));
  EXPECT_FALSE(p.is_singleton("v3"));
}

TEST(Stages, StarHasOneBlock) {
  auto p = stages(Star({"a", "b", "c"}));
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0], std::vector<VertexId>{"r"});
}

TEST(Stages, ChdsB) {
  auto t = fixture("chds_b");
  auto p = stages(t);
  auto block = [&](const VertexId& v) {
    return p.blocks[p.block_of(v)];
  };
  EXPECT_EQ(block("v1"), (std::vector<VertexId>{"v1", "v2", "v3"}));
  EXPECT_EQ(block("w6"), (std::vector<VertexId>{"w10", "w6", "w7", "w8"}));
  EXPECT_EQ(block("v4"), (std::vector<VertexId>{"v4", "v5", "w11", "w9"}));
  EXPECT_TRUE(p.is_singleton(t.root()));
  EXPECT_EQ(p.blocks.size(), 4u);
}

TEST(SquareFree, Examples) {
  EXPECT_TRUE(is_square_free(fixture("fig1")));
  EXPECT_TRUE(is_square_free(fixture("chds_b")));
  StagedTree chain("r", {{"r", "a", Label("x")}, {"r", "b", Label("y")},
                         {"a", "c", Label("x")}, {"a", "d", Label("y")}});
  EXPECT_FALSE(is_square_free(chain));
  EXPECT_TRUE(HasKind(validate(chain, {.require_square_free = true}),
                      ViolationKind::kNotSquareFree));
  EXPECT_TRUE(validate(chain).empty());
}

TEST(Paths, Counts) {
  EXPECT_EQ(paths(fixture("fig2a")).size(), 7u);
  EXPECT_EQ(paths(Star({"a", "b", "c", "d"})).size(), 4u);
  EXPECT_EQ(paths(fixture("chds_b")).size(), 24u);
  EXPECT_EQ(paths(fixture("chds_a")).size(), 24u);
}

TEST(Paths, VertexEvent) {
  auto t = fixture("fig2a");
  auto through = vertex_event(t, *t.child_by_label(*t.child_by_label(t.root(), Label("t3")),
                                                   Label("t4")));
  EXPECT_EQ(through.size(), 3u);
  EXPECT_EQ(vertex_event(t, t.root()).size(), 7u);
  EXPECT_THROW(vertex_event(t, "nowhere"), UnknownVertex);
}

TEST(Canonical, IgnoresIdsAndOrder) {
  StagedTree a("r", {{"r", "x", Label("a")}, {"r", "y", Label("b")},
                     {"y", "z", Label("c")}, {"y", "w", Label("d")}});
  StagedTree b("q", {{"s", "3", Label("c")}, {"s", "4", Label("e")}, {"q", "s", Label("b")},
                     {"q", "1", Label("a")}});
  StagedTree c("q", {{"q", "s", Label("b")}, {"q", "1", Label("a")}, {"s", "3", Label("c")},
                     {"s", "4", Label("d")}});
  EXPECT_FALSE(canonical_equal(a, b));
  EXPECT_TRUE(canonical_equal(a, c));
  EXPECT_EQ(canonical_form(a), "a + b*(c + d)");
  auto m = match_vertices(a, c);
  EXPECT_EQ(m.at("r"), "q");
  EXPECT_EQ(m.at("y"), "s");
  EXPECT_EQ(m.at("w"), "4");
  EXPECT_THROW(match_vertices(a, b), InvalidTree);
}

TEST(TreeIo, RoundTripFixtures) {
  for (auto name : {"fig1", "fig2a", "fig2b", "chds_a", "chds_b", "star3"}) {
    auto t = fixture(name);
    auto back = parse_tree(write_tree(t));
    EXPECT_TRUE(canonical_equal(t, back)) << name;
    EXPECT_EQ(back.atoms(), t.atoms()) << name;
    EXPECT_EQ(write_tree(back), write_tree(t)) << name;
  }
}

TEST(TreeIo, RoundTripRandom) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto t = stagedtree::testing::random_tree(rng);
    EXPECT_TRUE(canonical_equal(t, parse_tree(write_tree(t))));
  }
}

TEST(TreeIo, CompositeLabels) {
  auto t = parse_tree(R"({"root":"r","edges":[
    {"from":"r","to":"a","label":["y","x"]},
    {"from":"r","to":"b","label":"z"}]})");
  EXPECT_EQ(t.edges()[0].label, (Label{"x", "y"}));
  EXPECT_EQ(canonical_form(parse_tree(write_tree(t))), canonical_form(t));
}

TEST(TreeIo, SyntaxErrorHasPosition) {
  try {
    parse_tree("{\n  \"root\": \"r\",\n  \"edges\": [ oops ]\n}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(TreeIo, SchemaErrors) {
  EXPECT_THROW(parse_tree(R"({"edges":[]})"), InputError);
  EXPECT_THROW(parse_tree(R"({"root":"r","edges":[],"colour":1})"), InputError);
  EXPECT_THROW(parse_tree(R"({"root":"r","edges":[{"from":"r","to":"a","label":"1x"}]})"),
               InputError);
  EXPECT_THROW(read_tree_file("/nonexistent/file.tree"), InputError);
}
