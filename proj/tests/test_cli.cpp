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

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "stagedtree/cli.hpp"
#include "stagedtree/tree_io.hpp"

using namespace stagedtree;
using stagedtree::testing::fixture;
using stagedtree::testing::fixture_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("stagedtree_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, Validate) {
  auto r = Invoke({"validate", fixture_path("fig1")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("valid\n", 0), 0u);
  EXPECT_NE(r.out.find("stage {v1,v2}: (lh_b,ll_b)"), std::string::npos);
  auto bad = Temp("unary.tree", R"({"root":"r","edges":[{"from":"r","to":"a","label":"x"}]})");
  EXPECT_EQ(Invoke({"validate", bad}).code, 1);
}

TEST(Cli, Poly) {
  auto r = Invoke({"poly", fixture_path("fig2a")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nested: t1 + t2*(t4 + t5) + t3*(t4*(t6 + t7 + t8) + t5)"),
            std::string::npos);
}

TEST(Cli, CompatStar) {
  auto r = Invoke({"compat", "a + b"});
  EXPECT_EQ(r.out, "yes: a + b\n");
  auto tree = Invoke({"compat", "a + b", "--format", "tree"});
  EXPECT_EQ(tree.code, 0);
  EXPECT_EQ(parse_tree(tree.out).floret(parse_tree(tree.out).root()).size(), 2u);
  EXPECT_EQ(Invoke({"compat", "a*b + b*c + c*a"}).out, "no\n");
  EXPECT_EQ(Invoke({"compat", "a*b + b*c + c*a", "--format", "tree"}).code, 1);
}

TEST(Cli, FactorizeCompatDotChain) {
  auto poly = Invoke({"poly", fixture_path("fig2a")});
  auto expanded = poly.out.substr(poly.out.find("expanded: ") + 10);
  expanded = expanded.substr(0, expanded.find('\n'));
  auto listed = Invoke({"factorize", expanded});
  ASSERT_EQ(listed.code, 0);
  std::istringstream lines(listed.out);
  std::string first;
  std::getline(lines, first);
  auto compat = Invoke({"compat", first, "--format", "tree"});
  ASSERT_EQ(compat.code, 0);
  auto dot = Invoke({"export-dot", Temp("chain.tree", compat.out)});
  EXPECT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
}

TEST(Cli, TwinsSwapChain) {
  auto twins = Invoke({"twins", fixture_path("fig2a")});
  EXPECT_EQ(twins.out.rfind("0: ", 0), 0u);
  auto swapped = Invoke({"swap", fixture_path("fig2a"), "--twin", "0"});
  ASSERT_EQ(swapped.code, 0);
  EXPECT_TRUE(canonical_equal(parse_tree(swapped.out), fixture("fig2b")));
  EXPECT_EQ(Invoke({"swap", fixture_path("fig2a"), "--twin", "5"}).code, 2);
  EXPECT_EQ(Invoke({"swap", fixture_path("fig2a")}).code, 2);
}

TEST(Cli, NotStagedIsDomainError) {
  auto r = Invoke({"swap", fixture_path("chds_b"), "--twin", "1"});
  auto listing = Invoke({"twins", fixture_path("chds_b")});
  ASSERT_NE(listing.out.find("1: v0 {v1,v2}"), std::string::npos) << listing.out;
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not a staged tree"), std::string::npos);
  EXPECT_EQ(Invoke({"swap", fixture_path("chds_b"), "--twin", "1", "--naive"}).code, 0);
}

TEST(Cli, SitesResize) {
  auto sites = Invoke({"sites", fixture_path("chds_a")});
  EXPECT_EQ(sites.out, "0: saturated v0{i1,i2,v0,v6}\n");
  auto r = Invoke({"resize", fixture_path("chds_a"), "--site", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(canonical_equal(parse_tree(r.out), fixture("chds_b")));
}

TEST(Cli, ExpandFloret) {
  auto r = Invoke({"expand-floret", fixture_path("star3"), "v0", "a + b + c"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Invoke({"expand-floret", fixture_path("star3"), "v0", "a + b"}).code, 1);
}

TEST(Cli, Enumerate) {
  auto r = Invoke({"enumerate", fixture_path("chds_b")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("staged_members: 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("naive_count: 32\n"), std::string::npos);
  auto json = nlohmann::json::parse(Invoke({"enumerate", fixture_path("fig2a"), "--format", "json"}).out);
  EXPECT_EQ(json["staged_members"].size(), 2u);
}

TEST(Cli, EquivAndReplay) {
  auto r = Invoke({"equiv", fixture_path("chds_a"), fixture_path("chds_b"), "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto path = Temp("path.json", r.out);
  auto replayed = Invoke({"replay", fixture_path("chds_a"), path});
  ASSERT_EQ(replayed.code, 0) << replayed.err;
  EXPECT_TRUE(canonical_equal(parse_tree(replayed.out), fixture("chds_b")));
  auto no = Invoke({"equiv", fixture_path("fig1"), fixture_path("fig1_unstaged")});
  EXPECT_NE(no.out.find("verdict: not_equivalent"), std::string::npos);
}

TEST(Cli, ProbSeeds) {
  auto a = Invoke({"prob", fixture_path("fig1"), "--seed", "5"});
  auto b = Invoke({"prob", fixture_path("fig1"), "--seed", "5"});
  auto c = Invoke({"prob", fixture_path("fig1"), "--seed", "6"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(Invoke({"prob", fixture_path("fig1")}).out, Invoke({"prob", fixture_path("fig1")}).out);
}

TEST(Cli, ProbMembership) {
  auto ok = Temp("ok.json", R"({"a": "1/6", "b": "1/3", "c": "1/2"})");
  auto r = Invoke({"prob", fixture_path("star3"), ok});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("param a 1/6"), std::string::npos);
  auto floats = Temp("floats.json", R"({"a": 0.25, "b": 0.25, "c": 0.5})");
  EXPECT_EQ(Invoke({"prob", fixture_path("star3"), floats}).code, 0);

  std::ostringstream doc;
  doc << std::setprecision(17) << "{";
  const char* atoms[] = {"hhh", "hhl", "hlh", "hll", "lhh", "lhl", "llh", "lll"};
  for (int i = 0; i < 8; ++i) doc << (i ? "," : "") << '"' << atoms[i] << "\": " << (i + 1) / 36.0;
  doc << "}";
  auto rejected = Invoke({"prob", fixture_path("fig1"), Temp("reject.json", doc.str())});
  EXPECT_EQ(rejected.code, 1);
  EXPECT_EQ(rejected.out.rfind("rejected: ", 0), 0u);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(Invoke({}).code, 2);
  EXPECT_EQ(Invoke({"frobnicate", "x"}).code, 2);
  EXPECT_EQ(Invoke({"poly", fixture_path("fig1"), "--format", "dot"}).code, 2);
  auto broken = Temp("broken.tree", "{\n  \"root\": \"r\",\n  oops\n}");
  auto r = Invoke({"validate", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3:"), std::string::npos);
  auto p = Invoke({"compat", "a + + b"});
  EXPECT_EQ(p.code, 2);
  EXPECT_EQ(Invoke({"validate", "/no/such/file"}).code, 2);
}

TEST(Cli, Help) {
  auto r = Invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("enumerate"), std::string::npos);
}
