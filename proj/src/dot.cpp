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

#include "stagedtree/dot.hpp"

#include <array>
#include <functional>
#include <sstream>

namespace stagedtree {
namespace {

constexpr std::array<const char*, 10> kPalette = {
    "tomato", "skyblue", "palegreen", "gold", "plum",
    "orange", "turquoise", "pink", "khaki", "lightsalmon",
};

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const StagedTree& tree) {
  tree.require_event_tree();
  auto partition = stages(tree);
  std::vector<std::string> color(partition.blocks.size(), "white");
  std::size_t next = 0;
  std::ostringstream out;
  out << "digraph staged_tree {\n  rankdir=LR;\n  node [shape=circle, label=\"\"];\n";
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    if (partition.blocks[b].size() < 2) continue;
    color[b] = kPalette[next++ % kPalette.size()];
    out << "  // stage " << color[b] << ":";
    for (const auto& v : partition.blocks[b]) out << " " << v;
    out << "\n";
  }
  std::function<void(const VertexId&)> visit = [&](const VertexId& v) {
    if (tree.is_leaf(v)) {
      out << "  " << Quote(v) << " [shape=point];\n";
      return;
    }
    out << "  " << Quote(v) << " [style=filled, fillcolor=" << Quote(color[partition.block_of(v)])
        << ", xlabel=" << Quote(v) << "];\n";
    for (std::size_t e : tree.out_edges(v)) visit(tree.edges()[e].to);
  };
  visit(tree.root());
  std::function<void(const VertexId&)> edges = [&](const VertexId& v) {
    for (std::size_t e : tree.out_edges(v)) {
      const auto& edge = tree.edges()[e];
      out << "  " << Quote(edge.from) << " -> " << Quote(edge.to)
          << " [label=" << Quote(edge.label.str()) << "];\n";
      edges(edge.to);
    }
  };
  edges(tree.root());
  out << "}\n";
  return out.str();
}

}  // namespace stagedtree
