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

#include "stagedtree/tree_io.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include "stagedtree/errors.hpp"

namespace stagedtree {
namespace {

using json = nlohmann::json;

// Line and column (both 1-based) of the byte preceding `offset`.
std::pair<std::size_t, std::size_t> Position(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& Member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string String(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

}  // namespace

json label_to_json(const Label& label) {
  if (label.is_primitive()) return label.symbols().front();
  return label.symbols();
}

Label label_from_json(const json& j) {
  if (j.is_string()) return Label(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::string> symbols;
    for (const auto& s : j) {
      if (!s.is_string()) throw InputError("label symbols must be strings");
      symbols.push_back(s.get<std::string>());
    }
    return Label(std::move(symbols));
  }
  throw InputError("a label is a symbol or a list of symbols");
}

StagedTree tree_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("tree document must be an object");
  static const std::set<std::string> known{"root", "edges", "atoms", "stages", "comment"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw InputError("unknown member \"" + key + "\"");
  }
  VertexId root = String(Member(doc, "root", "tree"), "root");
  const json& list = Member(doc, "edges", "tree");
  if (!list.is_array()) throw InputError("edges: expected a list");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = list[i];
    if (!e.is_object()) throw InputError(where + ": expected an object");
    try {
      edges.push_back({String(Member(e, "from", where), where + ".from"),
                       String(Member(e, "to", where), where + ".to"),
                       label_from_json(Member(e, "label", where))});
    } catch (const Error& err) {
      if (std::string_view(err.what()).starts_with(where)) throw;
      throw InputError(where + ".label: " + err.what());
    }
  }
  std::map<std::string, VertexId> atoms;
  if (auto it = doc.find("atoms"); it != doc.end()) {
    if (!it->is_object()) throw InputError("atoms: expected an object");
    for (const auto& [name, leaf] : it->items()) atoms[name] = String(leaf, "atoms." + name);
  }
  std::optional<std::vector<std::vector<VertexId>>> declared;
  if (auto it = doc.find("stages"); it != doc.end()) {
    if (!it->is_array()) throw InputError("stages: expected a list of lists");
    declared.emplace();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& block = (*it)[i];
      std::string where = "stages[" + std::to_string(i) + "]";
      if (!block.is_array()) throw InputError(where + ": expected a list");
      std::vector<VertexId> ids;
      for (const auto& v : block) ids.push_back(String(v, where));
      declared->push_back(std::move(ids));
    }
  }
  return StagedTree(std::move(root), std::move(edges), std::move(atoms), std::move(declared));
}

StagedTree parse_tree(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = Position(text, e.byte);
    std::string what = e.what();
    // Drop the library's own prefix, keep the explanation.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(what, line, column);
  }
  return tree_from_json(doc);
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StagedTree read_tree_file(const std::string& path) {
  auto text = read_text_file(path);
  try {
    return parse_tree(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

nlohmann::ordered_json tree_to_json(const StagedTree& tree) {
  nlohmann::ordered_json out;
  out["root"] = tree.root();
  out["edges"] = nlohmann::ordered_json::array();
  std::function<void(const VertexId&)> visit = [&](const VertexId& v) {
    for (std::size_t e : tree.out_edges(v)) {
      const auto& edge = tree.edges()[e];
      nlohmann::ordered_json item;
      item["from"] = edge.from;
      item["to"] = edge.to;
      item["label"] = label_to_json(edge.label);
      out["edges"].push_back(std::move(item));
      visit(edge.to);
    }
  };
  if (tree.is_event_tree()) {
    visit(tree.root());
  } else {
    for (const auto& edge : tree.edges()) {
      out["edges"].push_back({{"from", edge.from}, {"to", edge.to}, {"label", label_to_json(edge.label)}});
    }
  }
  if (!tree.atoms().empty()) {
    out["atoms"] = nlohmann::ordered_json::object();
    for (const auto& [name, leaf] : tree.atoms()) out["atoms"][name] = leaf;
  }
  if (tree.declared_stages()) out["stages"] = *tree.declared_stages();
  return out;
}

std::string write_tree(const StagedTree& tree) {
  auto doc = tree_to_json(tree);
  std::string out = "{\n  \"root\": " + doc["root"].dump() + ",\n  \"edges\": [";
  const auto& edges = doc["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += (i ? ",\n    " : "\n    ") + edges[i].dump();
  }
  out += edges.empty() ? "]" : "\n  ]";
  if (doc.contains("atoms")) out += ",\n  \"atoms\": " + doc["atoms"].dump();
  if (doc.contains("stages")) out += ",\n  \"stages\": " + doc["stages"].dump();
  return out + "\n}\n";
}

}  // namespace stagedtree
