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

#include <string>
#include <string_view>

#include "json.hpp"

#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

// Tree file format (JSON):
//
//   {
//     "root": "v0",
//     "edges": [{"from": "v0", "to": "v1", "label": "a"},
//               {"from": "v0", "to": "v2", "label": ["b", "c"]}, ...],
//     "atoms": {"name": "leaf id", ...},        optional
//     "stages": [["v1", "v2"], ...],             optional
//     "comment": "free text"                     optional, ignored
//   }
//
// A label is a symbol or a list of symbols (a composite label).

/// Syntax errors raise ParseError with line and column; a document that is
/// valid JSON but not a tree raises InputError naming the offending member.
StagedTree parse_tree(std::string_view text);
StagedTree tree_from_json(const nlohmann::json& doc);

/// Reads a file, or standard input for "-".
StagedTree read_tree_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// Deterministic output: edges in depth-first label order, one per line.
std::string write_tree(const StagedTree& tree);
nlohmann::ordered_json tree_to_json(const StagedTree& tree);

nlohmann::json label_to_json(const Label& label);
Label label_from_json(const nlohmann::json& j);

}  // namespace stagedtree
