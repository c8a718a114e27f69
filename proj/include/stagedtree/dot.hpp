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

#include "stagedtree/staged_tree.hpp"

namespace stagedtree {

/// Graphviz rendering. Stages with two or more vertices receive palette
/// colors in stage-partition order; single-vertex stages are white and
/// leaves are drawn as plain points. Edges carry their labels.
std::string export_dot(const StagedTree& tree);

}  // namespace stagedtree
