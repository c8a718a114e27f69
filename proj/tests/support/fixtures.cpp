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

#include "fixtures.hpp"

#include "stagedtree/tree_io.hpp"

namespace stagedtree::testing {

std::string fixture_path(const std::string& name) {
  return std::string(STAGEDTREE_FIXTURE_DIR) + "/" + name + ".tree";
}

StagedTree fixture(const std::string& name) { return read_tree_file(fixture_path(name)); }

}  // namespace stagedtree::testing
