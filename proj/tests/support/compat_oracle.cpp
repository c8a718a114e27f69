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

#include "compat_oracle.hpp"

#include <map>
#include <vector>

namespace stagedtree::testing {

bool brute_force_compatible(const TermSet& terms) {
  if (terms.size() < 2 || terms.count(Term{})) return false;
  Term all;
  for (const auto& t : terms) all.insert(t.begin(), t.end());
  std::vector<std::string> symbols(all.begin(), all.end());
  for (unsigned long mask = 1; mask < (1ul << symbols.size()); ++mask) {
    Term root;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (mask & (1ul << i)) root.insert(symbols[i]);
    }
    if (root.size() < 2) continue;
    std::map<std::string, TermSet> groups;
    bool exact = true;
    for (const auto& t : terms) {
      std::vector<std::string> hit;
      for (const auto& s : t) {
        if (root.count(s)) hit.push_back(s);
      }
      if (hit.size() != 1) {
        exact = false;
        break;
      }
      Term rest = t;
      rest.erase(hit[0]);
      groups[hit[0]].insert(rest);
    }
    if (!exact || groups.size() != root.size()) continue;
    bool ok = true;
    for (const auto& [s, group] : groups) {
      if (group == TermSet{Term{}}) continue;
      if (!brute_force_compatible(group)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace stagedtree::testing
