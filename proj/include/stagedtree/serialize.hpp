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

#include <vector>

#include "json.hpp"

#include "stagedtree/equivalence.hpp"
#include "stagedtree/transform.hpp"

namespace stagedtree {

// Structured output of reports and transformation paths. Paths read back by
// steps_from_json() replay against the tree they were produced for.

nlohmann::ordered_json to_json(const Twin& twin);
nlohmann::ordered_json to_json(const ResizeSite& site);
nlohmann::ordered_json to_json(const Step& step);
nlohmann::ordered_json to_json(const std::vector<Step>& path);
nlohmann::ordered_json to_json(const ClassReport& report);
nlohmann::ordered_json to_json(const EquivVerdict& verdict);

/// Throws InputError on malformed descriptors.
Twin twin_from_json(const nlohmann::json& j);
ResizeSite site_from_json(const nlohmann::json& j);
Step step_from_json(const nlohmann::json& j);
/// Accepts a list of steps or an object with a "path" member (a verdict).
std::vector<Step> steps_from_json(const nlohmann::json& j);

}  // namespace stagedtree
