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

#include "stagedtree/serialize.hpp"

#include <algorithm>

#include "stagedtree/errors.hpp"
#include "stagedtree/expression.hpp"
#include "stagedtree/tree_io.hpp"

namespace stagedtree {
namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

std::vector<VertexId> Ids(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected a list of vertex ids");
  std::vector<VertexId> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InputError(std::string(what) + ": vertex ids are strings");
    out.push_back(v.get<std::string>());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const json& At(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing \"") + key + "\" in " + j.dump());
  }
  return j.at(key);
}

}  // namespace

ojson to_json(const Twin& twin) {
  ojson out;
  out["root"] = twin.root;
  out["members"] = twin.members;
  out["stage"] = ojson::array();
  for (const auto& l : twin.stage) out["stage"].push_back(ojson(label_to_json(l)));
  return out;
}

ojson to_json(const ResizeSite& site) {
  ojson out;
  out["condition"] = to_string(site.condition);
  out["subgraphs"] = ojson::array();
  for (const auto& g : site.subgraphs) {
    out["subgraphs"].push_back(ojson{{"root", g.root}, {"internal", g.internal}});
  }
  return out;
}

ojson to_json(const Step& step) {
  if (const auto* s = std::get_if<SwapStep>(&step)) return ojson{{"swap", to_json(s->twin)}};
  if (const auto* r = std::get_if<ResizeStep>(&step)) return ojson{{"resize", to_json(r->site)}};
  const auto& inv = std::get<InverseResizeStep>(step);
  ojson body;
  body["center"] = inv.center;
  body["factorization"] = to_string(inv.factorization);
  return ojson{{"expand_floret", std::move(body)}};
}

ojson to_json(const std::vector<Step>& path) {
  ojson out = ojson::array();
  for (const auto& s : path) out.push_back(to_json(s));
  return out;
}

ojson to_json(const ClassReport& report) {
  ojson out;
  out["staged_count"] = report.staged_members.size();
  out["naive_count"] = report.naive_count;
  out["explored_states"] = report.explored_states;
  out["valid_single_swaps"] = report.valid_single_swaps;
  out["complete"] = report.complete;
  out["staged_members"] = ojson::array();
  for (const auto& t : report.staged_members) out["staged_members"].push_back(canonical_form(t));
  return out;
}

ojson to_json(const EquivVerdict& verdict) {
  ojson out;
  out["status"] = to_string(verdict.status);
  out["path"] = to_json(verdict.path);
  if (!verdict.reason.empty()) out["reason"] = verdict.reason;
  if (verdict.probe) {
    ojson probe;
    probe["source"] = verdict.probe->source;
    probe["seed"] = verdict.probe->seed;
    probe["reason"] = verdict.probe->reason;
    probe["distribution"] = ojson::object();
    for (const auto& [m, p] : verdict.probe->distribution) probe["distribution"][m.str()] = p;
    out["probe"] = std::move(probe);
  }
  out["explored_states"] = verdict.explored_states;
  return out;
}

Twin twin_from_json(const json& j) {
  Twin t;
  const auto& root = At(j, "root");
  if (!root.is_string()) throw InputError("twin root must be a vertex id");
  t.root = root.get<std::string>();
  t.members = Ids(At(j, "members"), "members");
  const auto& stage = At(j, "stage");
  if (!stage.is_array()) throw InputError("twin stage must be a list of labels");
  for (const auto& l : stage) t.stage.push_back(label_from_json(l));
  std::sort(t.stage.begin(), t.stage.end(),
            [](const Label& a, const Label& b) { return a.str() < b.str(); });
  return t;
}

ResizeSite site_from_json(const json& j) {
  ResizeSite site;
  const auto& cond = At(j, "condition");
  if (cond == "saturated") {
    site.condition = ResizeCondition::kSaturated;
  } else if (cond == "equivalent") {
    site.condition = ResizeCondition::kEquivalent;
  } else {
    throw InputError("unknown resize condition " + cond.dump());
  }
  const auto& list = At(j, "subgraphs");
  if (!list.is_array()) throw InputError("subgraphs must be a list");
  for (const auto& g : list) {
    const auto& root = At(g, "root");
    if (!root.is_string()) throw InputError("subgraph root must be a vertex id");
    site.subgraphs.push_back({root.get<std::string>(), Ids(At(g, "internal"), "internal")});
  }
  return site;
}

Step step_from_json(const json& j) {
  if (j.is_object() && j.size() == 1) {
    if (j.contains("swap")) return SwapStep{twin_from_json(j.at("swap"))};
    if (j.contains("resize")) return ResizeStep{site_from_json(j.at("resize"))};
    if (j.contains("expand_floret")) {
      const auto& body = j.at("expand_floret");
      const auto& center = At(body, "center");
      const auto& text = At(body, "factorization");
      if (!center.is_string() || !text.is_string()) {
        throw InputError("expand_floret needs a center id and a factorization string");
      }
      return InverseResizeStep{center.get<std::string>(),
                               parse_factorization(text.get<std::string>())};
    }
  }
  throw InputError("unknown step " + j.dump());
}

std::vector<Step> steps_from_json(const json& j) {
  const json& list = j.is_object() ? At(j, "path") : j;
  if (!list.is_array()) throw InputError("a path is a list of steps");
  std::vector<Step> out;
  for (const auto& s : list) out.push_back(step_from_json(s));
  return out;
}

}  // namespace stagedtree
