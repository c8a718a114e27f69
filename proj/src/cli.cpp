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

#include "stagedtree/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "stagedtree/compat.hpp"
#include "stagedtree/dot.hpp"
#include "stagedtree/equivalence.hpp"
#include "stagedtree/errors.hpp"
#include "stagedtree/evaluate.hpp"
#include "stagedtree/expression.hpp"
#include "stagedtree/polynomial.hpp"
#include "stagedtree/serialize.hpp"
#include "stagedtree/transform.hpp"
#include "stagedtree/tree_io.hpp"

namespace stagedtree {
namespace {

class UsageError : public InputError {
 public:
  using InputError::InputError;
};

struct Options {
  std::optional<std::string> format;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> twin;
  std::optional<std::size_t> site;
  bool naive = false;
  bool staged_only = false;
  bool square_free = false;
  std::vector<std::string> inputs;
};

std::string Format(const Options& opt, const std::string& fallback,
                   std::initializer_list<const char*> allowed) {
  std::string f = opt.format.value_or(fallback);
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("--format " + f + " is not available for this command");
}

void EmitTree(const StagedTree& tree, const Options& opt, std::ostream& out) {
  auto f = Format(opt, "tree", {"tree", "text", "dot"});
  if (f == "tree") {
    out << write_tree(tree);
  } else if (f == "dot") {
    out << export_dot(tree);
  } else {
    out << canonical_form(tree) << "\n";
  }
}

Poly ParseBudgetedPoly(const std::string& text) { return parse_polynomial(text); }

CompatSearchConfig CompatConfig(const Options& opt) {
  CompatSearchConfig cfg;
  if (opt.budget) cfg.max_results = *opt.budget;
  cfg.require_staged = opt.staged_only;
  return cfg;
}

int Validate(const Options& opt, std::ostream& out) {
  auto tree = read_tree_file(opt.inputs[0]);
  auto violations = validate(tree, {.require_square_free = opt.square_free});
  if (!violations.empty()) {
    for (const auto& v : violations) out << "violation: " << v.str() << "\n";
    return 1;
  }
  out << "valid\n";
  auto partition = stages(tree);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    out << "stage {";
    for (std::size_t i = 0; i < partition.blocks[b].size(); ++i) {
      out << (i ? "," : "") << partition.blocks[b][i];
    }
    out << "}: (";
    for (std::size_t i = 0; i < partition.florets[b].size(); ++i) {
      out << (i ? "," : "") << partition.florets[b][i].str();
    }
    out << ")\n";
  }
  out << "square-free: " << (is_square_free(tree) ? "yes" : "no") << "\n";
  return 0;
}

int PolyCmd(const Options& opt, std::ostream& out) {
  Format(opt, "text", {"text"});
  auto tree = read_tree_file(opt.inputs[0]);
  tree.require_event_tree();
  auto p = interpolating_polynomial(tree);
  out << "nested: " << to_string(nested_factorization(tree)) << "\n";
  out << "expanded: " << to_string(p) << "\n";
  out << "terms: " << p.size() << "\n";
  return 0;
}

int Factorize(const Options& opt, std::ostream& out, std::ostream& err) {
  Format(opt, "text", {"text"});
  auto search = find_factorizations(ParseBudgetedPoly(opt.inputs[0]), CompatConfig(opt));
  for (const auto& f : search.results) out << to_string(f) << "\n";
  if (search.results.empty() && search.complete) out << "none\n";
  if (!search.complete) err << "search incomplete: budget reached\n";
  return 0;
}

int Compat(const Options& opt, std::ostream& out, std::ostream& err) {
  auto f = Format(opt, "text", {"text", "tree", "dot"});
  auto verdict = is_tree_compatible(ParseBudgetedPoly(opt.inputs[0]), CompatConfig(opt));
  if (f == "text") {
    switch (verdict.status) {
      case Compatibility::kYes: out << "yes: " << to_string(*verdict.witness) << "\n"; break;
      case Compatibility::kNo: out << "no\n"; break;
      case Compatibility::kUnknown: out << "unknown: budget reached\n"; break;
    }
    return 0;
  }
  if (!verdict.witness) {
    err << "no tree: the polynomial is "
        << (verdict.status == Compatibility::kNo ? "not tree compatible" : "undecided") << "\n";
    return 1;
  }
  EmitTree(tree_from_factorization(*verdict.witness), opt, out);
  return 0;
}

std::size_t Index(const std::optional<std::size_t>& index, std::size_t size, const char* flag) {
  if (!index) throw UsageError(std::string("missing ") + flag);
  if (*index >= size) {
    throw UsageError(std::string(flag) + " " + std::to_string(*index) + " is out of range (" +
                     std::to_string(size) + " available)");
  }
  return *index;
}

int Twins(const Options& opt, std::ostream& out) {
  auto f = Format(opt, "text", {"text", "json"});
  auto twins = find_twins(read_tree_file(opt.inputs[0]));
  if (f == "json") {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& t : twins) list.push_back(to_json(t));
    out << list.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < twins.size(); ++i) out << i << ": " << twins[i].str() << "\n";
  return 0;
}

int Swap(const Options& opt, std::ostream& out) {
  auto tree = read_tree_file(opt.inputs[0]);
  auto twins = find_twins(tree);
  const auto& twin = twins[Index(opt.twin, twins.size(), "--twin")];
  EmitTree(opt.naive ? apply_naive_swap(tree, twin) : apply_swap(tree, twin), opt, out);
  return 0;
}

int Sites(const Options& opt, std::ostream& out) {
  auto f = Format(opt, "text", {"text", "json"});
  auto sites = find_resize_sites(read_tree_file(opt.inputs[0]));
  if (f == "json") {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& s : sites) list.push_back(to_json(s));
    out << list.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < sites.size(); ++i) out << i << ": " << sites[i].str() << "\n";
  return 0;
}

int Resize(const Options& opt, std::ostream& out) {
  auto tree = read_tree_file(opt.inputs[0]);
  auto sites = find_resize_sites(tree);
  EmitTree(apply_resize(tree, sites[Index(opt.site, sites.size(), "--site")]), opt, out);
  return 0;
}

int ExpandFloret(const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 3) throw UsageError("expand-floret needs FILE VERTEX FACTORIZATION");
  auto tree = read_tree_file(opt.inputs[0]);
  EmitTree(apply_inverse_resize(tree, opt.inputs[1], parse_factorization(opt.inputs[2])), opt, out);
  return 0;
}

int Enumerate(const Options& opt, std::ostream& out) {
  auto f = Format(opt, "text", {"text", "json"});
  ClassConfig cfg;
  if (opt.budget) cfg.max_states = *opt.budget;
  cfg.shuffle_seed = opt.seed;
  auto report = enumerate_class(read_tree_file(opt.inputs[0]), cfg);
  if (f == "json") {
    out << to_json(report).dump(2) << "\n";
    return 0;
  }
  out << "staged_members: " << report.staged_members.size() << "\n"
      << "naive_count: " << report.naive_count << "\n"
      << "explored_states: " << report.explored_states << "\n"
      << "valid_single_swaps: " << report.valid_single_swaps << "\n"
      << "complete: " << (report.complete ? "yes" : "no") << "\n";
  for (const auto& t : report.staged_members) out << "member: " << canonical_form(t) << "\n";
  return 0;
}

int Equiv(const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 2) throw UsageError("equiv needs two tree files");
  auto f = Format(opt, "text", {"text", "json"});
  EquivConfig cfg;
  if (opt.budget) cfg.max_states = *opt.budget;
  if (opt.seed) cfg.seed = *opt.seed;
  auto verdict = statistically_equivalent(read_tree_file(opt.inputs[0]),
                                          read_tree_file(opt.inputs[1]), cfg);
  if (f == "json") {
    out << to_json(verdict).dump(2) << "\n";
    return 0;
  }
  out << "verdict: " << to_string(verdict.status) << "\n";
  for (const auto& s : verdict.path) out << "step: " << describe(s) << "\n";
  if (verdict.probe) {
    out << "probe: from the " << verdict.probe->source << " tree, seed " << verdict.probe->seed
        << "\n";
  }
  if (!verdict.reason.empty()) out << "reason: " << verdict.reason << "\n";
  out << "explored_states: " << verdict.explored_states << "\n";
  return 0;
}

// Reads "n", "n/m" or a JSON number.
template <class T>
T Number(const nlohmann::json& j);

template <>
double Number<double>(const nlohmann::json& j) {
  if (!j.is_number()) throw InputError("probabilities must be numbers: " + j.dump());
  return j.get<double>();
}

template <>
Rational Number<Rational>(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw InputError("exact probabilities are written \"n/m\": " + j.dump());
  auto text = j.get<std::string>();
  auto slash = text.find('/');
  try {
    long long num = std::stoll(text.substr(0, slash));
    long long den = slash == std::string::npos ? 1 : std::stoll(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw InputError("malformed fraction '" + text + "'");
  }
}

template <class T>
Distribution<T> ReadDistribution(const StagedTree& tree, const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("a distribution maps atoms to probabilities");
  std::map<VertexId, Monomial> by_leaf;
  for (const auto& p : paths(tree)) by_leaf.emplace(p.leaf, atomic_monomial(tree, p));
  Distribution<T> out;
  for (const auto& [key, value] : doc.items()) {
    auto atom = tree.atoms().find(key);
    std::optional<Monomial> m;
    if (atom != tree.atoms().end() && by_leaf.count(atom->second)) {
      m = by_leaf.at(atom->second);
    } else {
      std::vector<std::string> symbols;
      std::size_t start = 0;
      for (;;) {
        auto star = key.find('*', start);
        symbols.push_back(key.substr(start, star - start));
        if (star == std::string::npos) break;
        start = star + 1;
      }
      m = Monomial(std::move(symbols));
    }
    if (!out.emplace(*m, Number<T>(value)).second) {
      throw InputError("atom " + m->str() + " is listed twice");
    }
  }
  return out;
}

template <class T>
void PrintParams(const Membership<T>& m, std::ostream& out) {
  for (const auto& [label, value] : m.params) {
    out << "param " << label.str() << " ";
    if constexpr (std::is_same_v<T, Rational>) {
      out << value.numerator() << "/" << value.denominator();
    } else {
      out << value;
    }
    out << "\n";
  }
}

int Prob(const Options& opt, std::ostream& out) {
  Format(opt, "text", {"text"});
  auto tree = read_tree_file(opt.inputs[0]);
  tree.require_event_tree();
  if (opt.inputs.size() == 2) {
    auto doc = nlohmann::json::parse(read_text_file(opt.inputs[1]), nullptr, false);
    if (doc.is_discarded()) throw InputError("'" + opt.inputs[1] + "' is not valid JSON");
    bool exact = std::any_of(doc.begin(), doc.end(), [](const auto& v) { return v.is_string(); });
    std::string reason;
    if (exact) {
      auto m = distribution_membership(tree, ReadDistribution<Rational>(tree, doc));
      if (m.accepted) {
        out << "accepted\n";
        PrintParams(m, out);
        return 0;
      }
      reason = m.reason;
    } else {
      auto m = distribution_membership(tree, ReadDistribution<double>(tree, doc));
      if (m.accepted) {
        out << "accepted\n";
        PrintParams(m, out);
        return 0;
      }
      reason = m.reason;
    }
    out << "rejected: " << reason << "\n";
    return 1;
  }
  if (opt.inputs.size() != 1) throw UsageError("prob needs FILE [DISTRIBUTION]");
  std::mt19937_64 rng(opt.seed.value_or(kDefaultSeed));
  auto theta = random_normalized_assignment(tree, rng);
  for (const auto& [symbol, value] : theta.values) out << "theta " << symbol << " " << value << "\n";
  std::map<VertexId, std::string> names;
  for (const auto& [name, leaf] : tree.atoms()) names[leaf] = name;
  auto all = paths(tree);
  auto probs = atomic_probabilities(tree, theta);
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto it = names.find(all[i].leaf);
    out << "atom " << (it == names.end() ? all[i].leaf : it->second) << " "
        << atomic_monomial(tree, all[i]).str() << " " << probs[i] << "\n";
  }
  return 0;
}

int ExportDot(const Options& opt, std::ostream& out) {
  Format(opt, "dot", {"dot"});
  out << export_dot(read_tree_file(opt.inputs[0]));
  return 0;
}

int Replay(const Options& opt, std::ostream& out) {
  if (opt.inputs.size() != 2) throw UsageError("replay needs FILE PATH");
  auto tree = read_tree_file(opt.inputs[0]);
  auto doc = nlohmann::json::parse(read_text_file(opt.inputs[1]), nullptr, false);
  if (doc.is_discarded()) throw InputError("'" + opt.inputs[1] + "' is not valid JSON");
  EmitTree(replay(tree, steps_from_json(doc)), opt, out);
  return 0;
}

struct Verb {
  const char* name;
  const char* help;
  const char* inputs;
  std::size_t min_inputs;
  std::size_t max_inputs;
  std::function<int(const Options&, std::ostream&, std::ostream&)> run;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto plain = [](int (*f)(const Options&, std::ostream&)) {
    return [f](const Options& o, std::ostream& out, std::ostream&) { return f(o, out); };
  };
  const std::vector<Verb> verbs = {
      {"validate", "check the structural invariants of a tree", "FILE", 1, 1, plain(Validate)},
      {"poly", "print the interpolating polynomial", "FILE", 1, 1, plain(PolyCmd)},
      {"factorize", "list every tree-compatible factorization", "POLY", 1, 1, Factorize},
      {"compat", "decide tree compatibility of a polynomial", "POLY", 1, 1, Compat},
      {"twins", "list the twins of a tree", "FILE", 1, 1, plain(Twins)},
      {"swap", "swap the twin selected by --twin", "FILE", 1, 1, plain(Swap)},
      {"sites", "list the resize sites of a tree", "FILE", 1, 1, plain(Sites)},
      {"resize", "resize the site selected by --site", "FILE", 1, 1, plain(Resize)},
      {"expand-floret", "replace a floret by a subtree", "FILE VERTEX FACTORIZATION", 3, 3,
       plain(ExpandFloret)},
      {"enumerate", "enumerate the polynomial equivalence class", "FILE", 1, 1, plain(Enumerate)},
      {"equiv", "decide statistical equivalence of two trees", "FILE FILE", 2, 2, plain(Equiv)},
      {"prob", "atomic probabilities, or membership of a distribution", "FILE [DIST]", 1, 2,
       plain(Prob)},
      {"export-dot", "render a tree in Graphviz format", "FILE", 1, 1, plain(ExportDot)},
      {"replay", "apply a transformation path", "FILE PATH", 2, 2, plain(Replay)},
  };

  CLI::App app{"Staged tree toolkit", "stagedtree"};
  app.require_subcommand(1);
  Options opt;
  std::string format;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t twin = 0;
  std::size_t site = 0;
  auto* format_opt = app.add_option("--format", format, "text, tree, dot or json")
                         ->check(CLI::IsMember({"text", "tree", "dot", "json"}));
  auto* budget_opt = app.add_option("--budget", budget, "search bound")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed of randomized probes");
  auto* twin_opt = app.add_option("--twin", twin, "index into the twins listing");
  auto* site_opt = app.add_option("--site", site, "index into the sites listing");
  app.add_flag("--naive", opt.naive, "swap without the stage check");
  app.add_flag("--staged", opt.staged_only, "keep well-staged factorizations only");
  app.add_flag("--square-free", opt.square_free, "also require square-freeness");
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->fallthrough();
    sub->add_option("inputs", opt.inputs, v.inputs)->required();
    subs.emplace_back(sub, &v);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (*format_opt) opt.format = format;
  if (*budget_opt) opt.budget = budget;
  if (*seed_opt) opt.seed = seed;
  if (*twin_opt) opt.twin = twin;
  if (*site_opt) opt.site = site;

  for (const auto& [sub, verb] : subs) {
    if (!sub->parsed()) continue;
    try {
      if (opt.inputs.size() < verb->min_inputs || opt.inputs.size() > verb->max_inputs) {
        throw UsageError(std::string(verb->name) + " expects " + verb->inputs);
      }
      return verb->run(opt, out, err);
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  err << "usage error: no command\n";
  return 2;
}

}  // namespace stagedtree
