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

#include "stagedtree/label.hpp"

#include <algorithm>
#include <cctype>

#include "stagedtree/errors.hpp"

namespace stagedtree {

bool is_valid_symbol(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

Label::Label(std::string symbol) : Label(std::vector<std::string>{std::move(symbol)}) {}

Label::Label(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("a label needs at least one symbol");
  for (const auto& s : symbols_) {
    if (!is_valid_symbol(s)) throw InputError("invalid symbol '" + s + "'");
  }
  std::sort(symbols_.begin(), symbols_.end());
  auto dup = std::adjacent_find(symbols_.begin(), symbols_.end());
  if (dup != symbols_.end()) throw SymbolRepeat(*dup);
}

std::string Label::str() const {
  std::string out = symbols_.front();
  for (std::size_t i = 1; i < symbols_.size(); ++i) out += "*" + symbols_[i];
  return out;
}

bool Label::contains(std::string_view symbol) const {
  return std::binary_search(symbols_.begin(), symbols_.end(), symbol);
}

Label label_product(const Label& a, const Label& b) {
  std::vector<std::string> all = a.symbols();
  all.insert(all.end(), b.symbols().begin(), b.symbols().end());
  return Label(std::move(all));
}

std::ostream& operator<<(std::ostream& os, const Label& label) {
  return os << label.str();
}

}  // namespace stagedtree
