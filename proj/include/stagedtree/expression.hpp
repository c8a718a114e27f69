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

#include "stagedtree/polynomial.hpp"

namespace stagedtree {

// Text grammar shared by the library and the command-line tool:
//
//   expr   := term ('+' term)*
//   term   := factor ('*'? factor)*      juxtaposition only before '('
//   factor := symbol | number | '(' expr ')'
//
// Whitespace is insignificant. Numbers (integers or n/m) are coefficients and
// only make sense for network polynomials.

/// Multiplies out all brackets. Throws ParseError or SymbolRepeat.
Poly parse_polynomial(std::string_view text);

/// Reads a nested form as a tree-compatible factorization: every term is a
/// product of symbols (one label, composite when more than one symbol),
/// optionally followed by a single bracketed sum. A bracketed sum standing
/// alone as a term is merged into the enclosing sum.
Factorization parse_factorization(std::string_view text);

/// Terms in monomial order, e.g. "a*b + c"; coefficients other than one are
/// printed as a leading factor.
std::string to_string(const Poly& p);

/// Fully parenthesized nested form, terms in stored order.
std::string to_string(const Factorization& f);

}  // namespace stagedtree
