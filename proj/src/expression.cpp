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

#include "stagedtree/expression.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "stagedtree/errors.hpp"

namespace stagedtree {
namespace {

struct Token {
  enum Kind { kSymbol, kNumber, kPlus, kStar, kSlash, kOpen, kClose, kEnd } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token tok{Token::kEnd, {}, line, column};
    std::size_t len = 1;
    if (std::isalpha(c) || c == '_') {
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_')) {
        ++len;
      }
      tok.kind = Token::kSymbol;
    } else if (std::isdigit(c)) {
      while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) {
        ++len;
      }
      tok.kind = Token::kNumber;
    } else {
      switch (c) {
        case '+': tok.kind = Token::kPlus; break;
        case '*': tok.kind = Token::kStar; break;
        case '/': tok.kind = Token::kSlash; break;
        case '(': tok.kind = Token::kOpen; break;
        case ')': tok.kind = Token::kClose; break;
        default:
          throw ParseError(std::string("unexpected character '") + text[i] + "'", line,
                           column);
      }
    }
    tok.text = std::string(text.substr(i, len));
    out.push_back(std::move(tok));
    advance(len);
  }
  out.push_back({Token::kEnd, {}, line, column});
  return out;
}

struct Node {
  enum Kind { kSum, kProduct, kSymbol, kNumber } kind;
  std::vector<Node> children;
  std::string symbol;
  Rational number = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Tokenize(text)) {}

  Node Parse() {
    Node root = Expr();
    if (Peek().kind != Token::kEnd) Fail("unexpected '" + Peek().text + "'");
    return root;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Take() { return tokens_[pos_++]; }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(message, Peek().line, Peek().column);
  }

  Node Expr() {
    Node sum{Node::kSum, {}, {}, 0, Peek().line, Peek().column};
    sum.children.push_back(Term());
    while (Peek().kind == Token::kPlus) {
      Take();
      sum.children.push_back(Term());
    }
    return sum;
  }

  Node Term() {
    Node product{Node::kProduct, {}, {}, 0, Peek().line, Peek().column};
    product.children.push_back(Factor());
    for (;;) {
      if (Peek().kind == Token::kStar) {
        Take();
        product.children.push_back(Factor());
      } else if (Peek().kind == Token::kOpen) {
        product.children.push_back(Factor());
      } else {
        break;
      }
    }
    return product;
  }

  Node Factor() {
    const Token& tok = Peek();
    Node node{Node::kSymbol, {}, {}, 0, tok.line, tok.column};
    switch (tok.kind) {
      case Token::kSymbol:
        node.symbol = Take().text;
        return node;
      case Token::kNumber: {
        node.kind = Node::kNumber;
        long long num = std::stoll(Take().text);
        long long den = 1;
        if (Peek().kind == Token::kSlash) {
          Take();
          if (Peek().kind != Token::kNumber) Fail("expected a denominator");
          den = std::stoll(Take().text);
          if (den == 0) Fail("zero denominator");
        }
        node.number = Rational(num, den);
        return node;
      }
      case Token::kOpen: {
        Take();
        Node inner = Expr();
        if (Peek().kind != Token::kClose) Fail("expected ')'");
        Take();
        return inner;
      }
      case Token::kEnd:
        Fail("unexpected end of input");
      default:
        Fail("unexpected '" + tok.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

using Terms = std::map<std::vector<std::string>, Rational>;

std::vector<std::string> Merge(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) throw SymbolRepeat(*dup);
  return out;
}

Terms ExpandNode(const Node& node) {
  switch (node.kind) {
    case Node::kSymbol:
      return {{{node.symbol}, 1}};
    case Node::kNumber:
      return {{{}, node.number}};
    case Node::kSum: {
      Terms out;
      for (const auto& c : node.children) {
        for (const auto& [m, k] : ExpandNode(c)) out[m] += k;
      }
      return out;
    }
    case Node::kProduct: {
      Terms acc{{{}, 1}};
      for (const auto& c : node.children) {
        Terms next;
        for (const auto& [lm, lk] : acc) {
          for (const auto& [rm, rk] : ExpandNode(c)) next[Merge(lm, rm)] += lk * rk;
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

Factorization FromSum(const Node& sum) {
  Factorization out;
  for (const auto& product : sum.children) {
    const auto& factors = product.children;
    if (factors.size() == 1 && factors[0].kind == Node::kSum) {
      auto inner = FromSum(factors[0]);
      for (auto& t : inner.terms) out.terms.push_back(std::move(t));
      continue;
    }
    std::vector<std::string> symbols;
    std::size_t i = 0;
    while (i < factors.size() && factors[i].kind == Node::kSymbol) {
      symbols.push_back(factors[i++].symbol);
    }
    if (symbols.empty()) {
      throw ParseError("a factorization term must start with a label", factors[0].line,
                       factors[0].column);
    }
    Factorization sub;
    if (i < factors.size() && factors[i].kind == Node::kSum) sub = FromSum(factors[i++]);
    if (i < factors.size()) {
      throw ParseError("not a tree-compatible term: expected label*(sum)", factors[i].line,
                       factors[i].column);
    }
    out.terms.push_back({Label(std::move(symbols)), std::move(sub)});
  }
  return out;
}

}  // namespace

Poly parse_polynomial(std::string_view text) {
  Node root = Parser(text).Parse();
  Poly out;
  for (const auto& [m, k] : ExpandNode(root)) {
    if (k == Rational(0)) continue;
    if (m.empty()) throw ParseError("constant terms are not monomials", root.line, root.column);
    out.add(Monomial(m), k);
  }
  return out;
}

Factorization parse_factorization(std::string_view text) {
  return FromSum(Parser(text).Parse());
}

std::string to_string(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [m, k] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (k != Rational(1)) {
      out += std::to_string(k.numerator());
      if (k.denominator() != 1) out += "/" + std::to_string(k.denominator());
      out += "*";
    }
    out += m.str();
  }
  return out;
}

std::string to_string(const Factorization& f) {
  std::string out;
  for (const auto& t : f.terms) {
    if (!out.empty()) out += " + ";
    out += t.label.str();
    if (!t.is_leaf()) out += "*(" + to_string(t.sub) + ")";
  }
  return out;
}

}  // namespace stagedtree
