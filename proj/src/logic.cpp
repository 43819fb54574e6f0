/*
 * Copyright 2026 The mpts-synth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mpts/logic.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mpts/error.hpp"

namespace mpts {

Formula Formula::make(FormulaKind kind, std::string name, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{kind, std::move(name), std::move(children)}));
}

Formula Formula::truth() { return make(FormulaKind::kTrue, {}, {}); }
Formula Formula::falsity() { return negation(truth()); }
Formula Formula::atom(std::string name) { return make(FormulaKind::kAtom, std::move(name), {}); }
Formula Formula::negation(Formula f) { return make(FormulaKind::kNot, {}, {std::move(f)}); }
Formula Formula::conjunction(Formula l, Formula r) { return make(FormulaKind::kAnd, {}, {std::move(l), std::move(r)}); }
Formula Formula::disjunction(Formula l, Formula r) { return make(FormulaKind::kOr, {}, {std::move(l), std::move(r)}); }
Formula Formula::implication(Formula l, Formula r) {
  return make(FormulaKind::kImplies, {}, {std::move(l), std::move(r)});
}
Formula Formula::equivalence(Formula l, Formula r) { return make(FormulaKind::kIff, {}, {std::move(l), std::move(r)}); }
Formula Formula::next(Formula f) { return make(FormulaKind::kNext, {}, {std::move(f)}); }
Formula Formula::until(Formula l, Formula r) { return make(FormulaKind::kUntil, {}, {std::move(l), std::move(r)}); }
Formula Formula::eventually(Formula f) { return make(FormulaKind::kEventually, {}, {std::move(f)}); }
Formula Formula::globally(Formula f) { return make(FormulaKind::kGlobally, {}, {std::move(f)}); }

bool Formula::is_core() const {
  switch (kind()) {
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
    case FormulaKind::kIff:
    case FormulaKind::kEventually:
    case FormulaKind::kGlobally:
      return false;
    default:
      break;
  }
  return std::all_of(node_->children.begin(), node_->children.end(), [](const Formula& c) { return c.is_core(); });
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  if (kind() == FormulaKind::kAtom) out.insert(name());
  for (const auto& c : node_->children) {
    auto sub = c.atoms();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::string Formula::to_string() const {
  auto binary = [&](const char* op) { return "(" + lhs().to_string() + " " + op + " " + rhs().to_string() + ")"; };
  switch (kind()) {
    case FormulaKind::kTrue: return "true";
    case FormulaKind::kAtom: return name();
    case FormulaKind::kNot: return "!" + lhs().to_string();
    case FormulaKind::kNext: return "X " + lhs().to_string();
    case FormulaKind::kEventually: return "F " + lhs().to_string();
    case FormulaKind::kGlobally: return "G " + lhs().to_string();
    case FormulaKind::kAnd: return binary("&");
    case FormulaKind::kOr: return binary("|");
    case FormulaKind::kImplies: return binary("->");
    case FormulaKind::kIff: return binary("<->");
    case FormulaKind::kUntil: return binary("U");
  }
  return "?";
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.node_->children[i] == b.node_->children[i])) return false;
  return true;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.name() != b.name()) return a.name() < b.name();
  if (a.arity() != b.arity()) return a.arity() < b.arity();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    const auto& x = a.node_->children[i];
    const auto& y = b.node_->children[i];
    if (x < y) return true;
    if (y < x) return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { kEnd, kLParen, kRParen, kNot, kAnd, kOr, kImplies, kIff, kIdent, kTrue, kFalse, kX, kF, kG, kU };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == '(') {
      out.push_back({Tok::kLParen, "(", start});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::kRParen, ")", start});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::kNot, "!", start});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::kAnd, "&", start});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::kOr, "|", start});
      ++i;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::kImplies, "->", start});
      i += 2;
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::kIff, "<->", start});
      i += 3;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::kIdent;
      if (word == "true") kind = Tok::kTrue;
      else if (word == "false") kind = Tok::kFalse;
      else if (word == "X") kind = Tok::kX;
      else if (word == "F") kind = Tok::kF;
      else if (word == "G") kind = Tok::kG;
      else if (word == "U") kind = Tok::kU;
      out.push_back({kind, std::move(word), start});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>* ap) : tokens_(tokenize(text)), ap_(ap) {}

  Formula parse() {
    Formula f = iff();
    if (peek().kind != Tok::kEnd) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Formula iff() {
    Formula f = implies();
    while (accept(Tok::kIff)) f = Formula::equivalence(f, implies());
    return f;
  }
  Formula implies() {
    Formula f = disjunction();
    if (accept(Tok::kImplies)) return Formula::implication(f, implies());
    return f;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::kOr)) f = Formula::disjunction(f, conjunction());
    return f;
  }
  Formula conjunction() {
    Formula f = until();
    while (accept(Tok::kAnd)) f = Formula::conjunction(f, until());
    return f;
  }
  Formula until() {
    Formula f = unary();
    if (accept(Tok::kU)) return Formula::until(f, until());
    return f;
  }
  Formula unary() {
    switch (peek().kind) {
      case Tok::kNot: take(); return Formula::negation(unary());
      case Tok::kX: take(); return Formula::next(unary());
      case Tok::kF: take(); return Formula::eventually(unary());
      case Tok::kG: take(); return Formula::globally(unary());
      default: return primary();
    }
  }
  Formula primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::kTrue: return Formula::truth();
      case Tok::kFalse: return Formula::falsity();
      case Tok::kIdent:
        if (ap_ && !ap_->count(t.text)) throw ParseError("unknown atomic proposition '" + t.text + "'", t.pos);
        return Formula::atom(t.text);
      case Tok::kLParen: {
        Formula f = iff();
        if (!accept(Tok::kRParen)) throw ParseError("expected ')'", peek().pos);
        return f;
      }
      case Tok::kEnd: throw ParseError("unexpected end of formula", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const std::set<std::string>* ap_;  // null accepts any identifier
};

}  // namespace

Formula parse_ltl(std::string_view text, const std::set<std::string>& ap) { return Parser(text, &ap).parse(); }

Formula parse_ltl(std::string_view text) { return Parser(text, nullptr).parse(); }

Formula parse_ltl(std::string_view text, const std::vector<std::string>& ap) {
  return parse_ltl(text, std::set<std::string>(ap.begin(), ap.end()));
}

// ---------------------------------------------------------------------------
// Desugaring

Formula desugar(const Formula& f) {
  using F = Formula;
  auto neg = [](F x) { return F::negation(std::move(x)); };
  auto disj = [&](F a, F b) { return neg(F::conjunction(neg(std::move(a)), neg(std::move(b)))); };
  switch (f.kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kAtom: return f;
    case FormulaKind::kNot: return neg(desugar(f.lhs()));
    case FormulaKind::kNext: return F::next(desugar(f.lhs()));
    case FormulaKind::kAnd: return F::conjunction(desugar(f.lhs()), desugar(f.rhs()));
    case FormulaKind::kUntil: return F::until(desugar(f.lhs()), desugar(f.rhs()));
    case FormulaKind::kOr: return disj(desugar(f.lhs()), desugar(f.rhs()));
    case FormulaKind::kImplies: return disj(neg(desugar(f.lhs())), desugar(f.rhs()));
    case FormulaKind::kIff: {
      F a = desugar(f.lhs());
      F b = desugar(f.rhs());
      // (a -> b) & (b -> a)
      return F::conjunction(disj(neg(a), b), disj(neg(b), a));
    }
    case FormulaKind::kEventually: return F::until(F::truth(), desugar(f.lhs()));
    case FormulaKind::kGlobally: return neg(F::until(F::truth(), neg(desugar(f.lhs()))));
  }
  throw std::logic_error("unhandled formula kind");
}

// ---------------------------------------------------------------------------
// Lasso semantics

namespace {

using Bits = std::vector<bool>;

// Least (greatest when `greatest`) fixpoint of v(i) = now(i) | (keep(i) & v(succ i)),
// with `now` ignored for the greatest case: v(i) = keep(i) & v(succ i).
Bits fixpoint(const LassoWord& w, const Bits& keep, const Bits& now, bool greatest) {
  const std::size_t n = w.length();
  Bits v = greatest ? keep : now;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = n; k-- > 0;) {
      const bool next = v[w.successor(k)];
      const bool value = greatest ? (keep[k] && next) : (now[k] || (keep[k] && next));
      if (value != v[k]) {
        v[k] = value;
        changed = true;
      }
    }
  }
  return v;
}

Bits positions(const Formula& f, const LassoWord& w) {
  const std::size_t n = w.length();
  Bits v(n);
  switch (f.kind()) {
    case FormulaKind::kTrue:
      v.assign(n, true);
      return v;
    case FormulaKind::kAtom: {
      auto it = std::find(w.ap.begin(), w.ap.end(), f.name());
      if (it == w.ap.end()) return v;
      const Letter bit = Letter{1} << (it - w.ap.begin());
      for (std::size_t i = 0; i < n; ++i) v[i] = (w.at(i) & bit) != 0;
      return v;
    }
    case FormulaKind::kNot: {
      Bits a = positions(f.lhs(), w);
      for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
      return v;
    }
    case FormulaKind::kNext: {
      Bits a = positions(f.lhs(), w);
      for (std::size_t i = 0; i < n; ++i) v[i] = a[w.successor(i)];
      return v;
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
    case FormulaKind::kIff: {
      Bits a = positions(f.lhs(), w);
      Bits b = positions(f.rhs(), w);
      for (std::size_t i = 0; i < n; ++i) {
        switch (f.kind()) {
          case FormulaKind::kAnd: v[i] = a[i] && b[i]; break;
          case FormulaKind::kOr: v[i] = a[i] || b[i]; break;
          case FormulaKind::kImplies: v[i] = !a[i] || b[i]; break;
          default: v[i] = a[i] == b[i]; break;
        }
      }
      return v;
    }
    case FormulaKind::kUntil: return fixpoint(w, positions(f.lhs(), w), positions(f.rhs(), w), false);
    case FormulaKind::kEventually: return fixpoint(w, Bits(n, true), positions(f.lhs(), w), false);
    case FormulaKind::kGlobally: return fixpoint(w, positions(f.lhs(), w), Bits(n, false), true);
  }
  throw std::logic_error("unhandled formula kind");
}

}  // namespace

std::vector<bool> satisfaction_positions(const Formula& f, const LassoWord& w) {
  if (w.cycle.empty()) throw InputError("lasso word with empty cycle");
  return positions(f, w);
}

bool eval_on_lasso(const Formula& f, const LassoWord& w) { return satisfaction_positions(f, w)[0]; }

}  // namespace mpts
