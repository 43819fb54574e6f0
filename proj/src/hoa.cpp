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

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "mpts/automata.hpp"
#include "mpts/error.hpp"

namespace mpts {

std::string export_hoa(const Dra& r) {
  check_dra(r);
  std::ostringstream out;
  out << "HOA: v1\n";
  out << "States: " << r.num_states << "\n";
  out << "Start: " << r.initial << "\n";
  out << "AP: " << r.ap.size();
  for (const auto& p : r.ap) out << " \"" << p << "\"";
  out << "\n";
  out << "acc-name: Rabin " << r.pairs.size() << "\n";
  out << "Acceptance: " << 2 * r.pairs.size();
  for (std::size_t i = 0; i < r.pairs.size(); ++i)
    out << (i ? " | " : " ") << "Fin(" << 2 * i << ")&Inf(" << 2 * i + 1 << ")";
  out << "\n";
  out << "properties: trans-labels explicit-labels state-acc deterministic complete\n";
  out << "--BODY--\n";
  for (std::size_t s = 0; s < r.num_states; ++s) {
    out << "State: " << s;
    std::string sets;
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
      if (r.pairs[i].fin[s]) sets += (sets.empty() ? "" : " ") + std::to_string(2 * i);
      if (r.pairs[i].inf[s]) sets += (sets.empty() ? "" : " ") + std::to_string(2 * i + 1);
    }
    if (!sets.empty()) out << " {" << sets << "}";
    out << "\n";
    for (Letter l = 0; l < r.num_letters(); ++l) {
      out << "[";
      if (r.ap.empty()) out << "t";
      for (std::size_t p = 0; p < r.ap.size(); ++p) out << (p ? "&" : "") << ((l >> p & 1) ? "" : "!") << p;
      out << "] " << r.next(s, l) << "\n";
    }
  }
  out << "--END--\n";
  return out.str();
}

namespace {

enum class HoaTok { kEnd, kHeader, kIdent, kInt, kString, kAlias, kPunct, kBody, kEndMark, kAbort };

struct HoaToken {
  HoaTok kind;
  std::string text;
  std::size_t line;
};

std::vector<HoaToken> lex_hoa(std::string_view s) {
  std::vector<HoaToken> out;
  std::size_t i = 0, line = 1;
  auto fail = [&](const std::string& msg) { throw InputError("HOA line " + std::to_string(line) + ": " + msg); };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.substr(i, 2) == "/*") {
      int depth = 0;
      while (i < s.size()) {
        if (s.substr(i, 2) == "/*") {
          ++depth;
          i += 2;
        } else if (s.substr(i, 2) == "*/") {
          i += 2;
          if (--depth == 0) break;
        } else {
          if (s[i] == '\n') ++line;
          ++i;
        }
      }
      if (depth != 0) fail("unterminated comment");
      continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        if (s[i] == '\n') ++line;
        text += s[i++];
      }
      if (i >= s.size()) fail("unterminated string");
      ++i;
      out.push_back({HoaTok::kString, std::move(text), line});
      continue;
    }
    if (s.substr(i, 8) == "--BODY--") {
      out.push_back({HoaTok::kBody, "--BODY--", line});
      i += 8;
      continue;
    }
    if (s.substr(i, 7) == "--END--") {
      out.push_back({HoaTok::kEndMark, "--END--", line});
      i += 7;
      continue;
    }
    if (s.substr(i, 9) == "--ABORT--") {
      out.push_back({HoaTok::kAbort, "--ABORT--", line});
      i += 9;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({HoaTok::kInt, std::string(s.substr(start, i - start)), line});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      const std::size_t start = i;
      ++i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-')) ++i;
      std::string word(s.substr(start, i - start));
      if (c == '@') {
        out.push_back({HoaTok::kAlias, std::move(word), line});
      } else if (i < s.size() && s[i] == ':') {
        ++i;
        out.push_back({HoaTok::kHeader, std::move(word), line});
      } else {
        out.push_back({HoaTok::kIdent, std::move(word), line});
      }
      continue;
    }
    if (std::string_view("[]{}()&|!").find(c) != std::string_view::npos) {
      out.push_back({HoaTok::kPunct, std::string(1, c), line});
      ++i;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  out.push_back({HoaTok::kEnd, "", line});
  return out;
}

// Boolean label expression over AP indices and aliases.
struct LabelExpr {
  enum Kind { kTrue, kFalse, kAp, kNot, kAnd, kOr } kind;
  std::size_t ap = 0;
  std::shared_ptr<const LabelExpr> lhs, rhs;

  bool eval(Letter l) const {
    switch (kind) {
      case kTrue: return true;
      case kFalse: return false;
      case kAp: return (l >> ap) & 1;
      case kNot: return !lhs->eval(l);
      case kAnd: return lhs->eval(l) && rhs->eval(l);
      case kOr: return lhs->eval(l) || rhs->eval(l);
    }
    return false;
  }
};
using LabelPtr = std::shared_ptr<const LabelExpr>;

// Acceptance condition: disjunction of Fin/Inf conjunctions.
struct AccAtom {
  bool fin;
  std::size_t set;
};

class HoaParser {
 public:
  explicit HoaParser(std::string_view text) : tokens_(lex_hoa(text)) {}

  Dra parse() {
    header();
    body();
    return finish();
  }

 private:
  const HoaToken& peek() const { return tokens_[pos_]; }
  const HoaToken& take() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("HOA line " + std::to_string(peek().line) + ": " + msg);
  }
  bool accept_punct(char c) {
    if (peek().kind == HoaTok::kPunct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_punct(char c) {
    if (!accept_punct(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t integer() {
    if (peek().kind != HoaTok::kInt) fail("expected integer");
    return std::stoul(take().text);
  }

  void header() {
    if (peek().kind != HoaTok::kHeader || peek().text != "HOA") fail("missing 'HOA:' header");
    take();
    if (peek().kind != HoaTok::kIdent || peek().text != "v1") fail("unsupported HOA version");
    take();
    while (peek().kind == HoaTok::kHeader) {
      const std::string key = take().text;
      if (key == "States") {
        num_states_ = integer();
      } else if (key == "Start") {
        const std::size_t s = integer();
        if (accept_punct('&')) fail("unsupported feature: universal initial states");
        if (start_) fail("unsupported feature: multiple initial states (nondeterministic)");
        start_ = s;
      } else if (key == "AP") {
        const std::size_t n = integer();
        for (std::size_t i = 0; i < n; ++i) {
          if (peek().kind != HoaTok::kString) fail("expected AP name");
          ap_.push_back(take().text);
        }
        if (ap_.size() > kMaxAlphabetProps) fail("too many atomic propositions");
      } else if (key == "Alias") {
        if (peek().kind != HoaTok::kAlias) fail("expected alias name");
        const std::string name = take().text;
        aliases_[name] = label_or();
      } else if (key == "Acceptance") {
        num_sets_ = integer();
        acceptance();
      } else if (key == "acc-name") {
        if (peek().kind != HoaTok::kIdent) fail("expected acceptance name");
        acc_name_ = take().text;
        if (acc_name_ != "Rabin")
          fail("unsupported feature: acceptance '" + acc_name_ + "' (only Rabin is supported)");
        skip_values();
      } else {
        skip_values();
      }
    }
    if (peek().kind != HoaTok::kBody) fail("expected --BODY--");
    take();
    if (!have_acceptance_) fail("missing Acceptance header");
    if (!start_) fail("missing Start header");
  }

  void skip_values() {
    while (peek().kind != HoaTok::kHeader && peek().kind != HoaTok::kBody && peek().kind != HoaTok::kEnd) take();
  }

  // Rabin shape: f | (Fin(a) & Inf(b)) ('|' Fin(c) & Inf(d))*
  void acceptance() {
    have_acceptance_ = true;
    if (peek().kind == HoaTok::kIdent && peek().text == "f") {
      take();
      return;
    }
    for (;;) {
      bool parens = accept_punct('(');
      AccAtom a = acc_atom();
      if (!accept_punct('&')) fail("unsupported feature: acceptance is not a Rabin condition");
      AccAtom b = acc_atom();
      if (parens) expect_punct(')');
      if (a.fin == b.fin) fail("unsupported feature: acceptance is not a Rabin condition");
      if (!a.fin) std::swap(a, b);
      pairs_.emplace_back(a.set, b.set);
      if (!accept_punct('|')) break;
    }
  }

  AccAtom acc_atom() {
    if (peek().kind != HoaTok::kIdent || (peek().text != "Fin" && peek().text != "Inf"))
      fail("unsupported feature: acceptance is not a Rabin condition");
    const bool fin = take().text == "Fin";
    expect_punct('(');
    if (accept_punct('!')) fail("unsupported feature: complemented acceptance sets");
    const std::size_t set = integer();
    if (set >= num_sets_) fail("acceptance set index out of range");
    expect_punct(')');
    return {fin, set};
  }

  LabelPtr label_or() {
    LabelPtr e = label_and();
    while (accept_punct('|'))
      e = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kOr, 0, e, label_and()});
    return e;
  }
  LabelPtr label_and() {
    LabelPtr e = label_not();
    while (accept_punct('&'))
      e = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kAnd, 0, e, label_not()});
    return e;
  }
  LabelPtr label_not() {
    if (accept_punct('!')) return std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kNot, 0, label_not(), {}});
    if (accept_punct('(')) {
      LabelPtr e = label_or();
      expect_punct(')');
      return e;
    }
    const HoaToken& t = take();
    if (t.kind == HoaTok::kIdent && t.text == "t") return std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kTrue, 0, {}, {}});
    if (t.kind == HoaTok::kIdent && t.text == "f") return std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kFalse, 0, {}, {}});
    if (t.kind == HoaTok::kInt) {
      const std::size_t ap = std::stoul(t.text);
      if (ap >= ap_.size()) fail("AP index out of range in label");
      return std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kAp, ap, {}, {}});
    }
    if (t.kind == HoaTok::kAlias) {
      auto it = aliases_.find(t.text);
      if (it == aliases_.end()) fail("unknown alias " + t.text);
      return it->second;
    }
    --pos_;
    fail("malformed label expression");
  }

  void body() {
    while (peek().kind == HoaTok::kHeader && peek().text == "State") {
      take();
      if (accept_punct('[')) fail("unsupported feature: state labels");
      const std::size_t s = integer();
      if (peek().kind == HoaTok::kString) take();
      std::vector<std::size_t> sets;
      if (accept_punct('{')) {
        while (!accept_punct('}')) sets.push_back(integer());
      }
      for (std::size_t a : sets)
        if (a >= num_sets_) fail("acceptance set index out of range");
      if (state_sets_.count(s)) fail("state " + std::to_string(s) + " declared twice");
      state_sets_[s] = sets;
      auto& edges = edges_[s];
      std::size_t implicit = 0;
      bool explicit_labels = false;
      while (peek().kind == HoaTok::kPunct || peek().kind == HoaTok::kInt) {
        LabelPtr label;
        if (accept_punct('[')) {
          label = label_or();
          expect_punct(']');
          explicit_labels = true;
        } else {
          if (explicit_labels) fail("mixing implicit and explicit edge labels");
          // implicit labels enumerate letters in order
          label = implicit_letter(implicit++);
        }
        if (implicit && explicit_labels) fail("mixing implicit and explicit edge labels");
        const std::size_t dest = integer();
        if (accept_punct('&')) fail("unsupported feature: universal branching");
        if (accept_punct('{')) fail("unsupported feature: transition-based acceptance");
        edges.emplace_back(label, dest);
      }
    }
    if (peek().kind == HoaTok::kAbort) fail("automaton aborted");
    if (peek().kind != HoaTok::kEndMark) fail("expected State: or --END--");
    take();
  }

  LabelPtr implicit_letter(std::size_t index) const {
    LabelPtr e = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kTrue, 0, {}, {}});
    for (std::size_t p = 0; p < ap_.size(); ++p) {
      LabelPtr lit = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kAp, p, {}, {}});
      if (!((index >> p) & 1)) lit = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kNot, 0, lit, {}});
      e = std::make_shared<const LabelExpr>(LabelExpr{LabelExpr::kAnd, 0, e, lit});
    }
    return e;
  }

  Dra finish() {
    Dra r;
    r.ap = ap_;
    std::size_t n = num_states_.value_or(0);
    for (const auto& [s, sets] : state_sets_) n = std::max(n, s + 1);
    for (const auto& [s, list] : edges_)
      for (const auto& e : list) n = std::max(n, e.second + 1);
    if (*start_ >= n) throw InputError("HOA: Start state out of range");
    r.num_states = n;
    r.initial = *start_;
    const std::size_t letters = r.num_letters();
    r.delta.assign(n * letters, SIZE_MAX);
    for (std::size_t s = 0; s < n; ++s) {
      auto it = edges_.find(s);
      for (Letter l = 0; l < letters; ++l) {
        std::optional<std::size_t> dest;
        if (it != edges_.end())
          for (const auto& [label, d] : it->second) {
            if (!label->eval(l)) continue;
            if (dest && *dest != d)
              throw InputError("HOA: unsupported feature: nondeterministic transitions at state " + std::to_string(s));
            dest = d;
          }
        if (dest && *dest >= n) throw InputError("HOA: transition target out of range");
        if (dest) r.delta[s * letters + l] = *dest;
      }
    }
    // reported after the nondeterminism scan so that the more specific problem wins
    for (std::size_t i = 0; i < r.delta.size(); ++i)
      if (r.delta[i] == SIZE_MAX)
        throw InputError("HOA: unsupported feature: incomplete automaton at state " + std::to_string(i / letters));
    for (const auto& [fin_set, inf_set] : pairs_) {
      RabinPair p{std::vector<bool>(n, false), std::vector<bool>(n, false)};
      for (const auto& [s, sets] : state_sets_)
        for (std::size_t a : sets) {
          if (a == fin_set) p.fin[s] = true;
          if (a == inf_set) p.inf[s] = true;
        }
      r.pairs.push_back(std::move(p));
    }
    // Acceptance "f": no pair can be satisfied.
    if (r.pairs.empty()) r.pairs.push_back({std::vector<bool>(n, true), std::vector<bool>(n, false)});
    check_dra(r);
    return r;
  }

  std::vector<HoaToken> tokens_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> num_states_;
  std::optional<std::size_t> start_;
  std::vector<std::string> ap_;
  std::map<std::string, LabelPtr> aliases_;
  std::size_t num_sets_ = 0;
  bool have_acceptance_ = false;
  std::string acc_name_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;  // (Fin set, Inf set)
  std::map<std::size_t, std::vector<std::size_t>> state_sets_;
  std::map<std::size_t, std::vector<std::pair<LabelPtr, std::size_t>>> edges_;
};

}  // namespace

Dra import_hoa(std::string_view text) { return HoaParser(text).parse(); }

}  // namespace mpts
