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

#ifndef MPTS_LOGIC_HPP
#define MPTS_LOGIC_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mpts {

/// Subset of an ordered proposition list; bit i set means proposition i holds.
using Letter = std::uint64_t;

enum class FormulaKind {
  kTrue,
  kAtom,
  kNot,
  kAnd,
  kNext,
  kUntil,
  // derived
  kOr,
  kImplies,
  kIff,
  kEventually,
  kGlobally,
};

/**
 * Immutable LTL formula. Copies share the underlying tree.
 *
 * `false` has no node kind of its own; it is `!true`.
 */
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula next(Formula f);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula f);
  static Formula globally(Formula f);

  FormulaKind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  /// Operand of unary nodes, left operand of binary nodes.
  const Formula& lhs() const { return node_->children.at(0); }
  const Formula& rhs() const { return node_->children.at(1); }
  std::size_t arity() const noexcept { return node_->children.size(); }

  bool is_core() const;
  std::size_t size() const;
  std::set<std::string> atoms() const;

  /// Fully parenthesized rendering that parse_ltl reads back to the same tree.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    std::string name;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

/**
 * Parses `true | false | ident | ! | & | '|' | -> | <-> | X | F | G | U`.
 *
 * Precedence from tightest: unary operators, U, &, |, ->, <->. U and -> are
 * right-associative; & | and <-> are left-associative. Atoms must belong to
 * `ap`. Throws ParseError on syntax errors and on unknown atoms.
 */
Formula parse_ltl(std::string_view text, const std::set<std::string>& ap);
Formula parse_ltl(std::string_view text, const std::vector<std::string>& ap);
/// Same grammar, accepting any identifier as an atom.
Formula parse_ltl(std::string_view text);

/// Rewrites derived operators into True/Atom/Not/And/Next/Until only.
Formula desugar(const Formula& f);

/// Ultimately periodic word prefix . cycle^omega over the propositions `ap`.
struct LassoWord {
  std::vector<std::string> ap;
  std::vector<Letter> prefix;
  std::vector<Letter> cycle;  // nonempty

  std::size_t length() const noexcept { return prefix.size() + cycle.size(); }
  /// Position after `i` on the prefix+cycle layout.
  std::size_t successor(std::size_t i) const noexcept { return i + 1 < length() ? i + 1 : prefix.size(); }
  Letter at(std::size_t i) const { return i < prefix.size() ? prefix[i] : cycle[i - prefix.size()]; }
};

/// Exact satisfaction of `f` by the infinite unrolling of `w`. Atoms not in
/// `w.ap` are read as false.
bool eval_on_lasso(const Formula& f, const LassoWord& w);

/// Truth value of `f` at every position of the prefix+cycle layout.
std::vector<bool> satisfaction_positions(const Formula& f, const LassoWord& w);

}  // namespace mpts

#endif  // MPTS_LOGIC_HPP
