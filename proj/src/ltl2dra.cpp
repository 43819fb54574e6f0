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

// LTL -> transition-based generalized Büchi (tableau) -> state-based Büchi
// (counter degeneralization) -> deterministic Rabin (Safra trees).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mpts/automata.hpp"
#include "mpts/error.hpp"
#include "mpts/graph.hpp"

namespace mpts {

namespace {

// ---------------------------------------------------------------------------
// Negation normal form with hash-consed nodes

enum class NnfKind { kTrue, kFalse, kLit, kAnd, kOr, kNext, kUntil, kRelease };

struct NnfNode {
  NnfKind kind;
  std::size_t prop = 0;
  bool positive = true;
  int lhs = -1;
  int rhs = -1;
};

class NnfTable {
 public:
  explicit NnfTable(const std::vector<std::string>& ap) : ap_(ap) {}

  const NnfNode& at(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  int build(const Formula& f, bool neg) {
    switch (f.kind()) {
      case FormulaKind::kTrue: return constant(!neg);
      case FormulaKind::kAtom: {
        auto it = std::find(ap_.begin(), ap_.end(), f.name());
        if (it == ap_.end()) throw InputError("formula uses proposition '" + f.name() + "' outside the alphabet");
        return intern({NnfKind::kLit, static_cast<std::size_t>(it - ap_.begin()), !neg});
      }
      case FormulaKind::kNot: return build(f.lhs(), !neg);
      case FormulaKind::kAnd: return binary(neg ? NnfKind::kOr : NnfKind::kAnd, build(f.lhs(), neg), build(f.rhs(), neg));
      case FormulaKind::kOr: return binary(neg ? NnfKind::kAnd : NnfKind::kOr, build(f.lhs(), neg), build(f.rhs(), neg));
      case FormulaKind::kImplies:
        return binary(neg ? NnfKind::kAnd : NnfKind::kOr, build(f.lhs(), !neg), build(f.rhs(), neg));
      case FormulaKind::kIff: {
        // a <-> b == (a & b) | (!a & !b);  !(a <-> b) == (a & !b) | (!a & b)
        const int a = build(f.lhs(), false), na = build(f.lhs(), true);
        const int b = build(f.rhs(), false), nb = build(f.rhs(), true);
        if (!neg) return binary(NnfKind::kOr, binary(NnfKind::kAnd, a, b), binary(NnfKind::kAnd, na, nb));
        return binary(NnfKind::kOr, binary(NnfKind::kAnd, a, nb), binary(NnfKind::kAnd, na, b));
      }
      case FormulaKind::kNext: return intern({NnfKind::kNext, 0, true, build(f.lhs(), neg)});
      case FormulaKind::kUntil:
        return intern({neg ? NnfKind::kRelease : NnfKind::kUntil, 0, true, build(f.lhs(), neg), build(f.rhs(), neg)});
      case FormulaKind::kEventually:
        if (neg) return intern({NnfKind::kRelease, 0, true, constant(false), build(f.lhs(), true)});
        return intern({NnfKind::kUntil, 0, true, constant(true), build(f.lhs(), false)});
      case FormulaKind::kGlobally:
        if (neg) return intern({NnfKind::kUntil, 0, true, constant(true), build(f.lhs(), true)});
        return intern({NnfKind::kRelease, 0, true, constant(false), build(f.lhs(), false)});
    }
    throw std::logic_error("unhandled formula kind");
  }

  std::vector<int> untils() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].kind == NnfKind::kUntil) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  int constant(bool value) { return intern({value ? NnfKind::kTrue : NnfKind::kFalse}); }

  int binary(NnfKind kind, int a, int b) {
    const NnfKind unit = kind == NnfKind::kAnd ? NnfKind::kTrue : NnfKind::kFalse;
    const NnfKind zero = kind == NnfKind::kAnd ? NnfKind::kFalse : NnfKind::kTrue;
    if (at(a).kind == zero || at(b).kind == zero) return constant(zero == NnfKind::kTrue);
    if (at(a).kind == unit) return b;
    if (at(b).kind == unit) return a;
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    return intern({kind, 0, true, a, b});
  }

  int intern(NnfNode n) {
    auto key = std::make_tuple(static_cast<int>(n.kind), n.prop, n.positive, n.lhs, n.rhs);
    auto [it, fresh] = index_.emplace(key, static_cast<int>(nodes_.size()));
    if (fresh) nodes_.push_back(n);
    return it->second;
  }

  const std::vector<std::string>& ap_;
  std::vector<NnfNode> nodes_;
  std::map<std::tuple<int, std::size_t, bool, int, int>, int> index_;
};

// ---------------------------------------------------------------------------
// Tableau expansion

struct Branch {
  Letter pos = 0;  // propositions required true
  Letter neg = 0;  // propositions required false
  std::vector<int> next;
  std::vector<int> postponed;  // untils deferred to the next step

  auto key() const { return std::tie(pos, neg, next, postponed); }
};

void expand(const NnfTable& table, std::vector<int> todo, std::set<int> done, Branch branch,
            std::vector<Branch>& out) {
  while (!todo.empty()) {
    const int id = todo.back();
    todo.pop_back();
    if (!done.insert(id).second) continue;
    const NnfNode& n = table.at(id);
    switch (n.kind) {
      case NnfKind::kTrue: break;
      case NnfKind::kFalse: return;
      case NnfKind::kLit: {
        const Letter bit = Letter{1} << n.prop;
        (n.positive ? branch.pos : branch.neg) |= bit;
        if (branch.pos & branch.neg) return;
        break;
      }
      case NnfKind::kAnd:
        todo.push_back(n.lhs);
        todo.push_back(n.rhs);
        break;
      case NnfKind::kOr: {
        auto left = todo;
        left.push_back(n.lhs);
        expand(table, std::move(left), done, branch, out);
        todo.push_back(n.rhs);
        break;
      }
      case NnfKind::kNext: branch.next.push_back(n.lhs); break;
      case NnfKind::kUntil: {
        auto now = todo;
        now.push_back(n.rhs);
        expand(table, std::move(now), done, branch, out);
        todo.push_back(n.lhs);
        branch.next.push_back(id);
        branch.postponed.push_back(id);
        break;
      }
      case NnfKind::kRelease: {
        auto now = todo;
        now.push_back(n.rhs);
        now.push_back(n.lhs);
        expand(table, std::move(now), done, branch, out);
        todo.push_back(n.rhs);
        branch.next.push_back(id);
        break;
      }
    }
  }
  auto normalize = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(branch.next);
  normalize(branch.postponed);
  out.push_back(std::move(branch));
}

std::vector<Branch> expand_state(const NnfTable& table, const std::vector<int>& obligations) {
  std::vector<Branch> raw;
  expand(table, obligations, {}, Branch{}, raw);
  std::sort(raw.begin(), raw.end(), [](const Branch& a, const Branch& b) { return a.key() < b.key(); });
  raw.erase(std::unique(raw.begin(), raw.end(), [](const Branch& a, const Branch& b) { return a.key() == b.key(); }),
            raw.end());
  return raw;
}

// Keeps states that can reach a cycle through an accepting state.
Nba prune(const Nba& in) {
  Digraph g(in.num_states);
  for (std::size_t s = 0; s < in.num_states; ++s) {
    for (const auto& succ : in.delta[s]) g[s].insert(g[s].end(), succ.begin(), succ.end());
    std::sort(g[s].begin(), g[s].end());
    g[s].erase(std::unique(g[s].begin(), g[s].end()), g[s].end());
  }
  const auto sccs = tarjan_scc(g);
  const auto comp = component_index(sccs, in.num_states);
  std::vector<bool> good(in.num_states, false);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    bool accepting = false, cyclic = sccs[c].size() > 1;
    for (std::size_t v : sccs[c]) {
      accepting = accepting || in.accepting[v];
      for (std::size_t w : g[v]) cyclic = cyclic || w == v;
    }
    if (accepting && cyclic)
      for (std::size_t v : sccs[c]) good[v] = true;
  }
  good = backward_reachable(g, good);

  std::vector<std::size_t> renumber(in.num_states, SIZE_MAX);
  Nba out;
  out.ap = in.ap;
  for (std::size_t s = 0; s < in.num_states; ++s)
    if (good[s]) renumber[s] = out.num_states++;
  for (std::size_t s : in.initial)
    if (good[s]) out.initial.push_back(renumber[s]);
  out.delta.resize(out.num_states);
  out.accepting.resize(out.num_states);
  for (std::size_t s = 0; s < in.num_states; ++s) {
    if (!good[s]) continue;
    const std::size_t t = renumber[s];
    out.accepting[t] = in.accepting[s];
    out.delta[t].resize(in.num_letters());
    for (std::size_t l = 0; l < in.num_letters(); ++l)
      for (std::size_t succ : in.delta[s][l])
        if (good[succ]) out.delta[t][l].push_back(renumber[succ]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Safra trees

using StateSet = std::vector<std::uint32_t>;  // sorted

struct SafraNode {
  int name = 0;
  bool marked = false;
  StateSet label;
  std::vector<SafraNode> children;  // oldest first
};

StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

StateSet set_minus(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class Safra {
 public:
  explicit Safra(const Nba& nba) : nba_(nba) {}

  std::optional<SafraNode> initial() const {
    if (nba_.initial.empty()) return std::nullopt;
    SafraNode root;
    root.name = 1;
    for (std::size_t s : nba_.initial) root.label.push_back(static_cast<std::uint32_t>(s));
    std::sort(root.label.begin(), root.label.end());
    root.label.erase(std::unique(root.label.begin(), root.label.end()), root.label.end());
    return root;
  }

  std::optional<SafraNode> step(const SafraNode& from, Letter letter) const {
    SafraNode root = from;
    std::vector<bool> used;
    collect_names(root, used);
    unmark(root);
    spawn(root, used);
    advance(root, letter);
    horizontal_merge(root, {});
    if (root.label.empty()) return std::nullopt;
    remove_empty(root);
    vertical_merge(root);
    return root;
  }

  static void serialize(const SafraNode& n, std::vector<int>& out) {
    out.push_back(n.name);
    out.push_back(n.marked ? 1 : 0);
    out.push_back(static_cast<int>(n.label.size()));
    for (auto s : n.label) out.push_back(static_cast<int>(s));
    out.push_back(static_cast<int>(n.children.size()));
    for (const auto& c : n.children) serialize(c, out);
  }

  static void names(const SafraNode& n, std::vector<std::pair<int, bool>>& out) {
    out.emplace_back(n.name, n.marked);
    for (const auto& c : n.children) names(c, out);
  }

 private:
  static void collect_names(const SafraNode& n, std::vector<bool>& used) {
    if (used.size() <= static_cast<std::size_t>(n.name)) used.resize(n.name + 1, false);
    used[n.name] = true;
    for (const auto& c : n.children) collect_names(c, used);
  }

  static int fresh_name(std::vector<bool>& used) {
    for (std::size_t i = 1;; ++i) {
      if (i >= used.size()) used.resize(i + 1, false);
      if (!used[i]) {
        used[i] = true;
        return static_cast<int>(i);
      }
    }
  }

  static void unmark(SafraNode& n) {
    n.marked = false;
    for (auto& c : n.children) unmark(c);
  }

  // Every node whose label meets the accepting states gets a youngest child
  // labelled with that intersection.
  void spawn(SafraNode& n, std::vector<bool>& used) const {
    for (auto& c : n.children) spawn(c, used);
    StateSet accepting;
    for (auto s : n.label)
      if (nba_.accepting[s]) accepting.push_back(s);
    if (!accepting.empty()) {
      SafraNode child;
      child.name = fresh_name(used);
      child.label = std::move(accepting);
      n.children.push_back(std::move(child));
    }
  }

  void advance(SafraNode& n, Letter letter) const {
    StateSet next;
    for (auto s : n.label) {
      const auto& succ = nba_.delta[s][letter];
      next.insert(next.end(), succ.begin(), succ.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    n.label = std::move(next);
    for (auto& c : n.children) advance(c, letter);
  }

  // A state kept by an older sibling is removed from every younger sibling's subtree.
  static void horizontal_merge(SafraNode& n, const StateSet& forbidden) {
    if (!forbidden.empty()) n.label = set_minus(n.label, forbidden);
    StateSet seen = forbidden;
    for (auto& c : n.children) {
      horizontal_merge(c, seen);
      seen = set_union(seen, c.label);
    }
  }

  static void remove_empty(SafraNode& n) {
    std::erase_if(n.children, [](const SafraNode& c) { return c.label.empty(); });
    for (auto& c : n.children) remove_empty(c);
  }

  static void vertical_merge(SafraNode& n) {
    if (n.children.empty()) return;
    std::size_t covered = 0;
    for (const auto& c : n.children) covered += c.label.size();  // children are disjoint
    if (covered == n.label.size()) {
      n.children.clear();
      n.marked = true;
      return;
    }
    for (auto& c : n.children) vertical_merge(c);
  }

  const Nba& nba_;
};

}  // namespace

Nba ltl_to_nba(const Formula& f, const std::vector<std::string>& ap) {
  if (ap.size() > kMaxAlphabetProps) throw InputError("alphabet has too many propositions");
  NnfTable table(ap);
  const int root = table.build(f, false);
  const auto untils = table.untils();
  if (untils.size() > 64) throw ResourceLimitError("formula has more than 64 until subformulas");
  const std::size_t m = untils.size();

  // Generalized automaton over obligation sets.
  struct TgbaEdge {
    Letter pos, neg;
    std::size_t target;
    std::uint64_t acc;  // bit j set: accepting for untils[j]
  };
  std::map<std::vector<int>, std::size_t> tgba_index;
  std::vector<std::vector<int>> tgba_states;
  std::vector<std::vector<TgbaEdge>> tgba_edges;
  auto tgba_id = [&](const std::vector<int>& s) {
    auto [it, fresh] = tgba_index.emplace(s, tgba_states.size());
    if (fresh) tgba_states.push_back(s);
    return it->second;
  };
  tgba_id({root});
  for (std::size_t s = 0; s < tgba_states.size(); ++s) {
    std::vector<TgbaEdge> edges;
    for (const Branch& b : expand_state(table, tgba_states[s])) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (!std::binary_search(b.postponed.begin(), b.postponed.end(), untils[j])) acc |= std::uint64_t{1} << j;
      edges.push_back({b.pos, b.neg, tgba_id(b.next), acc});
    }
    tgba_edges.push_back(std::move(edges));
  }

  // Degeneralize: (obligations, awaited until index, accepting flag).
  Nba nba;
  nba.ap = ap;
  const std::size_t letters = nba.num_letters();
  std::map<std::tuple<std::size_t, std::size_t, bool>, std::size_t> index;
  std::vector<std::tuple<std::size_t, std::size_t, bool>> states;
  auto nba_id = [&](std::size_t t, std::size_t j, bool acc) {
    auto key = std::make_tuple(t, j, acc);
    auto [it, fresh] = index.emplace(key, states.size());
    if (fresh) states.push_back(key);
    return it->second;
  };
  nba.initial.push_back(nba_id(0, 0, m == 0));
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto [t, j, acc] = states[s];
    std::vector<std::vector<std::size_t>> row(letters);
    for (const TgbaEdge& e : tgba_edges[t]) {
      std::size_t next_j = j;
      while (next_j < m && (e.acc >> next_j & 1)) ++next_j;
      const bool wrapped = next_j == m;
      const std::size_t target = nba_id(e.target, wrapped ? 0 : next_j, wrapped);
      for (Letter l = 0; l < letters; ++l)
        if ((l & e.pos) == e.pos && (l & e.neg) == 0) row[l].push_back(target);
    }
    for (auto& succ : row) {
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
    nba.delta.push_back(std::move(row));
  }
  nba.num_states = states.size();
  nba.accepting.resize(nba.num_states);
  for (std::size_t s = 0; s < nba.num_states; ++s) nba.accepting[s] = std::get<2>(states[s]);
  return prune(nba);
}

namespace {

// Quotient by the coarsest partition that respects pair membership and
// successor blocks; language-preserving for Rabin acceptance.
Dra merge_equivalent_states(const Dra& in) {
  const std::size_t n = in.num_states, letters = in.num_letters();
  std::vector<std::size_t> block(n);
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> key;
      if (count == 0) {
        for (const auto& pair : in.pairs) {
          key.push_back(pair.fin[s]);
          key.push_back(pair.inf[s]);
        }
      } else {
        key.push_back(block[s]);
        for (Letter l = 0; l < letters; ++l) key.push_back(block[in.next(s, l)]);
      }
      next[s] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    const bool stable = ids.size() == count;
    block = std::move(next);
    count = ids.size();
    if (stable) break;
  }

  // renumber blocks in order of their first state so the initial state keeps a small index
  std::vector<std::size_t> order(count, SIZE_MAX), rep(count);
  std::size_t used = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (order[block[s]] == SIZE_MAX) {
      order[block[s]] = used++;
      rep[order[block[s]]] = s;
    }
  Dra out;
  out.ap = in.ap;
  out.num_states = count;
  out.initial = order[block[in.initial]];
  out.delta.resize(count * letters);
  for (std::size_t b = 0; b < count; ++b)
    for (Letter l = 0; l < letters; ++l) out.delta[b * letters + l] = order[block[in.next(rep[b], l)]];
  for (const auto& pair : in.pairs) {
    RabinPair p{std::vector<bool>(count), std::vector<bool>(count)};
    for (std::size_t b = 0; b < count; ++b) {
      p.fin[b] = pair.fin[rep[b]];
      p.inf[b] = pair.inf[rep[b]];
    }
    out.pairs.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Dra determinize(const Nba& nba, const TranslationOptions& options) {
  if (nba.ap.size() > kMaxAlphabetProps) throw InputError("alphabet has too many propositions");
  Safra safra(nba);
  Dra dra;
  dra.ap = nba.ap;
  const std::size_t letters = dra.num_letters();

  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::optional<SafraNode>> trees;
  auto tree_id = [&](std::optional<SafraNode> t) {
    std::vector<int> key;
    if (t) Safra::serialize(*t, key);
    auto [it, fresh] = index.emplace(std::move(key), trees.size());
    if (fresh) {
      if (trees.size() >= options.max_states)
        throw ResourceLimitError("deterministic automaton exceeds " + std::to_string(options.max_states) +
                                 " states; translate the formula externally and import it as HOA");
      trees.push_back(std::move(t));
    }
    return it->second;
  };

  dra.initial = tree_id(safra.initial());
  for (std::size_t s = 0; s < trees.size(); ++s) {
    for (Letter l = 0; l < letters; ++l) {
      std::size_t target;
      if (!trees[s]) target = s;
      else target = tree_id(safra.step(*trees[s], l));
      dra.delta.push_back(target);
    }
  }
  dra.num_states = trees.size();

  int max_name = 0;
  std::vector<std::vector<std::pair<int, bool>>> names(trees.size());
  for (std::size_t s = 0; s < trees.size(); ++s) {
    if (trees[s]) Safra::names(*trees[s], names[s]);
    for (const auto& [name, marked] : names[s]) max_name = std::max(max_name, name);
  }
  for (int name = 1; name <= max_name; ++name) {
    RabinPair pair{std::vector<bool>(dra.num_states, true), std::vector<bool>(dra.num_states, false)};
    bool any = false;
    for (std::size_t s = 0; s < trees.size(); ++s)
      for (const auto& [n, marked] : names[s])
        if (n == name) {
          pair.fin[s] = false;
          pair.inf[s] = marked;
          any = any || marked;
        }
    if (any) dra.pairs.push_back(std::move(pair));
  }
  if (dra.pairs.empty())
    dra.pairs.push_back({std::vector<bool>(dra.num_states, true), std::vector<bool>(dra.num_states, false)});
  return merge_equivalent_states(dra);
}

Dra ltl_to_dra(const Formula& f, const std::vector<std::string>& ap, const TranslationOptions& options) {
  return determinize(ltl_to_nba(f, ap), options);
}

}  // namespace mpts
