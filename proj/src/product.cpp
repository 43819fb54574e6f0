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

#include "mpts/product.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "mpts/error.hpp"

namespace mpts {

Letter label_letter(const Mpts& model, StateId x, const std::vector<std::string>& ap) {
  Letter l = 0;
  for (PropId p : model.labels.at(x)) {
    auto it = std::find(ap.begin(), ap.end(), model.atomic_props.at(p));
    if (it != ap.end()) l |= Letter{1} << (it - ap.begin());
  }
  return l;
}

ProductAutomaton build_product(const ControlledSystem& system, const Dra& dra) {
  const Mpts& model = system.model();
  {
    std::set<std::string> a(model.atomic_props.begin(), model.atomic_props.end());
    std::set<std::string> b(dra.ap.begin(), dra.ap.end());
    if (a != b) {
      std::string diff;
      for (const auto& p : a)
        if (!b.count(p)) diff += " " + p + "(model only)";
      for (const auto& p : b)
        if (!a.count(p)) diff += " " + p + "(automaton only)";
      throw InputError("atomic propositions of model and automaton differ:" + diff);
    }
  }

  std::vector<Letter> letter(model.num_states(), 0);
  for (StateId x : system.reachable()) letter[x] = label_letter(model, x, dra.ap);

  ProductAutomaton g;
  std::map<std::pair<StateId, std::size_t>, std::size_t> index;
  std::deque<std::size_t> queue;
  auto id_of = [&](StateId x, std::size_t r) {
    auto [it, fresh] = index.emplace(std::make_pair(x, r), g.states.size());
    if (fresh) {
      g.states.push_back({x, r});
      g.edges.emplace_back();
      g.frontier.push_back(system.is_frontier(x));
      queue.push_back(it->second);
    }
    return it->second;
  };
  id_of(model.initial, dra.initial);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const auto [x, r] = g.states[s];
    const std::size_t r_next = dra.next(r, letter[x]);
    std::vector<ProductEdge> out;
    for (const auto& e : system.edges(x)) out.push_back({e.joint, e.probability, id_of(e.target, r_next)});
    g.edges[s] = std::move(out);
  }

  for (const auto& pair : dra.pairs) {
    RabinPair lifted{std::vector<bool>(g.size()), std::vector<bool>(g.size())};
    for (std::size_t s = 0; s < g.size(); ++s) {
      lifted.fin[s] = pair.fin[g.states[s].dra];
      lifted.inf[s] = pair.inf[g.states[s].dra];
    }
    g.pairs.push_back(std::move(lifted));
  }
  return g;
}

MarkovChain ProductAutomaton::chain() const {
  MarkovChain c;
  c.initial = 0;
  c.rows.resize(size());
  for (std::size_t s = 0; s < size(); ++s) {
    std::map<std::size_t, double> merged;
    for (const auto& e : edges[s]) merged[e.target] += e.probability;
    if (merged.empty()) merged[s] = 1.0;
    for (const auto& [t, p] : merged) c.rows[s].push_back({t, p});
  }
  return c;
}

Digraph ProductAutomaton::graph() const { return chain().graph(); }

std::string product_to_dot(const ProductAutomaton& g, const Mpts& model, const std::vector<bool>& highlight) {
  std::ostringstream out;
  out << "digraph product {\n  node [shape=box];\n";
  out << "  init [shape=point];\n  init -> s0;\n";
  for (std::size_t s = 0; s < g.size(); ++s) {
    std::string fin, inf;
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
      if (g.pairs[i].fin[s]) fin += (fin.empty() ? "" : ",") + std::to_string(i);
      if (g.pairs[i].inf[s]) inf += (inf.empty() ? "" : ",") + std::to_string(i);
    }
    out << "  s" << s << " [label=\"(" << model.states[g.states[s].model] << ", r" << g.states[s].dra << ")";
    if (!fin.empty()) out << "\\nL:" << fin;
    if (!inf.empty()) out << "\\nK:" << inf;
    if (g.frontier[s]) out << "\\nfrontier";
    out << "\"";
    if (s < highlight.size() && highlight[s]) out << ", style=filled, fillcolor=palegreen";
    out << "];\n";
  }
  const MarkovChain c = g.chain();
  for (std::size_t s = 0; s < c.size(); ++s)
    for (const auto& t : c.rows[s]) out << "  s" << s << " -> s" << t.target << " [label=\"" << t.probability << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace mpts
