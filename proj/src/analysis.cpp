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

#include "mpts/analysis.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>

#include "mpts/error.hpp"

namespace mpts {

std::vector<std::vector<std::size_t>> bottom_sccs(const ProductAutomaton& g) { return bottom_sccs(g.graph()); }

std::vector<AcceptingComponent> accepting_component_list(const ProductAutomaton& g) {
  const MarkovChain chain = g.chain();
  std::vector<AcceptingComponent> out;
  for (auto& bscc : bottom_sccs(chain.graph())) {
    if (std::any_of(bscc.begin(), bscc.end(), [&](std::size_t s) { return g.frontier[s]; })) continue;
    bool accepted = false;
    for (const auto& pair : g.pairs) {
      bool meets_fin = false, meets_inf = false;
      for (std::size_t s : bscc) {
        meets_fin = meets_fin || pair.fin[s];
        meets_inf = meets_inf || pair.inf[s];
      }
      if (!meets_fin && meets_inf) {
        accepted = true;
        break;
      }
    }
    if (!accepted) continue;
    AcceptingComponent ac;
    for (std::size_t s : bscc)
      for (const auto& t : chain.rows[s]) ac.probability[{s, t.target}] = t.probability;
    ac.states = std::move(bscc);
    out.push_back(std::move(ac));
  }
  return out;
}

std::vector<std::size_t> accepting_components(const ProductAutomaton& g) {
  std::vector<std::size_t> out;
  for (const auto& ac : accepting_component_list(g)) out.insert(out.end(), ac.states.begin(), ac.states.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> reachability_probability(const MarkovChain& chain, const std::vector<bool>& target) {
  const std::size_t n = chain.size();
  if (target.size() != n) throw InputError("target set size does not match the chain");
  const Digraph g = chain.graph();

  const std::vector<bool> reaches_target = backward_reachable(g, target);
  std::vector<bool> no_path(n);
  for (std::size_t s = 0; s < n; ++s) no_path[s] = !reaches_target[s];

  // States that can reach a no-path state without passing through the target.
  Digraph avoiding(n);
  for (std::size_t s = 0; s < n; ++s)
    if (!target[s]) avoiding[s] = g[s];
  const std::vector<bool> may_fail = backward_reachable(avoiding, no_path);

  std::vector<double> v(n, 0.0);
  std::vector<std::size_t> maybe_index(n, SIZE_MAX);
  std::vector<std::size_t> maybe;
  for (std::size_t s = 0; s < n; ++s) {
    if (target[s] || !may_fail[s]) v[s] = 1.0;
    else if (reaches_target[s]) {
      maybe_index[s] = maybe.size();
      maybe.push_back(s);
    }
  }
  if (maybe.empty()) return v;

  const auto m = static_cast<Eigen::Index>(maybe.size());
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const std::size_t s = maybe[static_cast<std::size_t>(i)];
    triplets.emplace_back(i, i, 1.0);
    for (const auto& t : chain.rows[s]) {
      if (maybe_index[t.target] != SIZE_MAX)
        triplets.emplace_back(i, static_cast<Eigen::Index>(maybe_index[t.target]), -t.probability);
      else
        rhs[i] += t.probability * v[t.target];
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) throw Error("reachability system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);
  for (Eigen::Index i = 0; i < m; ++i) v[maybe[static_cast<std::size_t>(i)]] = std::clamp(x[i], 0.0, 1.0);
  return v;
}

SatisfactionResult check_satisfaction(const ControlledSystem& system, const Dra& dra) {
  SatisfactionResult out;
  out.product = build_product(system, dra);
  out.accepting_states = accepting_components(out.product);
  std::vector<bool> target(out.product.size(), false);
  for (std::size_t s : out.accepting_states) target[s] = true;
  out.values = reachability_probability(out.product.chain(), target);
  out.probability = out.values[out.product.initial()];
  return out;
}

double probability_of_satisfaction(const ControlledSystem& system, const Dra& dra) {
  return check_satisfaction(system, dra).probability;
}

double probability_of_satisfaction(const ControlledSystem& system, const Formula& f) {
  return probability_of_satisfaction(system, ltl_to_dra(f, system.model().atomic_props));
}

}  // namespace mpts
