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

#ifndef MPTS_ANALYSIS_HPP
#define MPTS_ANALYSIS_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mpts/automata.hpp"
#include "mpts/chain.hpp"
#include "mpts/graph.hpp"
#include "mpts/logic.hpp"
#include "mpts/model.hpp"
#include "mpts/product.hpp"

namespace mpts {

/// Closed, strongly connected, Rabin-accepting set of product states with the
/// merged transition probabilities inside it.
struct AcceptingComponent {
  std::vector<std::size_t> states;
  std::map<std::pair<std::size_t, std::size_t>, double> probability;
};

/// Bottom SCCs of the product's underlying graph.
std::vector<std::vector<std::size_t>> bottom_sccs(const ProductAutomaton& g);

/// BSCCs B with B ∩ L = ∅ and B ∩ K ≠ ∅ for some lifted pair (L, K).
/// Frontier states of partial products are never part of a component.
std::vector<AcceptingComponent> accepting_component_list(const ProductAutomaton& g);

/// Union of all accepting components, sorted.
std::vector<std::size_t> accepting_components(const ProductAutomaton& g);

/**
 * Pr(F target) from every state of `chain`.
 *
 * States with no path to `target` get 0; states that cannot reach such a
 * state while avoiding `target` get 1; the remaining linear system is solved
 * by sparse LU factorization.
 */
std::vector<double> reachability_probability(const MarkovChain& chain, const std::vector<bool>& target);

struct SatisfactionResult {
  double probability = 0.0;
  ProductAutomaton product;
  std::vector<std::size_t> accepting_states;
  std::vector<double> values;  // per product state
};

/// Full pipeline against a prebuilt automaton.
SatisfactionResult check_satisfaction(const ControlledSystem& system, const Dra& dra);

/// Pr^{C/M}(f): translate, build the product, find accepting components, solve.
double probability_of_satisfaction(const ControlledSystem& system, const Formula& f);
double probability_of_satisfaction(const ControlledSystem& system, const Dra& dra);

}  // namespace mpts

#endif  // MPTS_ANALYSIS_HPP
