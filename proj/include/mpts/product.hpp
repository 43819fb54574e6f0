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

#ifndef MPTS_PRODUCT_HPP
#define MPTS_PRODUCT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mpts/automata.hpp"
#include "mpts/chain.hpp"
#include "mpts/graph.hpp"
#include "mpts/model.hpp"

namespace mpts {

struct ProductState {
  StateId model;
  std::size_t dra;

  bool operator==(const ProductState&) const = default;
};

struct ProductEdge {
  JointAction joint;
  double probability;
  std::size_t target;
};

/**
 * Controlled system x DRA, restricted to pairs reachable from
 * (x_0, r_0). From (x, r) under joint action a the successor is
 * (f(x, a), delta(r, L(x))): the automaton reads the label of the current
 * model state.
 *
 * Product states of frontier model states (partial controllers) carry no
 * edges and are flagged in `frontier`.
 */
struct ProductAutomaton {
  std::vector<ProductState> states;  // states[0] is the initial pair
  std::vector<std::vector<ProductEdge>> edges;
  std::vector<RabinPair> pairs;  // lifted, indexed by product state
  std::vector<bool> frontier;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t initial() const noexcept { return 0; }

  /// Edges merged by successor; frontier states become absorbing.
  MarkovChain chain() const;
  Digraph graph() const;
};

/// Letter of the model state's label over the automaton's proposition order.
Letter label_letter(const Mpts& model, StateId x, const std::vector<std::string>& ap);

/// Throws InputError listing the symmetric difference if the proposition sets differ.
ProductAutomaton build_product(const ControlledSystem& system, const Dra& dra);

/// GraphViz rendering; nodes list the model state, automaton state and the
/// indices of the Rabin pairs whose L / K sets contain them. Nodes in
/// `highlight` (e.g. accepting components) are filled.
std::string product_to_dot(const ProductAutomaton& g, const Mpts& model, const std::vector<bool>& highlight = {});

}  // namespace mpts

#endif  // MPTS_PRODUCT_HPP
