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

#ifndef MPTS_GRAPH_HPP
#define MPTS_GRAPH_HPP

#include <cstddef>
#include <vector>

namespace mpts {

/// Adjacency lists; parallel edges and self-loops are allowed.
using Digraph = std::vector<std::vector<std::size_t>>;

/// Maximal strongly connected components (iterative Tarjan). Components are
/// returned in reverse topological order: every edge leaving a component
/// points to a component listed earlier. Each component is sorted.
std::vector<std::vector<std::size_t>> tarjan_scc(const Digraph& g);

/// Component index per node, for the partition returned by tarjan_scc.
std::vector<std::size_t> component_index(const std::vector<std::vector<std::size_t>>& sccs, std::size_t num_nodes);

/// SCCs of `g` with no edge leaving the component.
std::vector<std::vector<std::size_t>> bottom_sccs(const Digraph& g);

/// Nodes from which some node in `target` is reachable (targets included).
std::vector<bool> backward_reachable(const Digraph& g, const std::vector<bool>& target);

}  // namespace mpts

#endif  // MPTS_GRAPH_HPP
