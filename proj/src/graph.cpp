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

#include "mpts/graph.hpp"

#include <algorithm>
#include <limits>

namespace mpts {

std::vector<std::vector<std::size_t>> tarjan_scc(const Digraph& g) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const std::size_t v = f.node;
      if (f.edge < g[v].size()) {
        const std::size_t w = g[v][f.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return out;
}

std::vector<std::size_t> component_index(const std::vector<std::vector<std::size_t>>& sccs, std::size_t num_nodes) {
  std::vector<std::size_t> comp(num_nodes, 0);
  for (std::size_t c = 0; c < sccs.size(); ++c)
    for (std::size_t v : sccs[c]) comp[v] = c;
  return comp;
}

std::vector<std::vector<std::size_t>> bottom_sccs(const Digraph& g) {
  auto sccs = tarjan_scc(g);
  const auto comp = component_index(sccs, g.size());
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    bool closed = true;
    for (std::size_t v : sccs[c]) {
      for (std::size_t w : g[v]) {
        if (comp[w] != c) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(sccs[c]));
  }
  return out;
}

std::vector<bool> backward_reachable(const Digraph& g, const std::vector<bool>& target) {
  const std::size_t n = g.size();
  Digraph reverse(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : g[v]) reverse[w].push_back(v);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < n; ++v)
    if (target[v]) {
      seen[v] = true;
      work.push_back(v);
    }
  while (!work.empty()) {
    const std::size_t v = work.back();
    work.pop_back();
    for (std::size_t u : reverse[v])
      if (!seen[u]) {
        seen[u] = true;
        work.push_back(u);
      }
  }
  return seen;
}

}  // namespace mpts
