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

#ifndef MPTS_CHAIN_HPP
#define MPTS_CHAIN_HPP

#include <cstddef>
#include <vector>

namespace mpts {

struct ChainTransition {
  std::size_t target;
  double probability;
};

/// Finite discrete-time Markov chain in sparse row form. Rows list each
/// successor at most once.
struct MarkovChain {
  std::size_t initial = 0;
  std::vector<std::vector<ChainTransition>> rows;

  std::size_t size() const noexcept { return rows.size(); }

  /// Successor lists without probabilities.
  std::vector<std::vector<std::size_t>> graph() const {
    std::vector<std::vector<std::size_t>> g(rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
      g[s].reserve(rows[s].size());
      for (const auto& t : rows[s]) g[s].push_back(t.target);
    }
    return g;
  }
};

}  // namespace mpts

#endif  // MPTS_CHAIN_HPP
