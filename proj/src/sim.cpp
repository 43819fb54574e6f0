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

#include "mpts/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "mpts/error.hpp"
#include "mpts/graph.hpp"

namespace mpts {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Counts {
  std::size_t accepted = 0;
  std::size_t censored = 0;
};

}  // namespace

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state = a ^ index;
  return splitmix64(state);
}

std::size_t sample_successor(const MarkovChain& chain, std::size_t state, std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const auto& row = chain.rows[state];
  double acc = 0.0;
  for (const auto& t : row) {
    acc += t.probability;
    if (u < acc) return t.target;
  }
  // Rounding left u above the accumulated mass: take the last positive entry.
  for (auto it = row.rbegin(); it != row.rend(); ++it)
    if (it->probability > 0.0) return it->target;
  throw InputError("chain row without positive probability");
}

std::vector<std::size_t> sample_path(const MarkovChain& chain, std::size_t start, std::size_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(run_seed(seed, 0));
  std::vector<std::size_t> path{start};
  for (std::size_t i = 0; i < steps; ++i) path.push_back(sample_successor(chain, path.back(), rng));
  return path;
}

Estimate estimate_probability(const ProductAutomaton& g, std::size_t runs, std::uint64_t seed,
                              const SimulationOptions& options) {
  if (runs == 0) throw InputError("runs must be at least 1");
  const MarkovChain chain = g.chain();
  const std::size_t n = chain.size();

  // -1: transient, 0: rejecting BSCC, 1: accepting BSCC
  std::vector<int> bottom(n, -1);
  for (const auto& b : bottom_sccs(chain.graph())) {
    bool accepting = false;
    for (const auto& pair : g.pairs) {
      bool fin = false, inf = false;
      for (std::size_t s : b) {
        fin = fin || pair.fin[s];
        inf = inf || pair.inf[s];
      }
      accepting = accepting || (!fin && inf);
    }
    for (std::size_t s : b) accepting = accepting && !g.frontier[s];
    for (std::size_t s : b) bottom[s] = accepting ? 1 : 0;
  }

  auto simulate = [&](std::size_t begin, std::size_t end, Counts& out) {
    for (std::size_t run = begin; run < end; ++run) {
      std::mt19937_64 rng(run_seed(seed, run));
      std::size_t s = chain.initial;
      std::size_t steps = 0;
      while (bottom[s] < 0 && steps < options.max_steps) {
        s = sample_successor(chain, s, rng);
        ++steps;
      }
      if (bottom[s] < 0) ++out.censored;
      else if (bottom[s] == 1) ++out.accepted;
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, runs));
  std::vector<Counts> counts(workers);
  if (workers == 1) {
    simulate(0, runs, counts[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(simulate, runs * w / workers, runs * (w + 1) / workers, std::ref(counts[w]));
    for (auto& t : pool) t.join();
  }

  Estimate e;
  e.runs = runs;
  e.generator = kGeneratorName;
  for (const auto& c : counts) {
    e.accepted += c.accepted;
    e.censored += c.censored;
  }
  e.probability = static_cast<double>(e.accepted) / static_cast<double>(runs);
  e.standard_error = std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(runs));
  return e;
}

}  // namespace mpts
