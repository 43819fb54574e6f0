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

#ifndef MPTS_SIM_HPP
#define MPTS_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mpts/chain.hpp"

#include "mpts/product.hpp"

namespace mpts {

struct SimulationOptions {
  std::size_t max_steps = 1'000'000;  // per run
  unsigned threads = 1;
};

struct Estimate {
  double probability = 0.0;     // accepted / runs
  double standard_error = 0.0;  // sqrt(p(1-p)/runs)
  std::size_t runs = 0;
  std::size_t accepted = 0;
  std::size_t censored = 0;  // runs that hit max_steps before entering a BSCC
  std::string generator;
};

/// Name of the pseudorandom generator and seeding scheme, as reported in Estimate::generator.
inline constexpr const char* kGeneratorName = "mt19937_64/splitmix64(seed,run)";

/// Seed of run `index`. Every run owns its stream, so results do not depend
/// on how runs are split across threads.
std::uint64_t run_seed(std::uint64_t seed, std::uint64_t index);

/// Draws a successor of `state` from its row using one 53-bit uniform variate of `rng`.
std::size_t sample_successor(const MarkovChain& chain, std::size_t state, std::mt19937_64& rng);

/// Random walk of `steps` transitions from `start`; the result has steps + 1 entries.
std::vector<std::size_t> sample_path(const MarkovChain& chain, std::size_t start, std::size_t steps, std::uint64_t seed);

/**
 * Samples `runs` paths of the product chain from its initial state. A run
 * stops on entering a bottom SCC and is counted as accepted if that BSCC is
 * Rabin-accepting.
 */
Estimate estimate_probability(const ProductAutomaton& g, std::size_t runs, std::uint64_t seed,
                              const SimulationOptions& options = {});

}  // namespace mpts

#endif  // MPTS_SIM_HPP
