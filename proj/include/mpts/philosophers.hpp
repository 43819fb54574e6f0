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

#ifndef MPTS_PHILOSOPHERS_HPP
#define MPTS_PHILOSOPHERS_HPP

#include <array>
#include <cstdint>
#include <map>

#include "mpts/model.hpp"

namespace mpts {

/**
 * Three dining philosophers around a table, players "1", "2", "3". Players 1
 * and 2 are cooperative, player 3 is the adversary.
 *
 * Each philosopher runs the same local automaton:
 *
 *     A (thinking)          a -> A   b -> B
 *     B (hungry, no fork)   c -> D   d -> C   f -> B
 *     D (holds left fork)   d -> E   f -> D
 *     C (holds right fork)  c -> E   f -> C
 *     E (eating)            e -> A
 *
 * Here c picks up the left fork, d the right one and f waits. The joint
 * transition applies every philosopher's local step independently, so the
 * model has 125 global states named by the three local states ("AAA" is the
 * initial state).
 *
 * Labels: {q_i} when philosopher i eats and the other two are in A-D, {q4}
 * when nobody eats, and the empty set when two or more eat at once.
 *
 * Only some local probabilities are pinned down by the case study:
 * p1(B) = (c 0.7, d 0.2, f 0.1), p2(A,b) = 0.7 and p3(A,b) = 0.5. Every other
 * entry is a free positive parameter.
 */
struct PhilosophersParameters {
  /// dist[philosopher][local state A..E] : action letter -> probability
  std::array<std::array<std::map<char, double>, 5>, 3> dist;
};

PhilosophersParameters default_philosophers_parameters();

/// Keeps the pinned entries and draws every free entry strictly inside (0, 1).
PhilosophersParameters randomized_philosophers_parameters(std::uint64_t seed);

Mpts generate_philosophers(const PhilosophersParameters& params = default_philosophers_parameters());

}  // namespace mpts

#endif  // MPTS_PHILOSOPHERS_HPP
