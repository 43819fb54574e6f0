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

#include "mpts/philosophers.hpp"

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mpts/error.hpp"

namespace mpts {

namespace {

constexpr char kLocalStates[] = "ABCDE";
constexpr char kActions[] = "abcdef";

// Local successor, or '\0' when the action is not available.
char local_step(char state, char action) {
  switch (state) {
    case 'A': return action == 'a' ? 'A' : action == 'b' ? 'B' : '\0';
    case 'B': return action == 'c' ? 'D' : action == 'd' ? 'C' : action == 'f' ? 'B' : '\0';
    case 'C': return action == 'c' ? 'E' : action == 'f' ? 'C' : '\0';
    case 'D': return action == 'd' ? 'E' : action == 'f' ? 'D' : '\0';
    case 'E': return action == 'e' ? 'A' : '\0';
    default: return '\0';
  }
}

int local_index(char state) { return static_cast<int>(std::string_view(kLocalStates).find(state)); }

// Entries fixed by the case study, as (philosopher, local state).
bool pinned(int philosopher, int local) {
  if (local == 4) return true;  // E has a single action
  if (philosopher == 0 && local == 1) return true;
  if (philosopher > 0 && local == 0) return true;
  return false;
}

}  // namespace

PhilosophersParameters default_philosophers_parameters() {
  PhilosophersParameters p;
  for (int i = 0; i < 3; ++i) {
    p.dist[i][0] = {{'a', 0.5}, {'b', 0.5}};
    p.dist[i][1] = {{'c', 0.7}, {'d', 0.2}, {'f', 0.1}};
    p.dist[i][2] = {{'c', 0.6}, {'f', 0.4}};
    p.dist[i][3] = {{'d', 0.6}, {'f', 0.4}};
    p.dist[i][4] = {{'e', 1.0}};
  }
  p.dist[1][0] = {{'a', 0.3}, {'b', 0.7}};
  p.dist[2][0] = {{'a', 0.5}, {'b', 0.5}};
  return p;
}

PhilosophersParameters randomized_philosophers_parameters(std::uint64_t seed) {
  PhilosophersParameters p = default_philosophers_parameters();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s < 5; ++s) {
      if (pinned(i, s)) continue;
      double total = 0.0;
      for (auto& [action, prob] : p.dist[i][s]) total += (prob = weight(rng));
      for (auto& [action, prob] : p.dist[i][s]) prob /= total;
    }
  return p;
}

Mpts generate_philosophers(const PhilosophersParameters& params) {
  Mpts m;
  m.players = {"1", "2", "3"};
  m.cooperative = {0, 1};
  for (const char* a = kActions; *a; ++a) m.actions.emplace_back(1, *a);
  m.atomic_props = {"q1", "q2", "q3", "q4"};

  auto index = [](int l1, int l2, int l3) { return static_cast<StateId>(l1 * 25 + l2 * 5 + l3); };
  for (int l1 = 0; l1 < 5; ++l1)
    for (int l2 = 0; l2 < 5; ++l2)
      for (int l3 = 0; l3 < 5; ++l3) m.states.push_back({kLocalStates[l1], kLocalStates[l2], kLocalStates[l3]});
  m.initial = 0;

  m.labels.assign(m.num_states(), {});
  for (StateId x = 0; x < m.num_states(); ++x) {
    int eating = 0, eater = -1;
    for (int i = 0; i < 3; ++i)
      if (m.states[x][i] == 'E') ++eating, eater = i;
    if (eating == 0) m.labels[x] = {3};
    else if (eating == 1) m.labels[x] = {static_cast<PropId>(eater)};
  }

  m.dist.assign(3, std::vector<std::vector<ActionProbability>>(m.num_states()));
  for (int i = 0; i < 3; ++i)
    for (StateId x = 0; x < m.num_states(); ++x) {
      const int local = local_index(m.states[x][i]);
      for (const auto& [action, prob] : params.dist[i][local]) {
        if (!local_step(m.states[x][i], action))
          throw InputError(std::string("action ") + action + " is not available in local state " + m.states[x][i]);
        m.dist[i][x].push_back({static_cast<ActionId>(action - 'a'), prob});
      }
    }

  m.transitions.assign(m.num_states(), {});
  for (StateId x = 0; x < m.num_states(); ++x) {
    const std::string& s = m.states[x];
    for (ActionId a1 : m.enabled_actions(0, x))
      for (ActionId a2 : m.enabled_actions(1, x))
        for (ActionId a3 : m.enabled_actions(2, x)) {
          const StateId y = index(local_index(local_step(s[0], kActions[a1])), local_index(local_step(s[1], kActions[a2])),
                                  local_index(local_step(s[2], kActions[a3])));
          m.transitions[x][{a1, a2, a3}] = y;
        }
  }
  return m;
}

}  // namespace mpts
