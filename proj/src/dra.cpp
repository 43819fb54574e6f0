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

#include <algorithm>
#include <map>

#include "mpts/automata.hpp"
#include "mpts/error.hpp"

namespace mpts {

bool Dra::accepts_infinity_set(const std::vector<bool>& inf_states) const {
  for (const auto& pair : pairs) {
    bool hits_fin = false, hits_inf = false;
    for (std::size_t s = 0; s < num_states; ++s) {
      if (!inf_states[s]) continue;
      hits_fin = hits_fin || pair.fin[s];
      hits_inf = hits_inf || pair.inf[s];
    }
    if (!hits_fin && hits_inf) return true;
  }
  return false;
}

void check_dra(const Dra& r) {
  if (r.ap.size() > kMaxAlphabetProps) throw InputError("automaton alphabet has too many propositions");
  if (r.num_states == 0) throw InputError("automaton has no states");
  if (r.initial >= r.num_states) throw InputError("initial state out of range");
  if (r.delta.size() != r.num_states * r.num_letters()) throw InputError("transition table is not complete");
  for (std::size_t t : r.delta)
    if (t >= r.num_states) throw InputError("transition target out of range");
  if (r.pairs.empty()) throw InputError("automaton has no Rabin pairs");
  for (const auto& p : r.pairs)
    if (p.fin.size() != r.num_states || p.inf.size() != r.num_states)
      throw InputError("Rabin pair does not cover every state");
}

Letter translate_letter(Letter letter, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  Letter out = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!(letter & (Letter{1} << i))) continue;
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it != to.end()) out |= Letter{1} << (it - to.begin());
  }
  return out;
}

std::vector<bool> infinity_set(const Dra& r, const LassoWord& w) {
  if (w.cycle.empty()) throw InputError("lasso word with empty cycle");
  std::size_t state = r.initial;
  for (Letter l : w.prefix) state = r.next(state, translate_letter(l, w.ap, r.ap));

  std::vector<Letter> cycle;
  cycle.reserve(w.cycle.size());
  for (Letter l : w.cycle) cycle.push_back(translate_letter(l, w.ap, r.ap));

  // The run is periodic once the state at a cycle boundary repeats.
  std::map<std::size_t, std::size_t> first_seen;  // boundary state -> period index
  std::vector<std::vector<std::size_t>> visited;  // states visited per period
  for (std::size_t period = 0;; ++period) {
    auto [it, fresh] = first_seen.emplace(state, period);
    if (!fresh) {
      std::vector<bool> inf(r.num_states, false);
      for (std::size_t p = it->second; p < period; ++p)
        for (std::size_t s : visited[p]) inf[s] = true;
      return inf;
    }
    visited.emplace_back();
    for (Letter l : cycle) {
      visited.back().push_back(state);
      state = r.next(state, l);
    }
  }
}

bool dra_accepts_lasso(const Dra& r, const LassoWord& w) { return r.accepts_infinity_set(infinity_set(r, w)); }

}  // namespace mpts
