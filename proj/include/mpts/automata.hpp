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

#ifndef MPTS_AUTOMATA_HPP
#define MPTS_AUTOMATA_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mpts/logic.hpp"

namespace mpts {

/// Alphabets are capped so that explicit per-letter transition tables stay small.
inline constexpr std::size_t kMaxAlphabetProps = 16;

/// Rabin pair (L, K) as per-state membership flags: a run is accepted by the
/// pair if it visits L finitely often and K infinitely often.
struct RabinPair {
  std::vector<bool> fin;  // L
  std::vector<bool> inf;  // K
};

/**
 * Deterministic, complete Rabin automaton over 2^ap with state-based acceptance.
 * Letters are bitsets over `ap` (bit i = ap[i]).
 */
struct Dra {
  std::vector<std::string> ap;
  std::size_t num_states = 0;
  std::size_t initial = 0;
  std::vector<std::size_t> delta;  // [state * num_letters() + letter]
  std::vector<RabinPair> pairs;

  std::size_t num_letters() const noexcept { return std::size_t{1} << ap.size(); }
  std::size_t next(std::size_t state, Letter letter) const { return delta[state * num_letters() + letter]; }

  /// Rabin condition for a run whose infinity set is `inf_states`.
  bool accepts_infinity_set(const std::vector<bool>& inf_states) const;
};

/// Throws InputError unless `r` is complete, deterministic and has at least one pair.
void check_dra(const Dra& r);

/// Re-encodes `letter` over `from` as a letter over `to`; propositions missing from `to` are dropped.
Letter translate_letter(Letter letter, const std::vector<std::string>& from, const std::vector<std::string>& to);

/// States visited infinitely often by the run of `r` on `w`.
std::vector<bool> infinity_set(const Dra& r, const LassoWord& w);

bool dra_accepts_lasso(const Dra& r, const LassoWord& w);

/// Nondeterministic Büchi automaton with state-based acceptance.
struct Nba {
  std::vector<std::string> ap;
  std::size_t num_states = 0;
  std::vector<std::size_t> initial;
  std::vector<std::vector<std::vector<std::size_t>>> delta;  // [state][letter] -> sorted successors
  std::vector<bool> accepting;

  std::size_t num_letters() const noexcept { return std::size_t{1} << ap.size(); }
};

struct TranslationOptions {
  std::size_t max_states = 1'000'000;
};

/// Tableau translation of `f` into a Büchi automaton over 2^ap, via a
/// transition-based generalized Büchi automaton and counter degeneralization.
/// States that cannot reach an accepting cycle are removed.
Nba ltl_to_nba(const Formula& f, const std::vector<std::string>& ap);

/// Safra-tree determinization. Throws ResourceLimitError past `options.max_states`.
Dra determinize(const Nba& nba, const TranslationOptions& options = {});

/// ltl_to_nba followed by determinize. The result accepts exactly the models of `f`.
Dra ltl_to_dra(const Formula& f, const std::vector<std::string>& ap, const TranslationOptions& options = {});

/// HOA v1 text for `r` (state-based Rabin acceptance, explicit letter labels).
std::string export_hoa(const Dra& r);

/**
 * Reads a deterministic, complete, state-based Rabin automaton in HOA v1.
 * Edge labels are expanded to explicit letters; implicit labels are accepted.
 * Throws InputError naming the unsupported feature otherwise.
 */
Dra import_hoa(std::string_view text);

}  // namespace mpts

#endif  // MPTS_AUTOMATA_HPP
