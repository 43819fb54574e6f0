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

#ifndef MPTS_SYNTHESIS_HPP
#define MPTS_SYNTHESIS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mpts/automata.hpp"
#include "mpts/logic.hpp"
#include "mpts/model.hpp"

namespace mpts {

/// Called on every partial controller before its subtree is explored;
/// `frontier` lists the reachable states still unassigned. Returning false
/// skips every completion of `partial`.
using PartialFilter = std::function<bool(const Controller& partial, std::span<const StateId> frontier)>;

/**
 * Backtracking enumeration of controllers, each total on exactly the states
 * it makes reachable.
 *
 * States are assigned in breadth-first discovery order from the initial
 * state; candidate cooperative joint actions are tried in lexicographic order
 * of action indices. The stream order is deterministic and every
 * reachable-restricted controller appears exactly once.
 */
class ControllerEnumerator {
 public:
  explicit ControllerEnumerator(const Mpts& model, PartialFilter filter = {});

  /// Next controller, or nullopt once the space is exhausted.
  std::optional<Controller> next();

  std::size_t partial_checks() const noexcept { return partial_checks_; }
  std::size_t pruned() const noexcept { return pruned_; }

 private:
  static constexpr std::size_t kNotStarted = static_cast<std::size_t>(-1);

  struct Frame {
    StateId state;
    std::vector<JointAction> options;
    std::size_t choice;      // index into options, or kNotStarted
    std::size_t order_size;  // discovery-list length before this frame's choice
  };

  void undo(const Frame& frame);
  void apply(const Frame& frame);

  const Mpts* model_;
  PartialFilter filter_;
  std::vector<StateId> order_;
  std::vector<char> discovered_;
  std::vector<Frame> stack_;
  Controller current_;
  std::size_t partial_checks_ = 0;
  std::size_t pruned_ = 0;
};

struct SynthesisOptions {
  std::size_t max_candidates = 10'000'000;
  /// Skip partial controllers whose optimistic bound is below the threshold.
  bool prune = true;
  TranslationOptions translation;
};

enum class SynthesisStatus { kFound, kNoController, kCandidateLimit };

struct SynthesisStats {
  std::size_t candidates = 0;      // complete controllers evaluated
  std::size_t partial_checks = 0;  // partial controllers bounded
  std::size_t pruned = 0;          // partial controllers rejected by the bound
  std::size_t automaton_states = 0;
};

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::kNoController;
  std::optional<Controller> controller;
  double probability = 0.0;  // of the returned controller
  SynthesisStats stats;
};

/**
 * First controller in enumeration order whose controlled system satisfies `f`
 * with probability >= threshold (within kProbabilityTolerance).
 *
 * The automaton is built once. With `prune`, a partial controller is
 * discarded when completion_upper_bound is below the threshold; the bound
 * never underestimates, so the result equals that of the unpruned search.
 */
SynthesisResult synthesize(const Mpts& model, const Formula& f, double threshold, const SynthesisOptions& options = {});
SynthesisResult synthesize(const Mpts& model, const Dra& dra, double threshold, const SynthesisOptions& options = {});

/// Probability that `model` under `controller` satisfies `f`. Throws InputError for invalid controllers.
double verify_controller(const Mpts& model, const Controller& controller, const Formula& f);
double verify_controller(const Mpts& model, const Controller& controller, const Dra& dra);

/**
 * Upper bound on the satisfaction probability of any completion of `partial`.
 *
 * Computes the maximal satisfaction probability of the product MDP in which
 * states without a controller entry may pick any cooperative joint action
 * (even with memory or randomization). Reported values never fall below the
 * true maximum.
 */
double completion_upper_bound(const Mpts& model, const Controller& partial, const Dra& dra);

}  // namespace mpts

#endif  // MPTS_SYNTHESIS_HPP
