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

#ifndef MPTS_MODEL_HPP
#define MPTS_MODEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpts/chain.hpp"

namespace mpts {

using StateId = std::size_t;
using ActionId = std::size_t;
using PlayerId = std::size_t;
using PropId = std::size_t;

/// One action per player, ordered by player index. Cooperative joint actions
/// (controller outputs) use the same type but list only the cooperative players,
/// again in player-index order.
using JointAction = std::vector<ActionId>;

/// Absolute tolerance for every probability comparison in the library.
inline constexpr double kProbabilityTolerance = 1e-9;

struct ActionProbability {
  ActionId action;
  double probability;
};

/**
 * Multi-agent probabilistic transition system.
 *
 * Plain data; `validate()` checks the structural invariants. Per-player
 * distributions are sparse: an action absent from `dist[i][x]` has
 * probability zero and is therefore disabled for player i at x. The
 * transition table must be defined exactly on the joint actions whose every
 * component is enabled.
 */
struct Mpts {
  std::vector<std::string> players;
  std::vector<PlayerId> cooperative;  // sorted, unique
  std::vector<std::string> states;
  std::vector<std::string> actions;
  StateId initial = 0;
  std::vector<std::string> atomic_props;
  std::vector<std::vector<PropId>> labels;                         // [state] -> sorted props
  std::vector<std::vector<std::vector<ActionProbability>>> dist;   // [player][state] -> sorted by action
  std::vector<std::map<JointAction, StateId>> transitions;         // [state] -> joint -> next

  std::size_t num_players() const noexcept { return players.size(); }
  std::size_t num_states() const noexcept { return states.size(); }

  bool is_cooperative(PlayerId player) const;
  std::vector<PlayerId> adversarial() const;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;
  std::optional<PropId> find_prop(std::string_view name) const;
  std::optional<PlayerId> find_player(std::string_view name) const;

  /// p_i(x, a); zero when the action is not listed.
  double probability(PlayerId player, StateId x, ActionId action) const;
  /// Actions with positive probability for `player` at `x`, ascending.
  std::vector<ActionId> enabled_actions(PlayerId player, StateId x) const;
  std::optional<StateId> successor(StateId x, const JointAction& joint) const;

  /// Renders a joint action as `<c,b,b>`.
  std::string format(const JointAction& joint) const;
};

struct Diagnostic {
  std::string kind;
  std::string message;
};

/// Returns one diagnostic per violated model invariant; empty means valid.
std::vector<Diagnostic> validate(const Mpts& model);

/// All enabled joint actions at `x` in lexicographic order of action indices.
std::vector<JointAction> enabled_joint_actions(const Mpts& model, StateId x);

/// Tuples over the cooperative players (player-index order) of enabled actions, lexicographic.
std::vector<JointAction> cooperative_joint_actions(const Mpts& model, StateId x);

/// Tuples over the adversarial players of enabled actions, lexicographic.
std::vector<JointAction> adversarial_joint_actions(const Mpts& model, StateId x);

/// p(x, a) = product of p_i(x, a_i) over all players. Throws InputError if `joint` is disabled.
double joint_probability(const Mpts& model, StateId x, const JointAction& joint);

/// Deterministic memoryless controller: state -> cooperative joint action.
/// Only states reachable under the controller need an entry.
struct Controller {
  std::map<StateId, JointAction> choices;

  bool operator==(const Controller&) const = default;
};

/// Enabledness of every entry plus totality on the reachable set.
std::vector<Diagnostic> validate_controller(const Mpts& model, const Controller& controller);

struct ControlledEdge {
  JointAction joint;
  double probability;
  StateId target;
};

/**
 * The sub-model C/M induced by a controller, restricted to states reachable
 * under it. Holds a pointer to the parent model, which must outlive it.
 *
 * Edge probabilities multiply only the adversarial players' factors; the
 * cooperative choice is fixed by the controller.
 */
class ControlledSystem {
 public:
  const Mpts& model() const noexcept { return *model_; }
  const Controller& controller() const noexcept { return controller_; }

  /// Reachable states in breadth-first discovery order; front() is the initial state.
  const std::vector<StateId>& reachable() const noexcept { return reachable_; }
  /// Reachable states without a controller entry. Always empty unless built
  /// with apply_partial_controller.
  const std::vector<StateId>& frontier() const noexcept { return frontier_; }

  bool is_reachable(StateId x) const { return x < reachable_mask_.size() && reachable_mask_[x]; }
  bool is_frontier(StateId x) const { return x < frontier_mask_.size() && frontier_mask_[x]; }

  /// Enabled joint actions C(x) x A^Q(x) with their probabilities and successors.
  std::span<const ControlledEdge> edges(StateId x) const { return edges_.at(x); }

  /// p^{C/M}(x, joint); zero if the joint action is not enabled under the controller.
  double probability(StateId x, const JointAction& joint) const;

 private:
  friend ControlledSystem build_controlled_system(const Mpts&, const Controller&, bool);

  const Mpts* model_ = nullptr;
  Controller controller_;
  std::vector<StateId> reachable_;
  std::vector<StateId> frontier_;
  std::vector<char> reachable_mask_;
  std::vector<char> frontier_mask_;
  std::vector<std::vector<ControlledEdge>> edges_;
};

/// Builds C/M. Throws InputError if the controller selects a disabled action
/// or leaves a reachable state unassigned.
ControlledSystem apply_controller(const Mpts& model, const Controller& controller);

/// Like apply_controller, but reachable states without an entry become
/// frontier states with no outgoing edges.
ControlledSystem apply_partial_controller(const Mpts& model, const Controller& controller);

/// x_0 a_0 x_1 ... a_{n-1} x_n; `actions.size() + 1 == states.size()`.
struct FinitePath {
  std::vector<StateId> states;
  std::vector<JointAction> actions;
};

/// Probability of the cylinder set of `path` in the uncontrolled model.
double cylinder_probability(const Mpts& model, const FinitePath& path);
/// Probability of the cylinder set of `path` in the controlled system.
double cylinder_probability(const ControlledSystem& system, const FinitePath& path);

/// Markov chain over the reachable states of a controlled system, with
/// parallel joint-action edges merged. `states[i]` is the model state of chain
/// state i; chain state 0 is the initial state.
struct ControlledChain {
  MarkovChain chain;
  std::vector<StateId> states;
};

ControlledChain to_markov_chain(const ControlledSystem& system);

}  // namespace mpts

#endif  // MPTS_MODEL_HPP
