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

#include "mpts/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "mpts/error.hpp"

namespace mpts {

namespace {

template <typename Range>
std::optional<std::size_t> index_of(const Range& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

// Lexicographic cartesian product of the given choice lists.
std::vector<JointAction> cartesian(const std::vector<std::vector<ActionId>>& choices) {
  std::vector<JointAction> out;
  for (const auto& c : choices)
    if (c.empty()) return out;
  JointAction current(choices.size());
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < choices.size(); ++i) current[i] = choices[i][idx[i]];
    out.push_back(current);
    std::size_t pos = choices.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < choices[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

void check_state(const Mpts& model, StateId x) {
  if (x >= model.num_states())
    throw InputError("unknown state index " + std::to_string(x));
}

JointAction combine(const Mpts& model, const JointAction& coop, const JointAction& adv) {
  JointAction joint(model.num_players());
  std::size_t ci = 0, ai = 0;
  for (PlayerId i = 0; i < model.num_players(); ++i)
    joint[i] = model.is_cooperative(i) ? coop[ci++] : adv[ai++];
  return joint;
}

}  // namespace

bool Mpts::is_cooperative(PlayerId player) const {
  return std::binary_search(cooperative.begin(), cooperative.end(), player);
}

std::vector<PlayerId> Mpts::adversarial() const {
  std::vector<PlayerId> out;
  for (PlayerId i = 0; i < players.size(); ++i)
    if (!is_cooperative(i)) out.push_back(i);
  return out;
}

std::optional<StateId> Mpts::find_state(std::string_view name) const { return index_of(states, name); }
std::optional<ActionId> Mpts::find_action(std::string_view name) const { return index_of(actions, name); }
std::optional<PropId> Mpts::find_prop(std::string_view name) const { return index_of(atomic_props, name); }
std::optional<PlayerId> Mpts::find_player(std::string_view name) const { return index_of(players, name); }

double Mpts::probability(PlayerId player, StateId x, ActionId action) const {
  if (player >= dist.size() || x >= dist[player].size()) return 0.0;
  const auto& row = dist[player][x];
  auto it = std::lower_bound(row.begin(), row.end(), action,
                             [](const ActionProbability& ap, ActionId a) { return ap.action < a; });
  return (it != row.end() && it->action == action) ? it->probability : 0.0;
}

std::vector<ActionId> Mpts::enabled_actions(PlayerId player, StateId x) const {
  std::vector<ActionId> out;
  if (player >= dist.size() || x >= dist[player].size()) return out;
  for (const auto& ap : dist[player][x])
    if (ap.probability > 0.0) out.push_back(ap.action);
  return out;
}

std::optional<StateId> Mpts::successor(StateId x, const JointAction& joint) const {
  if (x >= transitions.size()) return std::nullopt;
  auto it = transitions[x].find(joint);
  if (it == transitions[x].end()) return std::nullopt;
  return it->second;
}

std::string Mpts::format(const JointAction& joint) const {
  std::string out = "<";
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (i) out += ',';
    out += joint[i] < actions.size() ? actions[joint[i]] : "?" + std::to_string(joint[i]);
  }
  return out + ">";
}

std::vector<Diagnostic> validate(const Mpts& model) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string kind, std::string message) {
    out.push_back({std::move(kind), std::move(message)});
  };
  const std::size_t k = model.num_players();
  const std::size_t n = model.num_states();

  if (k == 0) report("players", "model has no players");
  if (n == 0) report("states", "model has no states");
  for (std::size_t i = 0; i < model.cooperative.size(); ++i) {
    if (model.cooperative[i] >= k)
      report("cooperative", "cooperative player index " + std::to_string(model.cooperative[i]) + " out of range");
    if (i > 0 && model.cooperative[i] <= model.cooperative[i - 1])
      report("cooperative", "cooperative player list is not sorted and unique");
  }
  if (model.initial >= n) report("initial", "initial state index out of range");
  if (model.labels.size() != n) report("labels", "label table does not cover every state");
  for (StateId x = 0; x < std::min(n, model.labels.size()); ++x)
    for (PropId p : model.labels[x])
      if (p >= model.atomic_props.size())
        report("labels", "label of state " + model.states[x] + " uses an undeclared proposition");
  if (model.dist.size() != k) report("dist", "expected one distribution per player");
  if (model.transitions.size() != n) report("transitions", "transition table does not cover every state");
  if (!out.empty()) return out;

  // value errors (sums, ranges) still allow the structural checks below
  bool malformed = false;
  for (PlayerId i = 0; i < k; ++i) {
    if (model.dist[i].size() != n) {
      report("dist", "distribution of player " + model.players[i] + " does not cover every state");
      malformed = true;
      continue;
    }
    for (StateId x = 0; x < n; ++x) {
      double sum = 0.0;
      const auto& row = model.dist[i][x];
      for (std::size_t j = 0; j < row.size(); ++j) {
        const auto& ap = row[j];
        if (ap.action >= model.actions.size()) {
          report("dist", "unknown action index at (player " + model.players[i] + ", " + model.states[x] + ")");
          malformed = true;
          continue;
        }
        if (j > 0 && row[j - 1].action >= ap.action)
          report("dist", "actions not sorted at (player " + model.players[i] + ", " + model.states[x] + ")");
        if (!(ap.probability >= 0.0 && ap.probability <= 1.0))
          report("probability-range", "probability of " + model.actions[ap.action] + " outside [0,1] at (player " +
                                          model.players[i] + ", " + model.states[x] + ")");
        sum += ap.probability;
      }
      if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        std::ostringstream msg;
        msg << "distribution sum " << sum << " != 1 at (player " << model.players[i] << ", " << model.states[x] << ")";
        report("distribution-sum", msg.str());
      }
    }
  }
  if (malformed) return out;

  for (StateId x = 0; x < n; ++x) {
    std::vector<std::vector<ActionId>> choices(k);
    for (PlayerId i = 0; i < k; ++i) choices[i] = model.enabled_actions(i, x);
    const auto enabled = cartesian(choices);
    if (enabled.empty()) report("terminating-state", "terminating state " + model.states[x] + ": no enabled joint action");
    for (const auto& joint : enabled)
      if (!model.successor(x, joint))
        report("missing-transition", "no transition for enabled joint action " + model.format(joint) + " at " +
                                         model.states[x]);
    for (const auto& [joint, next] : model.transitions[x]) {
      bool ok = joint.size() == k;
      for (PlayerId i = 0; ok && i < k; ++i) ok = model.probability(i, x, joint[i]) > 0.0;
      if (!ok)
        report("disabled-transition", "transition defined for non-enabled joint action " + model.format(joint) +
                                          " at " + model.states[x]);
      if (next >= n) report("transitions", "transition target out of range at " + model.states[x]);
    }
  }
  return out;
}

std::vector<JointAction> enabled_joint_actions(const Mpts& model, StateId x) {
  check_state(model, x);
  std::vector<std::vector<ActionId>> choices(model.num_players());
  for (PlayerId i = 0; i < model.num_players(); ++i) choices[i] = model.enabled_actions(i, x);
  auto all = cartesian(choices);
  std::erase_if(all, [&](const JointAction& j) { return !model.successor(x, j); });
  return all;
}

std::vector<JointAction> cooperative_joint_actions(const Mpts& model, StateId x) {
  check_state(model, x);
  std::vector<std::vector<ActionId>> choices;
  for (PlayerId i : model.cooperative) choices.push_back(model.enabled_actions(i, x));
  return cartesian(choices);
}

std::vector<JointAction> adversarial_joint_actions(const Mpts& model, StateId x) {
  check_state(model, x);
  std::vector<std::vector<ActionId>> choices;
  for (PlayerId i : model.adversarial()) choices.push_back(model.enabled_actions(i, x));
  return cartesian(choices);
}

double joint_probability(const Mpts& model, StateId x, const JointAction& joint) {
  check_state(model, x);
  if (joint.size() != model.num_players())
    throw InputError("joint action " + model.format(joint) + " has wrong arity");
  double p = 1.0;
  for (PlayerId i = 0; i < joint.size(); ++i) p *= model.probability(i, x, joint[i]);
  if (p <= 0.0 || !model.successor(x, joint))
    throw InputError("joint action " + model.format(joint) + " is not enabled at " + model.states[x]);
  return p;
}

ControlledSystem build_controlled_system(const Mpts& model, const Controller& controller, bool partial) {
  check_state(model, model.initial);
  ControlledSystem cs;
  cs.model_ = &model;
  cs.controller_ = controller;
  const std::size_t n = model.num_states();
  cs.reachable_mask_.assign(n, 0);
  cs.frontier_mask_.assign(n, 0);
  cs.edges_.assign(n, {});
  const auto adversaries = model.adversarial();

  std::deque<StateId> queue{model.initial};
  cs.reachable_mask_[model.initial] = 1;
  while (!queue.empty()) {
    const StateId x = queue.front();
    queue.pop_front();
    cs.reachable_.push_back(x);
    auto it = controller.choices.find(x);
    if (it == controller.choices.end()) {
      if (!partial) throw InputError("controller has no entry for reachable state " + model.states[x]);
      cs.frontier_.push_back(x);
      cs.frontier_mask_[x] = 1;
      continue;
    }
    const JointAction& coop = it->second;
    if (coop.size() != model.cooperative.size())
      throw InputError("controller entry at " + model.states[x] + " has wrong arity");
    for (std::size_t c = 0; c < coop.size(); ++c)
      if (model.probability(model.cooperative[c], x, coop[c]) <= 0.0)
        throw InputError("controller selects disabled action " +
                         (coop[c] < model.actions.size() ? model.actions[coop[c]] : std::to_string(coop[c])) +
                         " for player " + model.players[model.cooperative[c]] + " at " + model.states[x]);
    for (const auto& adv : adversarial_joint_actions(model, x)) {
      JointAction joint = combine(model, coop, adv);
      auto next = model.successor(x, joint);
      if (!next) throw InputError("no transition for " + model.format(joint) + " at " + model.states[x]);
      double p = 1.0;
      for (std::size_t a = 0; a < adv.size(); ++a) p *= model.probability(adversaries[a], x, adv[a]);
      cs.edges_[x].push_back({std::move(joint), p, *next});
      if (!cs.reachable_mask_[*next]) {
        cs.reachable_mask_[*next] = 1;
        queue.push_back(*next);
      }
    }
  }
  return cs;
}

double ControlledSystem::probability(StateId x, const JointAction& joint) const {
  if (x >= edges_.size()) return 0.0;
  for (const auto& e : edges_[x])
    if (e.joint == joint) return e.probability;
  return 0.0;
}

ControlledSystem apply_controller(const Mpts& model, const Controller& controller) {
  return build_controlled_system(model, controller, false);
}

ControlledSystem apply_partial_controller(const Mpts& model, const Controller& controller) {
  return build_controlled_system(model, controller, true);
}

std::vector<Diagnostic> validate_controller(const Mpts& model, const Controller& controller) {
  std::vector<Diagnostic> out;
  for (const auto& [x, coop] : controller.choices) {
    if (x >= model.num_states()) {
      out.push_back({"controller-state", "controller entry for unknown state index " + std::to_string(x)});
      continue;
    }
    if (coop.size() != model.cooperative.size()) {
      out.push_back({"controller-arity", "controller entry at " + model.states[x] + " has wrong arity"});
      continue;
    }
    for (std::size_t c = 0; c < coop.size(); ++c)
      if (model.probability(model.cooperative[c], x, coop[c]) <= 0.0)
        out.push_back({"controller-disabled", "action of player " + model.players[model.cooperative[c]] + " at " +
                                                  model.states[x] + " is not enabled"});
  }
  if (!out.empty()) return out;
  const auto cs = apply_partial_controller(model, controller);
  for (StateId x : cs.frontier())
    out.push_back({"controller-missing", "no controller entry for reachable state " + model.states[x]});
  return out;
}

double cylinder_probability(const Mpts& model, const FinitePath& path) {
  if (path.states.empty() || path.states.size() != path.actions.size() + 1)
    throw InputError("malformed finite path");
  if (path.states.front() != model.initial) throw InputError("path does not start at the initial state");
  double p = 1.0;
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const StateId x = path.states[i];
    p *= joint_probability(model, x, path.actions[i]);
    if (model.successor(x, path.actions[i]) != path.states[i + 1])
      throw InputError("path step " + std::to_string(i) + " is inconsistent with the transition function");
  }
  return p;
}

double cylinder_probability(const ControlledSystem& system, const FinitePath& path) {
  const Mpts& model = system.model();
  if (path.states.empty() || path.states.size() != path.actions.size() + 1)
    throw InputError("malformed finite path");
  if (path.states.front() != model.initial) throw InputError("path does not start at the initial state");
  double p = 1.0;
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const StateId x = path.states[i];
    if (!system.is_reachable(x)) throw InputError("path leaves the controlled system");
    const ControlledEdge* edge = nullptr;
    for (const auto& e : system.edges(x))
      if (e.joint == path.actions[i]) edge = &e;
    if (!edge) throw InputError("joint action " + model.format(path.actions[i]) + " not enabled under the controller");
    if (edge->target != path.states[i + 1])
      throw InputError("path step " + std::to_string(i) + " is inconsistent with the transition function");
    p *= edge->probability;
  }
  return p;
}

ControlledChain to_markov_chain(const ControlledSystem& system) {
  ControlledChain out;
  out.states = system.reachable();
  std::vector<std::size_t> index(system.model().num_states(), 0);
  for (std::size_t i = 0; i < out.states.size(); ++i) index[out.states[i]] = i;
  out.chain.initial = 0;
  out.chain.rows.resize(out.states.size());
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    std::map<std::size_t, double> merged;
    for (const auto& e : system.edges(out.states[i])) merged[index[e.target]] += e.probability;
    // frontier states of a partial controller are absorbing
    if (merged.empty()) merged[i] = 1.0;
    for (const auto& [t, p] : merged) out.chain.rows[i].push_back({t, p});
  }
  return out;
}

}  // namespace mpts
