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

#include "mpts/synthesis.hpp"

#include <algorithm>
#include <map>

#include "mpts/analysis.hpp"
#include "mpts/error.hpp"
#include "mpts/graph.hpp"
#include "mpts/product.hpp"

namespace mpts {

ControllerEnumerator::ControllerEnumerator(const Mpts& model, PartialFilter filter)
    : model_(&model), filter_(std::move(filter)) {
  discovered_.assign(model.num_states(), 0);
  order_.push_back(model.initial);
  discovered_[model.initial] = 1;
  auto options = cooperative_joint_actions(model, model.initial);
  stack_.push_back({model.initial, std::move(options), kNotStarted, order_.size()});
}

void ControllerEnumerator::undo(const Frame& frame) {
  if (frame.choice == kNotStarted) return;
  current_.choices.erase(frame.state);
  for (std::size_t i = frame.order_size; i < order_.size(); ++i) discovered_[order_[i]] = 0;
  order_.resize(frame.order_size);
}

void ControllerEnumerator::apply(const Frame& frame) {
  const Mpts& model = *model_;
  const JointAction& coop = frame.options[frame.choice];
  current_.choices[frame.state] = coop;
  for (const auto& adv : adversarial_joint_actions(model, frame.state)) {
    JointAction joint(model.num_players());
    std::size_t ci = 0, ai = 0;
    for (PlayerId i = 0; i < model.num_players(); ++i) joint[i] = model.is_cooperative(i) ? coop[ci++] : adv[ai++];
    const auto next = model.successor(frame.state, joint);
    if (!next) throw InputError("no transition for " + model.format(joint) + " at " + model.states[frame.state]);
    if (!discovered_[*next]) {
      discovered_[*next] = 1;
      order_.push_back(*next);
    }
  }
}

std::optional<Controller> ControllerEnumerator::next() {
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    undo(top);
    top.choice = top.choice == kNotStarted ? 0 : top.choice + 1;
    if (top.choice >= top.options.size()) {
      stack_.pop_back();
      continue;
    }
    apply(top);
    const std::size_t depth = stack_.size();
    if (depth == order_.size()) return current_;
    ++partial_checks_;
    if (filter_ && !filter_(current_, std::span<const StateId>(order_).subspan(depth))) {
      ++pruned_;
      continue;
    }
    const StateId x = order_[depth];
    auto options = cooperative_joint_actions(*model_, x);
    stack_.push_back({x, std::move(options), kNotStarted, order_.size()});
  }
  return std::nullopt;
}

namespace {

// Product of the model with the automaton in which every assigned state keeps
// its controller choice and every other state offers all cooperative joint
// actions. choices[s][k] is the successor distribution of choice k.
struct ProductMdp {
  std::vector<std::pair<StateId, std::size_t>> states;
  std::vector<std::vector<std::vector<ChainTransition>>> choices;
  std::vector<RabinPair> pairs;
};

ProductMdp build_product_mdp(const Mpts& model, const Controller& partial, const Dra& dra) {
  if (model.atomic_props.size() != dra.ap.size() ||
      !std::is_permutation(model.atomic_props.begin(), model.atomic_props.end(), dra.ap.begin()))
    throw InputError("atomic propositions of model and automaton differ");
  const std::vector<PlayerId> adversaries = model.adversarial();
  ProductMdp mdp;
  std::map<std::pair<StateId, std::size_t>, std::size_t> index;
  auto id_of = [&](StateId x, std::size_t r) {
    auto [it, fresh] = index.emplace(std::make_pair(x, r), mdp.states.size());
    if (fresh) {
      mdp.states.emplace_back(x, r);
      mdp.choices.emplace_back();
    }
    return it->second;
  };
  id_of(model.initial, dra.initial);
  for (std::size_t s = 0; s < mdp.states.size(); ++s) {
    const auto [x, r] = mdp.states[s];
    const std::size_t r_next = dra.next(r, label_letter(model, x, dra.ap));
    std::vector<JointAction> options;
    if (auto it = partial.choices.find(x); it != partial.choices.end()) options.push_back(it->second);
    else options = cooperative_joint_actions(model, x);
    const auto adv_options = adversarial_joint_actions(model, x);
    std::vector<std::vector<ChainTransition>> choices;
    for (const auto& coop : options) {
      std::map<StateId, double> merged;
      for (const auto& adv : adv_options) {
        JointAction joint(model.num_players());
        std::size_t ci = 0, ai = 0;
        for (PlayerId i = 0; i < model.num_players(); ++i) joint[i] = model.is_cooperative(i) ? coop[ci++] : adv[ai++];
        const auto y = model.successor(x, joint);
        if (!y) throw InputError("controller selects disabled joint action " + model.format(joint) + " at " + model.states[x]);
        double p = 1.0;
        for (std::size_t j = 0; j < adversaries.size(); ++j) p *= model.probability(adversaries[j], x, adv[j]);
        merged[*y] += p;
      }
      std::vector<ChainTransition> dist;
      for (const auto& [y, p] : merged) dist.push_back({id_of(y, r_next), p});
      choices.push_back(std::move(dist));
    }
    mdp.choices[s] = std::move(choices);
  }
  for (const auto& pair : dra.pairs) {
    RabinPair lifted{std::vector<bool>(mdp.states.size()), std::vector<bool>(mdp.states.size())};
    for (std::size_t s = 0; s < mdp.states.size(); ++s) {
      lifted.fin[s] = pair.fin[mdp.states[s].second];
      lifted.inf[s] = pair.inf[mdp.states[s].second];
    }
    mdp.pairs.push_back(std::move(lifted));
  }
  return mdp;
}

// Maximal end components within `allowed`: component id per state (SIZE_MAX
// outside every component) and, per state, which choices stay inside.
struct EndComponents {
  std::vector<std::size_t> component;
  std::vector<std::vector<char>> internal;
  std::size_t count = 0;
};

EndComponents end_components(const ProductMdp& mdp, std::vector<bool> allowed) {
  const std::size_t n = mdp.states.size();
  EndComponents ec;
  ec.internal.resize(n);
  for (std::size_t s = 0; s < n; ++s) ec.internal[s].assign(mdp.choices[s].size(), allowed[s] ? 1 : 0);
  std::vector<std::size_t> comp;
  for (bool changed = true; changed;) {
    changed = false;
    Digraph g(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t k = 0; k < mdp.choices[s].size(); ++k)
        if (ec.internal[s][k])
          for (const auto& t : mdp.choices[s][k]) g[s].push_back(t.target);
    comp = component_index(tarjan_scc(g), n);
    for (std::size_t s = 0; s < n; ++s) {
      if (!allowed[s]) continue;
      bool any = false;
      for (std::size_t k = 0; k < mdp.choices[s].size(); ++k) {
        if (!ec.internal[s][k]) continue;
        for (const auto& t : mdp.choices[s][k])
          if (!allowed[t.target] || comp[t.target] != comp[s]) {
            ec.internal[s][k] = 0;
            changed = true;
            break;
          }
        any = any || ec.internal[s][k];
      }
      if (!any) {
        allowed[s] = false;
        changed = true;
      }
    }
  }
  ec.component.assign(n, SIZE_MAX);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t s = 0; s < n; ++s)
    if (allowed[s]) ec.component[s] = renumber.emplace(comp[s], renumber.size()).first->second;
  ec.count = renumber.size();
  return ec;
}

}  // namespace

double completion_upper_bound(const Mpts& model, const Controller& partial, const Dra& dra) {
  const ProductMdp mdp = build_product_mdp(model, partial, dra);
  const std::size_t n = mdp.states.size();

  // Accepting end components: per pair, end components avoiding L that meet K.
  std::vector<bool> target(n, false);
  for (const auto& pair : mdp.pairs) {
    std::vector<bool> allowed(n);
    for (std::size_t s = 0; s < n; ++s) allowed[s] = !pair.fin[s];
    const EndComponents ec = end_components(mdp, allowed);
    std::vector<char> good(ec.count, 0);
    for (std::size_t s = 0; s < n; ++s)
      if (ec.component[s] != SIZE_MAX && pair.inf[s]) good[ec.component[s]] = 1;
    for (std::size_t s = 0; s < n; ++s)
      if (ec.component[s] != SIZE_MAX && good[ec.component[s]]) target[s] = true;
  }
  if (target[0]) return 1.0;

  Digraph g(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& dist : mdp.choices[s])
      for (const auto& t : dist) g[s].push_back(t.target);
  const std::vector<bool> live = backward_reachable(g, target);
  if (!live[0]) return 0.0;

  // Collapse the remaining end components so that iterating the Bellman
  // operator downwards from 1 converges to the least fixed point.
  std::vector<bool> open(n);
  for (std::size_t s = 0; s < n; ++s) open[s] = live[s] && !target[s];
  const EndComponents ec = end_components(mdp, open);
  std::vector<std::size_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = ec.component[s] != SIZE_MAX ? ec.component[s] : ec.count + s;
  std::vector<std::vector<std::size_t>> members(ec.count + n);
  for (std::size_t s = 0; s < n; ++s)
    if (open[s]) members[cls[s]].push_back(s);

  std::vector<double> v(ec.count + n, 0.0);
  for (std::size_t s = 0; s < n; ++s) v[cls[s]] = target[s] || open[s] ? 1.0 : 0.0;
  constexpr double kConvergence = 1e-12;
  constexpr int kMaxSweeps = 100'000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double delta = 0.0;
    for (const auto& group : members) {
      if (group.empty()) continue;
      double best = 0.0;
      for (std::size_t s : group)
        for (std::size_t k = 0; k < mdp.choices[s].size(); ++k) {
          if (ec.component[s] != SIZE_MAX && ec.internal[s][k]) continue;
          double sum = 0.0;
          for (const auto& t : mdp.choices[s][k]) sum += t.probability * v[cls[t.target]];
          best = std::max(best, sum);
        }
      const std::size_t c = cls[group.front()];
      best = std::min(best, v[c]);  // iterates only decrease; keeps rounding from lifting the bound
      delta = std::max(delta, v[c] - best);
      v[c] = best;
    }
    if (delta < kConvergence) break;
  }
  return std::min(1.0, v[cls[0]] + kConvergence);
}

SynthesisResult synthesize(const Mpts& model, const Dra& dra, double threshold, const SynthesisOptions& options) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw InputError("threshold must lie in [0, 1]");
  SynthesisResult result;
  result.stats.automaton_states = dra.num_states;
  const double bar = threshold - kProbabilityTolerance;

  PartialFilter filter;
  if (options.prune)
    filter = [&](const Controller& partial, std::span<const StateId>) {
      return completion_upper_bound(model, partial, dra) >= bar;
    };
  ControllerEnumerator controllers(model, std::move(filter));
  while (auto c = controllers.next()) {
    if (result.stats.candidates >= options.max_candidates) {
      result.status = SynthesisStatus::kCandidateLimit;
      break;
    }
    ++result.stats.candidates;
    const double p = probability_of_satisfaction(apply_controller(model, *c), dra);
    if (p >= bar) {
      result.status = SynthesisStatus::kFound;
      result.controller = std::move(c);
      result.probability = p;
      break;
    }
  }
  result.stats.partial_checks = controllers.partial_checks();
  result.stats.pruned = controllers.pruned();
  return result;
}

SynthesisResult synthesize(const Mpts& model, const Formula& f, double threshold, const SynthesisOptions& options) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw InputError("threshold must lie in [0, 1]");
  return synthesize(model, ltl_to_dra(f, model.atomic_props, options.translation), threshold, options);
}

double verify_controller(const Mpts& model, const Controller& controller, const Dra& dra) {
  return probability_of_satisfaction(apply_controller(model, controller), dra);
}

double verify_controller(const Mpts& model, const Controller& controller, const Formula& f) {
  return verify_controller(model, controller, ltl_to_dra(f, model.atomic_props));
}

}  // namespace mpts
