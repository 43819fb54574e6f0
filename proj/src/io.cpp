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

#include "mpts/io.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mpts/error.hpp"

namespace mpts {

namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("model JSON lacks key '") + key + "'");
  return *it;
}

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw InputError(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename Find>
std::size_t resolve(Find find, const std::string& name, const char* what) {
  auto id = find(name);
  if (!id) throw InputError(std::string("unknown ") + what + " '" + name + "'");
  return *id;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Mpts parse_model(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw InputError("model JSON must be an object");
  Mpts m;
  try {
    m.players = string_array(member(j, "players"), "players");
    m.states = string_array(member(j, "states"), "states");
    m.actions = string_array(member(j, "actions"), "actions");
    m.atomic_props = string_array(member(j, "atomic_props"), "atomic_props");
    auto by_state = [&](const std::string& n) { return m.find_state(n); };
    auto by_action = [&](const std::string& n) { return m.find_action(n); };

    for (const auto& name : string_array(member(j, "cooperative"), "cooperative"))
      m.cooperative.push_back(resolve([&](const std::string& n) { return m.find_player(n); }, name, "player"));
    std::sort(m.cooperative.begin(), m.cooperative.end());
    m.cooperative.erase(std::unique(m.cooperative.begin(), m.cooperative.end()), m.cooperative.end());

    const json& initial = member(j, "initial");
    if (!initial.is_string()) throw InputError("initial must be a state name");
    m.initial = resolve(by_state, initial.get<std::string>(), "state");

    m.labels.assign(m.num_states(), {});
    const json& labels = member(j, "labels");
    if (!labels.is_object()) throw InputError("labels must be an object");
    for (const auto& [state, props] : labels.items()) {
      auto& row = m.labels[resolve(by_state, state, "state")];
      for (const auto& p : string_array(props, "labels"))
        row.push_back(resolve([&](const std::string& n) { return m.find_prop(n); }, p, "atomic proposition"));
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }

    m.dist.assign(m.num_players(), std::vector<std::vector<ActionProbability>>(m.num_states()));
    const json& dist = member(j, "dist");
    if (!dist.is_object()) throw InputError("dist must be an object");
    for (const auto& [player, per_state] : dist.items()) {
      const PlayerId i = resolve([&](const std::string& n) { return m.find_player(n); }, player, "player");
      if (!per_state.is_object()) throw InputError("dist entries must be objects");
      for (const auto& [state, per_action] : per_state.items()) {
        auto& row = m.dist[i][resolve(by_state, state, "state")];
        if (!per_action.is_object()) throw InputError("dist entries must be objects");
        for (const auto& [action, p] : per_action.items()) {
          if (!p.is_number()) throw InputError("probabilities must be numbers");
          row.push_back({resolve(by_action, action, "action"), p.get<double>()});
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.action < b.action; });
      }
    }

    m.transitions.assign(m.num_states(), {});
    const json& transitions = member(j, "transitions");
    if (!transitions.is_array()) throw InputError("transitions must be an array");
    for (const auto& t : transitions) {
      if (!t.is_object()) throw InputError("transition records must be objects");
      const json& state = member(t, "state");
      const json& next = member(t, "next");
      if (!state.is_string() || !next.is_string()) throw InputError("transition state and next must be names");
      JointAction joint;
      for (const auto& a : string_array(member(t, "joint"), "joint")) joint.push_back(resolve(by_action, a, "action"));
      const StateId x = resolve(by_state, state.get<std::string>(), "state");
      const StateId y = resolve(by_state, next.get<std::string>(), "state");
      if (!m.transitions[x].emplace(std::move(joint), y).second)
        throw InputError("duplicate transition record at " + m.states[x]);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model JSON: ") + e.what());
  }
  return m;
}

std::string model_to_json(const Mpts& m, int indent) {
  json j;
  j["players"] = m.players;
  json coop = json::array();
  for (PlayerId i : m.cooperative) coop.push_back(m.players.at(i));
  j["cooperative"] = coop;
  j["states"] = m.states;
  j["actions"] = m.actions;
  j["initial"] = m.states.at(m.initial);
  j["atomic_props"] = m.atomic_props;
  json labels = json::object();
  for (StateId x = 0; x < m.num_states(); ++x) {
    json row = json::array();
    if (x < m.labels.size())
      for (PropId p : m.labels[x]) row.push_back(m.atomic_props.at(p));
    labels[m.states[x]] = row;
  }
  j["labels"] = labels;
  json dist = json::object();
  for (PlayerId i = 0; i < m.dist.size() && i < m.num_players(); ++i) {
    json per_state = json::object();
    for (StateId x = 0; x < m.dist[i].size() && x < m.num_states(); ++x) {
      json per_action = json::object();
      for (const auto& ap : m.dist[i][x]) per_action[m.actions.at(ap.action)] = ap.probability;
      per_state[m.states[x]] = per_action;
    }
    dist[m.players[i]] = per_state;
  }
  j["dist"] = dist;
  json transitions = json::array();
  for (StateId x = 0; x < m.transitions.size(); ++x)
    for (const auto& [joint, y] : m.transitions[x]) {
      json names = json::array();
      for (ActionId a : joint) names.push_back(m.actions.at(a));
      transitions.push_back({{"state", m.states[x]}, {"joint", names}, {"next", m.states.at(y)}});
    }
  j["transitions"] = transitions;
  return j.dump(indent) + "\n";
}

Controller parse_controller(const Mpts& model, std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw InputError("controller JSON must be an object");
  Controller c;
  for (const auto& [state, actions] : j.items()) {
    const StateId x = resolve([&](const std::string& n) { return model.find_state(n); }, state, "state");
    JointAction joint;
    for (const auto& a : string_array(actions, "controller entries"))
      joint.push_back(resolve([&](const std::string& n) { return model.find_action(n); }, a, "action"));
    if (joint.size() != model.cooperative.size())
      throw InputError("controller entry for " + state + " lists " + std::to_string(joint.size()) +
                       " actions, expected one per cooperative player (" +
                       std::to_string(model.cooperative.size()) + ")");
    c.choices[x] = std::move(joint);
  }
  return c;
}

std::string controller_to_json(const Mpts& model, const Controller& controller, int indent) {
  json j = json::object();
  for (const auto& [x, joint] : controller.choices) {
    json names = json::array();
    for (ActionId a : joint) names.push_back(model.actions.at(a));
    j[model.states.at(x)] = names;
  }
  return j.dump(indent) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("cannot write " + path.string());
}

}  // namespace mpts
