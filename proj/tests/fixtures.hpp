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

// Hand-built models and fixture loading for the tests.

#ifndef MPTS_TESTS_FIXTURES_HPP
#define MPTS_TESTS_FIXTURES_HPP

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mpts/io.hpp"
#include "mpts/model.hpp"

namespace mpts::testing {

/// Small fluent builder so tests can spell out models by name.
class ModelBuilder {
 public:
  ModelBuilder(std::vector<std::string> players, std::vector<std::string> cooperative,
               std::vector<std::string> states, std::vector<std::string> actions, std::vector<std::string> ap = {}) {
    m_.players = std::move(players);
    m_.states = std::move(states);
    m_.actions = std::move(actions);
    m_.atomic_props = std::move(ap);
    for (const auto& p : cooperative) m_.cooperative.push_back(*m_.find_player(p));
    m_.labels.assign(m_.num_states(), {});
    m_.dist.assign(m_.num_players(), std::vector<std::vector<ActionProbability>>(m_.num_states()));
    m_.transitions.assign(m_.num_states(), {});
  }

  ModelBuilder& initial(const std::string& x) {
    m_.initial = *m_.find_state(x);
    return *this;
  }

  ModelBuilder& label(const std::string& x, std::initializer_list<std::string> props) {
    auto& row = m_.labels[*m_.find_state(x)];
    for (const auto& p : props) row.push_back(*m_.find_prop(p));
    std::sort(row.begin(), row.end());
    return *this;
  }

  ModelBuilder& dist(const std::string& player, const std::string& x,
                     std::initializer_list<std::pair<std::string, double>> entries) {
    auto& row = m_.dist[*m_.find_player(player)][*m_.find_state(x)];
    for (const auto& [a, p] : entries) row.push_back({*m_.find_action(a), p});
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.action < b.action; });
    return *this;
  }

  ModelBuilder& edge(const std::string& x, std::initializer_list<std::string> joint, const std::string& y) {
    JointAction j;
    for (const auto& a : joint) j.push_back(*m_.find_action(a));
    m_.transitions[*m_.find_state(x)][j] = *m_.find_state(y);
    return *this;
  }

  Mpts build() const { return m_; }

 private:
  Mpts m_;
};

inline std::string data_path(const std::string& name) { return std::string(MPTS_TEST_DATA_DIR) + "/" + name; }

inline Controller load_controller(const Mpts& m, const std::string& fixture) {
  return parse_controller(m, read_text_file(data_path(fixture)));
}

inline StateId state(const Mpts& m, const std::string& name) { return m.find_state(name).value(); }

inline JointAction joint(const Mpts& m, std::initializer_list<std::string> actions) {
  JointAction j;
  for (const auto& a : actions) j.push_back(m.find_action(a).value());
  return j;
}

}  // namespace mpts::testing

#endif  // MPTS_TESTS_FIXTURES_HPP
