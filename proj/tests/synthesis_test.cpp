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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "mpts/analysis.hpp"
#include "mpts/error.hpp"
#include "mpts/philosophers.hpp"
#include "mpts/synthesis.hpp"
#include "oracles.hpp"

namespace mpts {
namespace {

std::vector<Controller> enumerate_all(const Mpts& m) {
  std::vector<Controller> out;
  ControllerEnumerator e(m);
  while (auto c = e.next()) out.push_back(*c);
  return out;
}

testing::RandomModelShape small_shape(testing::Rng& rng, std::size_t max_states) {
  testing::RandomModelShape shape;
  shape.states = 1 + testing::uniform_index(rng, max_states);
  shape.adversarial = testing::uniform_index(rng, 2);
  return shape;
}

// Best probability over every total controller, by brute force.
double brute_force_best(const Mpts& m, const Dra& r) {
  double best = 0.0;
  for (const auto& c : testing::all_total_controllers(m))
    best = std::max(best, check_satisfaction(apply_controller(m, testing::restrict_to_reachable(m, c)), r).probability);
  return best;
}

TEST(Enumerate, SingleStateTwoActions) {
  testing::ModelBuilder b({"1"}, {"1"}, {"x"}, {"a", "b"});
  b.dist("1", "x", {{"a", 0.5}, {"b", 0.5}}).edge("x", {"a"}, "x").edge("x", {"b"}, "x");
  const Mpts m = b.build();
  const auto all = enumerate_all(m);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].choices.at(0), JointAction{0});
  EXPECT_EQ(all[1].choices.at(0), JointAction{1});
}

TEST(Enumerate, NoCooperativePlayersGivesEmptyController) {
  testing::ModelBuilder b({"1"}, {}, {"x", "y"}, {"a", "b"});
  b.dist("1", "x", {{"a", 0.5}, {"b", 0.5}}).dist("1", "y", {{"a", 1.0}});
  b.edge("x", {"a"}, "x").edge("x", {"b"}, "y").edge("y", {"a"}, "x");
  const Mpts m = b.build();
  const auto all = enumerate_all(m);
  ASSERT_EQ(all.size(), 1u);
  for (const auto& [x, joint] : all[0].choices) EXPECT_TRUE(joint.empty());
  EXPECT_NO_THROW(apply_controller(m, all[0]));
}

TEST(Enumerate, MatchesBruteForceQuotient) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    testing::Rng shape_rng(rng());
    const Mpts m = testing::random_model(rng, small_shape(shape_rng, 4));
    const auto expected = testing::distinct_restricted_controllers(m);
    const auto all = enumerate_all(m);
    std::set<std::map<StateId, JointAction>> seen;
    for (const auto& c : all) {
      EXPECT_TRUE(validate_controller(m, c).empty());
      EXPECT_TRUE(seen.insert(c.choices).second) << "duplicate controller";
      // yielded controllers are exactly their own reachable restriction
      EXPECT_EQ(testing::restrict_to_reachable(m, c).choices.size(), c.choices.size());
    }
    ASSERT_EQ(seen, expected);
  }
}

TEST(Enumerate, OrderIsDeterministic) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Mpts m = testing::random_model(rng, {.states = 4});
    EXPECT_EQ(enumerate_all(m), enumerate_all(m));
  }
}

TEST(Enumerate, FilterSkipsSubtrees) {
  testing::Rng rng(3);
  const Mpts m = testing::random_model(rng, {.states = 4});
  // reject every partial controller that picks the last option at the initial state
  const auto last = cooperative_joint_actions(m, m.initial).back();
  ControllerEnumerator e(m, [&](const Controller& partial, std::span<const StateId>) {
    const auto it = partial.choices.find(m.initial);
    return it == partial.choices.end() || it->second != last;
  });
  std::size_t count = 0;
  while (auto c = e.next()) {
    EXPECT_NE(c->choices.at(m.initial), last);
    ++count;
  }
  std::size_t expected = 0;
  for (const auto& c : testing::distinct_restricted_controllers(m)) expected += c.at(m.initial) != last;
  EXPECT_EQ(count, expected);
}

TEST(Synthesize, CaseStudyMeetsThreshold) {
  const Mpts m = generate_philosophers();
  const Formula f = parse_ltl("G(F q1 & F q2)", m.atomic_props);
  const auto r = synthesize(m, f, 0.8);
  ASSERT_EQ(r.status, SynthesisStatus::kFound);
  ASSERT_TRUE(r.controller.has_value());
  EXPECT_TRUE(validate_controller(m, *r.controller).empty());
  EXPECT_GE(verify_controller(m, *r.controller, f), 0.8 - 1e-9);
  EXPECT_NEAR(verify_controller(m, testing::load_controller(m, "case_study_controller_completed.json"), f), 1.0, 1e-9);
}

TEST(Synthesize, ZeroThresholdReturnsFirstEnumerated) {
  testing::Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Mpts m = testing::random_model(rng, {.states = 4});
    const auto r = synthesize(m, parse_ltl("G p", m.atomic_props), 0.0);
    ASSERT_EQ(r.status, SynthesisStatus::kFound);
    EXPECT_EQ(*r.controller, *ControllerEnumerator(m).next());
  }
}

TEST(Synthesize, FalseHasNoController) {
  const Mpts m = generate_philosophers();
  const auto r = synthesize(m, Formula::falsity(), 0.5);
  EXPECT_EQ(r.status, SynthesisStatus::kNoController);
  EXPECT_FALSE(r.controller.has_value());
}

TEST(Synthesize, UnreachableGoalOnCaseStudy) {
  // q4 labels only the states with no one eating; G q4 is impossible because
  // someone must leave A eventually
  const Mpts m = generate_philosophers();
  const auto r = synthesize(m, parse_ltl("G q4", m.atomic_props), 0.5);
  EXPECT_EQ(r.status, SynthesisStatus::kNoController);
}

TEST(Synthesize, SoundAndCompleteAtSmallScale) {
  testing::Rng rng(5);
  std::size_t found = 0, none = 0;
  for (int trial = 0; trial < 120; ++trial) {
    testing::Rng shape_rng(rng());
    const Mpts m = testing::random_model(rng, small_shape(shape_rng, 3));
    const Formula f = parse_ltl(testing::formula_corpus_pq()[testing::uniform_index(rng, 9)], m.atomic_props);
    const Dra dra = ltl_to_dra(f, m.atomic_props);
    const double threshold = testing::uniform01(rng);
    const double best = brute_force_best(m, dra);
    const auto r = synthesize(m, dra, threshold);
    ASSERT_NE(r.status, SynthesisStatus::kCandidateLimit);
    ASSERT_EQ(r.status == SynthesisStatus::kFound, best >= threshold - 1e-9) << f.to_string() << " " << threshold;
    if (r.controller) {
      ++found;
      EXPECT_GE(verify_controller(m, *r.controller, f), threshold - 1e-9);
      EXPECT_NEAR(verify_controller(m, *r.controller, f), r.probability, 1e-9);
    } else {
      ++none;
    }
  }
  EXPECT_GT(found, 10u);
  EXPECT_GT(none, 10u);
}

TEST(Synthesize, PruningDoesNotChangeTheAnswer) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 80; ++trial) {
    const Mpts m = testing::random_model(rng, {.states = 4});
    const Formula f = parse_ltl(testing::formula_corpus_pq()[testing::uniform_index(rng, 9)], m.atomic_props);
    const double threshold = testing::uniform01(rng);
    SynthesisOptions plain;
    plain.prune = false;
    const auto a = synthesize(m, f, threshold);
    const auto b = synthesize(m, f, threshold, plain);
    ASSERT_EQ(a.status, b.status);
    // the pruned search skips only subtrees without a passing completion,
    // so the first passing controller is the same
    ASSERT_EQ(a.controller, b.controller);
    EXPECT_LE(a.stats.candidates, b.stats.candidates);
  }
}

TEST(Synthesize, BoundDominatesEveryCompletion) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Mpts m = testing::random_model(rng, {.states = 4});
    const Dra dra = ltl_to_dra(parse_ltl(testing::formula_corpus_pq()[testing::uniform_index(rng, 9)], m.atomic_props),
                               m.atomic_props);
    EXPECT_GE(completion_upper_bound(m, Controller{}, dra), brute_force_best(m, dra) - 1e-9);
    for (const auto& total : testing::all_total_controllers(m)) {
      const Controller c = testing::restrict_to_reachable(m, total);
      const double exact = check_satisfaction(apply_controller(m, c), dra).probability;
      ASSERT_GE(completion_upper_bound(m, c, dra), exact - 1e-9);
      Controller partial;
      partial.choices[m.initial] = c.choices.at(m.initial);
      ASSERT_GE(completion_upper_bound(m, partial, dra), exact - 1e-9);
    }
  }
}

TEST(Synthesize, CandidateLimitIsReported) {
  const Mpts m = generate_philosophers();
  SynthesisOptions options;
  options.max_candidates = 0;
  const auto r = synthesize(m, parse_ltl("G(F q1 & F q2)", m.atomic_props), 0.8, options);
  EXPECT_EQ(r.status, SynthesisStatus::kCandidateLimit);
  EXPECT_FALSE(r.controller.has_value());
  EXPECT_EQ(r.stats.candidates, 0u);
}

TEST(Synthesize, ThresholdOutsideUnitIntervalRejected) {
  const Mpts m = generate_philosophers();
  EXPECT_THROW(synthesize(m, Formula::truth(), 1.5), InputError);
  EXPECT_THROW(synthesize(m, Formula::truth(), -0.1), InputError);
}

TEST(Verify, InvalidControllerRejected) {
  const Mpts m = generate_philosophers();
  EXPECT_THROW(verify_controller(m, testing::load_controller(m, "case_study_controller.json"), Formula::truth()),
               InputError);
}

}  // namespace
}  // namespace mpts
