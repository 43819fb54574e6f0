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

#include <map>

#include "fixtures.hpp"
#include "mpts/error.hpp"
#include "mpts/philosophers.hpp"
#include "mpts/product.hpp"
#include "oracles.hpp"

namespace mpts {
namespace {

Controller first_choices(const Mpts& m) {
  Controller c;
  for (StateId x = 0; x < m.num_states(); ++x) c.choices[x] = cooperative_joint_actions(m, x).front();
  return testing::restrict_to_reachable(m, c);
}

Controller random_choices(testing::Rng& rng, const Mpts& m) {
  Controller c;
  for (StateId x = 0; x < m.num_states(); ++x) {
    const auto options = cooperative_joint_actions(m, x);
    c.choices[x] = options[testing::uniform_index(rng, options.size())];
  }
  return testing::restrict_to_reachable(m, c);
}

TEST(Product, SingleSelfLoopInGloballyAutomaton) {
  testing::ModelBuilder b({"1"}, {}, {"x"}, {"a"}, {"p"});
  b.label("x", {"p"}).dist("1", "x", {{"a", 1.0}}).edge("x", {"a"}, "x");
  const Mpts m = b.build();
  Controller c;
  c.choices[0] = {};
  const auto cs = apply_controller(m, c);
  const Dra r = ltl_to_dra(parse_ltl("G p", m.atomic_props), m.atomic_props);
  const ProductAutomaton g = build_product(cs, r);
  // the initial pair reads {p} and moves to the automaton's accepting loop
  const MarkovChain chain = g.chain();
  std::size_t loops = 0;
  for (std::size_t s = 0; s < g.size(); ++s)
    if (chain.rows[s].size() == 1 && chain.rows[s][0].target == s) {
      ++loops;
      EXPECT_DOUBLE_EQ(chain.rows[s][0].probability, 1.0);
      bool in_k = false;
      for (const auto& pair : g.pairs) in_k = in_k || (pair.inf[s] && !pair.fin[s]);
      EXPECT_TRUE(in_k);
    }
  EXPECT_EQ(loops, 1u);
  EXPECT_LE(g.size(), 2u);
}

TEST(Product, PhilosophersRowsAndSizeBound) {
  const Mpts m = generate_philosophers();
  const auto cs = apply_controller(m, testing::load_controller(m, "case_study_controller_completed.json"));
  const Dra r = ltl_to_dra(parse_ltl("G(F q1 & F q2)", m.atomic_props), m.atomic_props);
  const ProductAutomaton g = build_product(cs, r);
  EXPECT_LE(g.size(), cs.reachable().size() * r.num_states);
  EXPECT_EQ(g.states[g.initial()].model, m.initial);
  EXPECT_EQ(g.states[g.initial()].dra, r.initial);
  for (std::size_t s = 0; s < g.size(); ++s) {
    double sum = 0.0;
    for (const auto& e : g.edges[s]) sum += e.probability;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Product, SuccessorReadsCurrentLabel) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Mpts m = testing::random_model(rng, {});
    const auto cs = apply_controller(m, random_choices(rng, m));
    const Dra r = testing::random_dra(rng, m.atomic_props, 4, 2);
    const ProductAutomaton g = build_product(cs, r);
    for (std::size_t s = 0; s < g.size(); ++s) {
      const auto [x, q] = g.states[s];
      const auto edges = cs.edges(x);
      ASSERT_EQ(g.edges[s].size(), edges.size());
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto& e = g.edges[s][k];
        EXPECT_EQ(e.joint, edges[k].joint);
        EXPECT_DOUBLE_EQ(e.probability, edges[k].probability);
        EXPECT_EQ(g.states[e.target].model, edges[k].target);
        EXPECT_EQ(g.states[e.target].dra, r.next(q, label_letter(m, x, r.ap)));
      }
      for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        EXPECT_EQ(g.pairs[i].fin[s], r.pairs[i].fin[q]);
        EXPECT_EQ(g.pairs[i].inf[s], r.pairs[i].inf[q]);
      }
    }
  }
}

TEST(Product, LiftIsDeterministic) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Mpts m = testing::random_model(rng, {});
    const auto cs = apply_controller(m, first_choices(m));
    const ProductAutomaton g = build_product(cs, testing::random_dra(rng, m.atomic_props, 4, 2));
    for (std::size_t s = 0; s < g.size(); ++s) {
      std::map<JointAction, std::size_t> seen;
      for (const auto& e : g.edges[s]) {
        auto [it, fresh] = seen.emplace(e.joint, e.target);
        EXPECT_TRUE(fresh || it->second == e.target);
      }
    }
  }
}

TEST(Product, ProjectionOfPathsIsControlledPath) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Mpts m = testing::random_model(rng, {});
    const auto cs = apply_controller(m, random_choices(rng, m));
    const ProductAutomaton g = build_product(cs, testing::random_dra(rng, m.atomic_props, 4, 2));
    for (int walk = 0; walk < 10; ++walk) {
      std::size_t s = g.initial();
      FinitePath path{{g.states[s].model}, {}};
      double product_probability = 1.0;
      for (int step = 0; step < 8; ++step) {
        const auto& e = g.edges[s][testing::uniform_index(rng, g.edges[s].size())];
        product_probability *= e.probability;
        path.actions.push_back(e.joint);
        s = e.target;
        path.states.push_back(g.states[s].model);
      }
      EXPECT_NEAR(cylinder_probability(cs, path), product_probability, 1e-12);
    }
  }
}

TEST(Product, AcceptanceTransfersToProjectedWord) {
  testing::Rng rng(4);
  std::size_t accepted = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Mpts m = testing::random_model(rng, {});
    const auto cs = apply_controller(m, random_choices(rng, m));
    const Formula f = parse_ltl(testing::formula_corpus_pq()[testing::uniform_index(rng, 9)], m.atomic_props);
    const Dra r = ltl_to_dra(f, m.atomic_props);
    const ProductAutomaton g = build_product(cs, r);
    for (int walk = 0; walk < 10; ++walk) {
      // random walk until a product state repeats: a lasso in the product
      std::vector<std::size_t> run{g.initial()};
      std::map<std::size_t, std::size_t> first;
      first[g.initial()] = 0;
      while (true) {
        const auto& out = g.edges[run.back()];
        const std::size_t next = out[testing::uniform_index(rng, out.size())].target;
        if (first.count(next)) {
          const std::size_t loop = first[next];
          LassoWord w;
          w.ap = m.atomic_props;
          for (std::size_t k = 0; k < run.size(); ++k)
            (k < loop ? w.prefix : w.cycle).push_back(label_letter(m, g.states[run[k]].model, w.ap));
          bool lifted = false;
          for (const auto& pair : g.pairs) {
            bool fin = false, inf = false;
            for (std::size_t k = loop; k < run.size(); ++k) {
              fin = fin || pair.fin[run[k]];
              inf = inf || pair.inf[run[k]];
            }
            lifted = lifted || (!fin && inf);
          }
          ASSERT_EQ(lifted, dra_accepts_lasso(r, w));
          ASSERT_EQ(lifted, testing::oracle_eval(f, w));
          accepted += lifted;
          ++total;
          break;
        }
        first[next] = run.size();
        run.push_back(next);
      }
    }
  }
  // both outcomes occur, so the property is not vacuous
  EXPECT_GT(accepted, 0u);
  EXPECT_LT(accepted, total);
}

TEST(Product, ApMismatchListsDifference) {
  const Mpts m = generate_philosophers();
  const auto cs = apply_controller(m, testing::load_controller(m, "case_study_controller_completed.json"));
  const Dra r = ltl_to_dra(parse_ltl("F z & F q1"), {"q1", "z"});
  try {
    build_product(cs, r);
    FAIL();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("z(automaton only)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("q4(model only)"), std::string::npos) << msg;
  }
}

TEST(Product, ApOrderMayDiffer) {
  const Mpts m = generate_philosophers();
  const auto cs = apply_controller(m, testing::load_controller(m, "case_study_controller_completed.json"));
  const std::vector<std::string> reversed = {"q4", "q3", "q2", "q1"};
  const Dra a = ltl_to_dra(parse_ltl("G(F q1 & F q2)", m.atomic_props), m.atomic_props);
  const Dra b = ltl_to_dra(parse_ltl("G(F q1 & F q2)", reversed), reversed);
  EXPECT_EQ(build_product(cs, a).size(), build_product(cs, b).size());
}

TEST(Product, DotMarksPairsAndHighlights) {
  const Mpts m = generate_philosophers();
  const auto cs = apply_controller(m, testing::load_controller(m, "case_study_controller_completed.json"));
  const Dra r = ltl_to_dra(parse_ltl("G(F q1 & F q2)", m.atomic_props), m.atomic_props);
  const ProductAutomaton g = build_product(cs, r);
  std::vector<bool> highlight(g.size(), false);
  highlight[0] = true;
  const std::string dot = product_to_dot(g, m, highlight);
  EXPECT_EQ(dot.rfind("digraph product {", 0), 0u);
  EXPECT_NE(dot.find("(AAA, r"), std::string::npos);
  EXPECT_NE(dot.find("K:0"), std::string::npos);
  EXPECT_NE(dot.find("fillcolor"), std::string::npos);
  EXPECT_EQ(dot.back(), '\n');
}

}  // namespace
}  // namespace mpts
