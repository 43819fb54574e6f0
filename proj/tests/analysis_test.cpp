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

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "mpts/analysis.hpp"
#include "mpts/error.hpp"
#include "mpts/graph.hpp"
#include "mpts/philosophers.hpp"
#include "oracles.hpp"

namespace mpts {
namespace {

// Wraps a chain as a product with the given lifted pairs and a dummy projection.
ProductAutomaton as_product(const MarkovChain& c, std::vector<RabinPair> pairs) {
  ProductAutomaton g;
  for (std::size_t s = 0; s < c.size(); ++s) {
    g.states.push_back({s, 0});
    std::vector<ProductEdge> out;
    for (const auto& t : c.rows[s]) out.push_back({{}, t.probability, t.target});
    g.edges.push_back(std::move(out));
  }
  g.pairs = std::move(pairs);
  g.frontier.assign(c.size(), false);
  return g;
}

RabinPair random_pair(testing::Rng& rng, std::size_t n) {
  RabinPair p{std::vector<bool>(n), std::vector<bool>(n)};
  for (std::size_t s = 0; s < n; ++s) {
    p.fin[s] = testing::uniform01(rng) < 0.2;
    p.inf[s] = testing::uniform01(rng) < 0.4;
  }
  return p;
}

MarkovChain chain_of(std::vector<std::vector<ChainTransition>> rows) {
  MarkovChain c;
  c.rows = std::move(rows);
  return c;
}

TEST(Tarjan, ThreeCycleIsOneComponent) {
  const Digraph g = {{1}, {2}, {0}};
  const auto sccs = tarjan_scc(g);
  ASSERT_EQ(sccs.size(), 1u);
  EXPECT_EQ(sccs[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Tarjan, DagGivesSingletons) {
  const Digraph g = {{1, 2}, {3}, {3}, {}};
  const auto sccs = tarjan_scc(g);
  EXPECT_EQ(sccs.size(), 4u);
  for (const auto& c : sccs) EXPECT_EQ(c.size(), 1u);
}

TEST(Tarjan, ReverseTopologicalOrder) {
  testing::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const Digraph g = testing::random_digraph(rng, 1 + testing::uniform_index(rng, 12), 0.2);
    const auto sccs = tarjan_scc(g);
    const auto index = component_index(sccs, g.size());
    for (std::size_t u = 0; u < g.size(); ++u)
      for (std::size_t v : g[u]) EXPECT_LE(index[v], index[u]);
  }
}

TEST(Tarjan, MatchesClosureOracle) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + testing::uniform_index(rng, 12);
    const Digraph g = testing::random_digraph(rng, n, testing::uniform01(rng) * 0.4);
    ASSERT_EQ(testing::sorted_components(tarjan_scc(g)), testing::scc_oracle(g));
    ASSERT_EQ(testing::sorted_components(bottom_sccs(g)), testing::bscc_oracle(g));
  }
}

TEST(Bscc, AbsorbingStateAndEscapingComponent) {
  // {0,1} is a cycle with an edge to the absorbing state 2
  const MarkovChain c = chain_of({{{1, 0.5}, {2, 0.5}}, {{0, 1.0}}, {{2, 1.0}}});
  const auto bsccs = bottom_sccs(as_product(c, {}));
  ASSERT_EQ(bsccs.size(), 1u);
  EXPECT_EQ(bsccs[0], (std::vector<std::size_t>{2}));
}

TEST(Bscc, RandomChainsMatchOracle) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const MarkovChain c = testing::random_chain(rng, 1 + testing::uniform_index(rng, 12), 0.2);
    ASSERT_EQ(testing::sorted_components(bottom_sccs(as_product(c, {}))), testing::bscc_oracle(c.graph()));
  }
}

TEST(AcceptingComponents, SingleAbsorbingKState) {
  const MarkovChain c = chain_of({{{1, 1.0}}, {{1, 1.0}}});
  const auto g = as_product(c, {{{false, false}, {false, true}}});
  EXPECT_EQ(accepting_components(g), (std::vector<std::size_t>{1}));
}

TEST(AcceptingComponents, BsccMeetingEveryFinSetExcluded) {
  const MarkovChain c = chain_of({{{1, 1.0}}, {{2, 1.0}}, {{1, 1.0}}});
  const auto g = as_product(c, {{{false, true, false}, {false, false, true}},
                                {{false, false, true}, {false, true, false}}});
  EXPECT_TRUE(accepting_components(g).empty());
}

TEST(AcceptingComponents, FrontierBsccIsNeverAccepting) {
  const MarkovChain c = chain_of({{{1, 1.0}}, {}});
  auto g = as_product(c, {{{false, false}, {true, true}}});
  EXPECT_EQ(accepting_components(g), (std::vector<std::size_t>{1}));
  g.frontier[1] = true;
  EXPECT_TRUE(accepting_components(g).empty());
}

TEST(AcceptingComponents, Invariants) {
  testing::Rng rng(4);
  std::size_t seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + testing::uniform_index(rng, 12);
    const MarkovChain c = testing::random_chain(rng, n, 0.2);
    std::vector<RabinPair> pairs;
    for (std::size_t k = 0; k < 1 + testing::uniform_index(rng, 2); ++k) pairs.push_back(random_pair(rng, n));
    const auto g = as_product(c, pairs);
    const Digraph graph = c.graph();
    const auto bsccs = testing::bscc_oracle(graph);
    std::vector<std::size_t> bscc_union;
    for (const auto& b : bsccs) bscc_union.insert(bscc_union.end(), b.begin(), b.end());
    std::sort(bscc_union.begin(), bscc_union.end());
    EXPECT_EQ(std::adjacent_find(bscc_union.begin(), bscc_union.end()), bscc_union.end());

    for (const auto& ac : accepting_component_list(g)) {
      ++seen;
      const auto& s = ac.states;
      EXPECT_TRUE(std::includes(bscc_union.begin(), bscc_union.end(), s.begin(), s.end()));
      std::vector<double> row_sum(n, 0.0);
      for (const auto& [edge, p] : ac.probability) {
        EXPECT_TRUE(std::binary_search(s.begin(), s.end(), edge.first));
        EXPECT_TRUE(std::binary_search(s.begin(), s.end(), edge.second));
        row_sum[edge.first] += p;
      }
      for (std::size_t x : s) {
        EXPECT_NEAR(row_sum[x], 1.0, 1e-9);
        for (std::size_t y : graph[x]) EXPECT_TRUE(std::binary_search(s.begin(), s.end(), y));
      }
      const auto closure = testing::reachability_closure(graph);
      for (std::size_t x : s)
        for (std::size_t y : s) EXPECT_TRUE(closure[x][y]);
      bool rabin = false;
      for (const auto& pair : pairs) {
        bool fin = false, inf = false;
        for (std::size_t x : s) {
          fin = fin || pair.fin[x];
          inf = inf || pair.inf[x];
        }
        rabin = rabin || (!fin && inf);
      }
      EXPECT_TRUE(rabin);
    }
  }
  EXPECT_GT(seen, 20u);
}

TEST(Reachability, OneStepSplit) {
  const MarkovChain c = chain_of({{{1, 0.5}, {2, 0.5}}, {{1, 1.0}}, {{2, 1.0}}});
  const auto v = reachability_probability(c, {false, true, false});
  EXPECT_DOUBLE_EQ(v[0], 0.5);
  EXPECT_EQ(v[1], 1.0);
  EXPECT_EQ(v[2], 0.0);
}

TEST(Reachability, GeometricSeriesIsExactlyOne) {
  for (double p : {0.9, 0.5, 1e-3, 1e-7}) {
    const MarkovChain c = chain_of({{{0, 1 - p}, {1, p}}, {{1, 1.0}}});
    EXPECT_EQ(reachability_probability(c, {false, true})[0], 1.0) << p;
  }
}

TEST(Reachability, MatchesValueIteration) {
  testing::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + testing::uniform_index(rng, 10);
    const MarkovChain c = testing::random_chain(rng, n, 0.3);
    std::vector<bool> target(n);
    for (std::size_t s = 0; s < n; ++s) target[s] = testing::uniform01(rng) < 0.25;
    const auto v = reachability_probability(c, target);
    const auto oracle = testing::value_iteration(c, target);
    const auto reach = backward_reachable(c.graph(), target);
    for (std::size_t s = 0; s < n; ++s) {
      ASSERT_NEAR(v[s], oracle[s], 1e-6);
      ASSERT_GE(v[s], 0.0);
      ASSERT_LE(v[s], 1.0);
      if (target[s]) {
        ASSERT_EQ(v[s], 1.0);
        continue;
      }
      // qualitative zero set is exact
      ASSERT_EQ(v[s] == 0.0, !reach[s]);
      double rhs = 0.0;
      for (const auto& t : c.rows[s]) rhs += t.probability * v[t.target];
      ASSERT_LE(std::abs(v[s] - rhs), 1e-9);
    }
  }
}

TEST(Reachability, LongRunDichotomy) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + testing::uniform_index(rng, 12);
    const MarkovChain c = testing::random_chain(rng, n, 0.2);
    const auto g = as_product(c, {random_pair(rng, n)});
    std::vector<bool> accepting(n, false), rejecting(n, false);
    for (std::size_t s : accepting_components(g)) accepting[s] = true;
    for (const auto& b : bottom_sccs(g))
      for (std::size_t s : b) rejecting[s] = !accepting[s];
    const auto a = reachability_probability(c, accepting);
    const auto r = reachability_probability(c, rejecting);
    for (std::size_t s = 0; s < n; ++s) ASSERT_NEAR(a[s] + r[s], 1.0, 1e-6);
  }
}

TEST(Reachability, TargetSizeMismatch) {
  EXPECT_THROW(reachability_probability(chain_of({{{0, 1.0}}}), {true, false}), InputError);
}

TEST(Satisfaction, CaseStudyControllerIsAlmostSure) {
  const Mpts m = generate_philosophers();
  const auto cs = apply_controller(m, testing::load_controller(m, "case_study_controller_completed.json"));
  const Formula f = parse_ltl("G(F q1 & F q2)", m.atomic_props);
  const SatisfactionResult r = check_satisfaction(cs, ltl_to_dra(f, m.atomic_props));
  EXPECT_FALSE(r.accepting_states.empty());
  EXPECT_NEAR(r.probability, 1.0, 1e-9);
  EXPECT_NEAR(probability_of_satisfaction(cs, f), 1.0, 1e-9);
}

TEST(Satisfaction, TrueHoldsAlmostSurely) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Mpts m = testing::random_model(rng, {});
    const auto total = testing::all_total_controllers(m);
    const auto c = testing::restrict_to_reachable(m, total[testing::uniform_index(rng, total.size())]);
    EXPECT_EQ(probability_of_satisfaction(apply_controller(m, c), Formula::truth()), 1.0);
    EXPECT_EQ(probability_of_satisfaction(apply_controller(m, c), Formula::falsity()), 0.0);
  }
}

TEST(Satisfaction, ComplementsSumToOne) {
  // Pr(f) + Pr(!f) = 1 on chains, up to solver precision
  testing::Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const Mpts m = testing::random_model(rng, {.states = 5});
    const auto total = testing::all_total_controllers(m);
    const auto cs = apply_controller(m, testing::restrict_to_reachable(m, total[testing::uniform_index(rng, total.size())]));
    const Formula f = parse_ltl(testing::formula_corpus_pq()[testing::uniform_index(rng, 9)], m.atomic_props);
    EXPECT_NEAR(probability_of_satisfaction(cs, f) + probability_of_satisfaction(cs, Formula::negation(f)), 1.0, 1e-9)
        << f.to_string();
  }
}

}  // namespace
}  // namespace mpts
