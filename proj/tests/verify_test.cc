// Copyright 2026 The gapforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "gapforge/verify.h"

#include <gtest/gtest.h>

#include <sstream>

#include "gapforge/errors.h"
#include "gapforge/graph.h"
#include "gapforge/rng.h"

namespace gapforge {
namespace {

Graph random_graph(Rng& rng, int n, int percent) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng.below(100)) < percent) g.add_edge(u, v);
  return g;
}

// Largest clique over all vertex subsets.
int oracle_omega(const Graph& g) {
  const int n = g.num_vertices();
  int best = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if ((mask >> u & 1) && (mask >> v & 1) && !g.adjacent(u, v)) ok = false;
    if (ok) best = size;
  }
  return best;
}

TEST(GraphTest, DimacsRoundTrip) {
  Rng rng(1);
  const Graph g = random_graph(rng, 70, 30);
  std::stringstream ss;
  write_dimacs(ss, g);
  EXPECT_EQ(read_dimacs(ss), g);
  std::istringstream bad("p edge 3 1\ne 1 4\n");
  EXPECT_THROW(read_dimacs(bad), ParseError);
  std::istringstream loop("p edge 3 1\ne 2 2\n");
  EXPECT_THROW(read_dimacs(loop), ParseError);
}

TEST(ExactTest, SmallFamilies) {
  EXPECT_EQ(max_clique_exact(complete_graph(5)).lower_bound, 5);
  const CliqueReport c5 = max_clique_exact(cycle_graph(5));
  EXPECT_EQ(c5.lower_bound, 2);
  EXPECT_TRUE(c5.exact);
  EXPECT_EQ(max_clique_exact(Graph(0)).lower_bound, 0);
  EXPECT_EQ(max_clique_exact(Graph(3)).lower_bound, 1);
}

TEST(ExactTest, MatchesAllSubsetsOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(14));
    const Graph g = random_graph(rng, n, 10 + static_cast<int>(rng.below(80)));
    const CliqueReport r = max_clique_exact(g);
    ASSERT_TRUE(r.exact);
    ASSERT_EQ(r.lower_bound, oracle_omega(g));
    ASSERT_TRUE(g.is_clique(r.witness));
    ASSERT_EQ(r.upper_bound, r.lower_bound);
  }
}

TEST(ExactTest, AddingEdgesNeverLowersOmega) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g(30);
    int last = 0;
    for (int step = 0; step < 8; ++step) {
      for (int e = 0; e < 40; ++e) {
        const int u = static_cast<int>(rng.below(30)), v = static_cast<int>(rng.below(30));
        if (u != v) g.add_edge(u, v);
      }
      const int now = max_clique_exact(g).lower_bound;
      EXPECT_GE(now, last);
      last = now;
    }
  }
}

TEST(ExactTest, NodeBudgetGivesInexactBounds) {
  Rng rng(4);
  const Graph g = random_graph(rng, 200, 90);
  ExactOptions opt;
  opt.node_budget = 10;
  const CliqueReport r = max_clique_exact(g, opt);
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.upper_bound.has_value());
  EXPECT_LE(r.lower_bound, *r.upper_bound);
  EXPECT_TRUE(g.is_clique(r.witness));
}

TEST(LocalSearchTest, CompleteGraphAndDeterminism) {
  EXPECT_EQ(clique_local_search(complete_graph(8)).lower_bound, 8);
  Rng rng(5);
  const Graph g = random_graph(rng, 120, 50);
  SearchOptions opt;
  opt.restarts = 20;
  opt.seed = 77;
  const CliqueReport a = clique_local_search(g, opt), b = clique_local_search(g, opt);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(g.is_clique(a.witness));
  EXPECT_LE(a.lower_bound, max_clique_exact(g).lower_bound);
}

TEST(LocalSearchTest, FindsPlantedCliqueInNoise) {
  Rng rng(6);
  Graph g = random_graph(rng, 150, 30);
  for (int u = 0; u < 20; ++u)
    for (int v = u + 1; v < 20; ++v) g.add_edge(u * 7, v * 7);
  SearchOptions opt;
  opt.restarts = 200;
  EXPECT_GE(clique_local_search(g, opt).lower_bound, 20);
}

TEST(LocalSearchTest, WarmStartMustBeClique) {
  SearchOptions opt;
  opt.warm_start = {0, 2};
  EXPECT_THROW(clique_local_search(cycle_graph(5), opt), DomainError);
}

}  // namespace
}  // namespace gapforge
