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


#include "gapforge/amplify.h"

#include <gtest/gtest.h>

#include "gapforge/errors.h"
#include "gapforge/rng.h"
#include "gapforge/verify.h"

namespace gapforge {
namespace {

int omega(const Graph& g) { return max_clique_exact(g).lower_bound; }

TEST(StrongPowerTest, Examples) {
  EXPECT_EQ(export_power(strong_power(cycle_graph(5), 1)), cycle_graph(5));
  EXPECT_EQ(omega(export_power(strong_power(complete_graph(2), 2))), 4);
  const Graph c5sq = export_power(strong_power(cycle_graph(5), 2));
  EXPECT_EQ(c5sq.num_vertices(), 25);
  EXPECT_EQ(omega(c5sq), 4);
  const Graph k3sq = export_power(strong_power(complete_graph(3), 2));
  EXPECT_EQ(k3sq.num_vertices(), 9);
  EXPECT_EQ(omega(k3sq), 9);
}

TEST(StrongPowerTest, EdgeCountMatchesCoordinateRecount) {
  Rng rng(3);
  Graph g(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v)
      if (rng.below(2)) g.add_edge(u, v);
  const ProductGraph p = strong_power(g, 2);
  const Graph ex = export_power(p);
  // Recount through coordinates: closed neighbourhoods multiply.
  uint64_t twice = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) twice += static_cast<uint64_t>(g.degree(a) + 1) * (g.degree(b) + 1) - 1;
  EXPECT_EQ(ex.num_edges(), twice / 2);
  EXPECT_EQ(p.pack(p.coordinates(17)), 17u);
}

TEST(StrongPowerTest, OmegaIsMultiplicative) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(2)) g.add_edge(u, v);
    const int w = omega(g);
    for (int t : {2, 3}) {
      const Graph power = export_power(strong_power(g, t), 1000);
      int want = 1;
      for (int i = 0; i < t; ++i) want *= w;
      EXPECT_EQ(omega(power), want);
    }
  }
}

TEST(StrongPowerTest, BudgetAndDomain) {
  EXPECT_THROW(export_power(strong_power(complete_graph(10), 5), 1000), BudgetExceeded);
  EXPECT_THROW(strong_power(complete_graph(2), 0), DomainError);
}

}  // namespace
}  // namespace gapforge
