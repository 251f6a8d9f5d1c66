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


#include "gapforge/pipeline.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapforge/errors.h"
#include "gapforge/io.h"
#include "gapforge/rng.h"

namespace gapforge {
namespace {

int omega_oracle(const Graph& g) {
  const int n = g.num_vertices();
  int best = 0;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if ((s >> u & 1) && (s >> v & 1) && !g.adjacent(u, v)) ok = false;
    if (ok) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

Graph graph_from_mask(int n, uint32_t mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) g.add_edge(u, v);
  return g;
}

Graph triangle(bool drop_edge) {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  if (!drop_edge) g.add_edge(0, 2);
  return g;
}

TEST(PlainToMulticolorTest, Examples) {
  EXPECT_TRUE(brute_force_multicolor_clique(plain_to_multicolor(complete_graph(3), 3)));
  EXPECT_FALSE(brute_force_multicolor_clique(plain_to_multicolor(cycle_graph(4), 3)));
  EXPECT_TRUE(brute_force_multicolor_clique(plain_to_multicolor(Graph(1), 1)));
  EXPECT_FALSE(brute_force_multicolor_clique(plain_to_multicolor(Graph(0), 1)));
}

TEST(PlainToMulticolorTest, LayoutAndColors) {
  const MulticolorGraph m = plain_to_multicolor(triangle(true), 2);
  EXPECT_EQ(m.num_vertices(), 6);
  EXPECT_EQ(m.color(4), 1);
  // (0,0)-(1,1) and (1,0)-(2,1) only; no u = v links, no backwards pairs
  EXPECT_EQ(m.edges(), (std::vector<std::pair<int, int>>{{0, 4}, {1, 5}}));
}

TEST(PlainToMulticolorTest, MatchesCliqueNumberOnAllSmallGraphs) {
  for (int n = 0; n <= 5; ++n)
    for (uint32_t mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      const int w = omega_oracle(g);
      for (int k = 1; k <= 4; ++k) {
        const bool found = brute_force_multicolor_clique(plain_to_multicolor(g, k)).has_value();
        ASSERT_EQ(found, w >= k) << "n=" << n << " mask=" << mask << " k=" << k;
      }
    }
}

TEST(ParametersTest, Defaults) {
  PipelineConfig c;
  c.k = 3;
  const CliqueReduction red = reduce_clique(plain_to_multicolor(complete_graph(3), 3));
  const PipelineParams p = resolve_parameters(red.instance, c);
  EXPECT_EQ(p.k_prime, 6);
  EXPECT_EQ(p.h, 36);
  // 18 distinct vectors -> 2*5 + 72
  EXPECT_EQ(p.n, 18);
  EXPECT_EQ(p.ell, 82);
  EXPECT_EQ(p.r, big_pow(4, 216));
  c.h = 1;
  c.ell = 3;
  c.replication = 7;
  const PipelineParams q = resolve_parameters(red.instance, c);
  EXPECT_EQ(q.h, 1);
  EXPECT_EQ(q.ell, 3);
  EXPECT_EQ(q.r, 7);
}

TEST(PipelineTest, DryRunReportsFormulas) {
  PipelineConfig c;
  c.k = 3;
  c.dry_run = true;
  Bundle b = run_pipeline(complete_graph(3), c);
  EXPECT_EQ(b.count("instance.vsi"), 1u);
  EXPECT_EQ(b.count("scheme.txt"), 0u);
  auto kv = parse_report(b["report.txt"]);
  EXPECT_EQ(kv["dry_run"], "true");
  const BigInt n = big_pow(4, 216), q = big_pow(4, 82);
  EXPECT_EQ(kv["sizes.tuples"], n.str());
  EXPECT_EQ(kv["sizes.vertices"], BigInt(n * n * q * q + n * n * q).str());
  EXPECT_EQ(kv["sizes.planted_clique"], BigInt(2 * n * n).str());
  EXPECT_EQ(kv["sizes.planted_clique"], big_pow(2, 865).str());
  EXPECT_EQ(kv["sizes.planted_clique_pow2"], "2^865");
}

TEST(PipelineTest, TriangleTinyOverridesPlantsAClique) {
  PipelineConfig c;
  c.k = 3;
  c.h = 1;
  c.ell = 1;
  c.replication = 1;
  Bundle b = run_pipeline(triangle(false), c);
  auto kv = parse_report(b["report.txt"]);
  EXPECT_EQ(kv["instance.solvable"], "true");
  EXPECT_EQ(kv["honest.all_satisfied"], "true");
  EXPECT_EQ(kv["completeness.is_clique"], "true");
  EXPECT_EQ(kv["completeness.size"], BigInt(big_pow(4, 12) + big_pow(4, 6)).str());
  EXPECT_EQ(kv["graph.explicit"], "false");
  EXPECT_EQ(b.count("graph.implicit"), 1u);
  ASSERT_EQ(b.count("planted.clq"), 1u);
  // header plus one line per tuple
  const std::string& clq = b["planted.clq"];
  EXPECT_EQ(std::count(clq.begin(), clq.end(), '\n'), 1 + 4096);
  EXPECT_EQ(clq.rfind("planted 16781312\n", 0), 0u);
}

TEST(PipelineTest, PlantedFileMatchesHonestAssignment) {
  PipelineConfig c;
  c.k = 3;
  c.h = 1;
  c.ell = 1;
  c.replication = 1;
  Bundle b = run_pipeline(triangle(false), c);
  std::istringstream vsi(b["instance.vsi"]), sch(b["scheme.txt"]);
  const CspInstance csp(read_vsi(vsi), read_scheme(sch));
  std::istringstream clq(b["planted.clq"]);
  std::string header;
  std::getline(clq, header);
  const Assignment x = read_assignment(clq, csp);
  EXPECT_TRUE(evaluate(csp, x, EvalMode::exact()).all_satisfied());
}

TEST(PipelineTest, TriangleMinusEdgeProbeIsBelow) {
  for (bool derandomize : {false, true}) {
    PipelineConfig c;
    c.k = 3;
    c.h = derandomize ? 2 : 1;
    c.replication = 1;
    c.derandomize = derandomize;
    Bundle b = run_pipeline(triangle(true), c);
    auto kv = parse_report(b["report.txt"]);
    EXPECT_EQ(kv["instance.solvable"], "false");
    EXPECT_EQ(b.count("planted.clq"), 0u);
    EXPECT_EQ(kv["soundness.verdict"], "below") << derandomize;
    if (derandomize) {
      EXPECT_EQ(kv["scheme.injective"], "true");
      EXPECT_EQ(kv["scheme.alpha"], "true");
      EXPECT_EQ(kv["scheme.self_correction"], "true");
    }
  }
}

TEST(PipelineTest, ExplicitExportAndExactProbe) {
  // one set {1}, target 1, so the instance is solvable
  const VectorSumInstance yes(1, {{FVector::from_digits("1")}}, FVector::from_digits("1"));
  const VectorSumInstance no(1, {{FVector::from_digits("0")}}, FVector::from_digits("1"));
  PipelineConfig c;
  c.h = 1;
  c.replication = 1;
  c.derandomize = true;  // the identity projection; a random 1x1 matrix may be zero
  Bundle y = run_pipeline(yes, c);
  auto ky = parse_report(y["report.txt"]);
  ASSERT_EQ(ky["ell"], "1");
  EXPECT_EQ(ky["graph.explicit"], "true");
  EXPECT_EQ(ky["graph.vertices"], "272");
  EXPECT_EQ(ky["completeness.method"], "pairwise");
  EXPECT_EQ(ky["completeness.is_clique"], "true");
  EXPECT_EQ(ky["soundness.mode"], "exact");
  EXPECT_EQ(ky["soundness.verdict"], "reached");
  EXPECT_EQ(ky["soundness.best_size"], "20");
  ASSERT_EQ(y.count("graph.dimacs"), 1u);
  std::istringstream dim(y["graph.dimacs"]);
  const Graph g = read_dimacs(dim);
  EXPECT_EQ(std::to_string(g.num_vertices()), ky["graph.exported_vertices"]);
  // ids line names a clique of the exported graph
  std::istringstream clq(y["planted.clq"]);
  std::string header, ids_line;
  std::getline(clq, header);
  std::getline(clq, ids_line);
  std::istringstream ids(ids_line.substr(4));
  std::vector<int> members;
  for (int id; ids >> id;) members.push_back(id - 1);
  EXPECT_EQ(members.size(), 20u);
  EXPECT_TRUE(g.is_clique(members));

  Bundle n = run_pipeline(no, c);
  auto kn = parse_report(n["report.txt"]);
  EXPECT_EQ(kn["soundness.verdict"], "below");
  EXPECT_EQ(kn["soundness.exact"], "true");
  EXPECT_LT(std::stoi(kn["soundness.best_size"]), 20);
  EXPECT_EQ(kn["soundness.below_threshold"], "true");
}

TEST(PipelineTest, SmallCorpusCompletenessAndSoundness) {
  Rng rng(11);
  int yes = 0, no = 0;
  for (int n = 1; n <= 4; ++n)
    for (uint32_t mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      const int w = omega_oracle(g);
      for (int k = 2; k <= 3; ++k) {
        // k = 3 runs cost ~0.1 s each; sample a few
        if (k == 3 && rng.below(6) != 0) continue;
        PipelineConfig c;
        c.k = k;
        c.h = 1;
        c.replication = 1;
        auto kv = parse_report(run_pipeline(g, c)["report.txt"]);
        ASSERT_EQ(kv["instance.solvable"], w >= k ? "true" : "false");
        if (w >= k) {
          ++yes;
          EXPECT_EQ(kv["completeness.is_clique"], "true");
        } else {
          ++no;
          EXPECT_NE(kv["soundness.verdict"], "reached") << "n=" << n << " mask=" << mask << " k=" << k;
        }
      }
    }
  EXPECT_GT(yes, 5);
  EXPECT_GT(no, 5);
}

TEST(PipelineTest, DeterministicBundles) {
  PipelineConfig c;
  c.k = 2;
  c.h = 1;
  c.replication = 2;
  c.seed = 99;
  const Graph g = cycle_graph(5);
  EXPECT_EQ(run_pipeline(g, c), run_pipeline(g, c));
  PipelineConfig d = c;
  d.seed = 100;
  EXPECT_NE(run_pipeline(g, c).at("scheme.txt"), run_pipeline(g, d).at("scheme.txt"));
}

TEST(PipelineTest, BudgetErrorsNameTheStage) {
  PipelineConfig c;
  c.k = 3;
  c.h = 1;
  c.ell = 1;
  c.replication = 1;
  c.budgets.scheme = 10;
  try {
    run_pipeline(triangle(false), c);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.stage(), "scheme");
  }
  c.budgets.scheme = kDefaultSchemeBudget;
  c.budgets.csp = 1000;
  try {
    run_pipeline(triangle(false), c);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.stage(), "csp");
  }
  PipelineConfig d;
  d.k = 3;
  try {
    run_pipeline(triangle(false), d);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.stage(), "csp");  // k'h = 216
  }
}

TEST(PipelineTest, WriteBundleCreatesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "gapforge_bundle_test";
  std::filesystem::remove_all(dir);
  write_bundle(dir.string(), Bundle{{"a.txt", "x\n"}, {"report.txt", "k=1\n"}});
  std::ifstream f(dir / "report.txt");
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "k=1");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gapforge
