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


#include "gapforge/gapgraph.h"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "gapforge/errors.h"
#include "gapforge/rng.h"
#include "gapforge/verify.h"

namespace gapforge {
namespace {

EncodingScheme two_bit_scheme() {
  return EncodingScheme(1, 2, {FMat::from_rows({FVector::from_digits("12")})},
                        Provenance::kDerandomized);
}

CspInstance one_set(std::vector<const char*> set, const char* target) {
  std::vector<FVector> vs;
  for (const char* d : set) vs.push_back(FVector::from_digits(d));
  const FVector t = FVector::from_digits(target);
  return CspInstance(VectorSumInstance(2, {vs}, t), two_bit_scheme());
}

// Independent adjacency: collect the union assignment and run through every
// constraint of every family, checking those whose variables are all
// assigned.
bool oracle_adjacent(const GapGraph& g, const Vertex& u, const Vertex& w) {
  if (u == w) return false;
  const CspInstance& csp = g.csp();
  const int kh = csp.k() * csp.h();
  std::map<FVector, FVector> assigned;
  auto assign = [&](uint64_t tuple, uint64_t value) {
    const FVector t = vector_from_index(kh, tuple), v = vector_from_index(csp.ell(), value);
    auto [it, fresh] = assigned.emplace(t, v);
    return fresh || it->second == v;
  };
  for (const Vertex& x : {u, w}) {
    if (const auto* b = std::get_if<BVertex>(&x)) {
      if (!assign(b->a ^ b->b, b->y ^ b->z) || !assign(b->a, b->y) || !assign(b->b, b->z)) return false;
    } else {
      const auto& a = std::get<AVertex>(x);
      if (!assign(a.a, a.value)) return false;
    }
  }
  auto has = [&](const FVector& t) { return assigned.count(t) > 0; };
  std::vector<FVector> tuples, alphas;
  for (uint64_t a = 0; a < csp.num_tuples(); ++a) tuples.push_back(vector_from_index(kh, a));
  for (uint64_t al = 0; al < csp.num_alphas(); ++al) alphas.push_back(vector_from_index(csp.h(), al));
  for (const FVector& a : tuples)
    for (const FVector& b : tuples)
      if (has(a) && has(b) && has(a + b) && assigned[a + b] != assigned[a] + assigned[b]) return false;
  for (const FVector& a : tuples)
    for (const FVector& al : alphas) {
      for (int i = 0; i < csp.k(); ++i) {
        FVector s = a;
        for (int r = 0; r < csp.h(); ++r) s.set(i * csp.h() + r, a[i * csp.h() + r] + al[r]);
        if (!has(a) || !has(s)) continue;
        bool ok = false;
        for (const FVector& v : csp.instance().set(i))
          ok = ok || assigned[s] - assigned[a] == encode_f(csp.scheme(), al, v);
        if (!ok) return false;
      }
      FVector s = a;
      for (int i = 0; i < csp.k(); ++i)
        for (int r = 0; r < csp.h(); ++r) s.set(i * csp.h() + r, a[i * csp.h() + r] + al[r]);
      if (has(a) && has(s) &&
          assigned[s] - assigned[a] != encode_f(csp.scheme(), al, csp.instance().target()))
        return false;
    }
  return true;
}

TEST(GapGraphTest, CountsAtSmallestParameters) {
  const GapGraph g(one_set({"10"}, "10"), 1);
  EXPECT_EQ(g.num_b_vertices(), 256);
  EXPECT_EQ(g.num_a_vertices(), 16);
  EXPECT_EQ(g.planted_size(), 20);
  const ExplicitGapGraph ex = export_explicit(g);
  EXPECT_EQ(ex.graph.num_vertices(), 272);
  for (uint64_t id = 0; id < 272; ++id) EXPECT_EQ(g.id_of(ex.vertices[id]), id);
}

TEST(GapGraphTest, AdjacencyMatchesConstraintEnumeration) {
  for (const char* target : {"10", "01"}) {
    const GapGraph g(one_set({"10", "11"}, target), 2);
    const ExplicitGapGraph ex = export_explicit(g);
    uint64_t edges = 0;
    for (size_t u = 0; u < ex.vertices.size(); ++u)
      for (size_t w = u + 1; w < ex.vertices.size(); ++w) {
        const bool want = oracle_adjacent(g, ex.vertices[u], ex.vertices[w]);
        ASSERT_EQ(g.adjacent(ex.vertices[u], ex.vertices[w]), want) << u << " " << w;
        ASSERT_EQ(ex.graph.adjacent(static_cast<int>(u), static_cast<int>(w)), want);
        ASSERT_EQ(g.adjacent(ex.vertices[w], ex.vertices[u]), want);
        edges += want;
      }
    EXPECT_EQ(ex.graph.num_edges(), edges);
    EXPECT_GT(edges, 0u);
  }
}

TEST(GapGraphTest, GroupsAreIndependent) {
  const GapGraph g(one_set({"10"}, "10"), 2);
  for (Tuple a = 0; a < 4; ++a)
    for (Tuple b = 0; b < 4; ++b)
      for (Value p = 0; p < 16; ++p)
        for (Value q = p + 1; q < 16; ++q)
          EXPECT_FALSE(g.adjacent(BVertex{a, b, p / 4, p % 4}, BVertex{a, b, q / 4, q % 4}));
  for (Tuple a = 0; a < 4; ++a)
    for (Value p = 0; p < 4; ++p)
      for (Value q = 0; q < 4; ++q) {
        EXPECT_FALSE(g.adjacent(AVertex{a, 1, p}, AVertex{a, 1, q}));
        // Copies of the same variable only meet when they agree.
        EXPECT_EQ(g.adjacent(AVertex{a, 0, p}, AVertex{a, 1, q}),
                  p == q && g.admissible(AVertex{a, 0, p}));
      }
}

TEST(GapGraphTest, BAndAVertexSharingATuple) {
  // x_1 = y from the A side, (x, y, z) on tuples (a+b, a, b) = (3, 1, 2).
  const GapGraph g(one_set({"10", "11"}, "10"), 1);
  for (Value y = 0; y < 4; ++y)
    for (Value z = 0; z < 4; ++z)
      for (Value val = 0; val < 4; ++val) {
        const BVertex b{1, 2, y, z};
        const AVertex a{1, 0, val};
        EXPECT_EQ(g.adjacent(b, a), oracle_adjacent(g, b, a));
        if (val != y) EXPECT_FALSE(g.adjacent(b, a));
      }
}

TEST(PlantedTest, SizeAndPairwiseCheckOnYesInstance) {
  const GapGraph g(one_set({"10", "01"}, "01"), 1);
  const PlantedClique p = planted_clique(g, SelectionCertificate{{1}});
  EXPECT_TRUE(p.from_satisfying_selection);
  EXPECT_EQ(p.size, 20);
  const CliqueSet s = p.materialize(g);
  EXPECT_EQ(s.size(), 20u);
  EXPECT_TRUE(is_clique(g, s).ok);
  EXPECT_TRUE(is_clique(g, p));
  std::set<Vertex> distinct(s.begin(), s.end());
  EXPECT_EQ(distinct.size(), 20u);
}

TEST(PlantedTest, FullReplicationDoublesTheBPart) {
  const CspInstance csp(VectorSumInstance(2, {{FVector::from_digits("10")}, {FVector::from_digits("01")}},
                                          FVector::from_digits("11")),
                        two_bit_scheme());
  const GapGraph g(csp, csp.num_tuples());
  const PlantedClique p = planted_clique(g, SelectionCertificate{{0, 0}});
  EXPECT_EQ(p.size, 2 * 256);
  const CliqueSet s = p.materialize(g);
  EXPECT_TRUE(is_clique(g, s).ok);
}

TEST(PlantedTest, ExtraGroupMemberBreaksTheClique) {
  const GapGraph g(one_set({"10", "01"}, "01"), 1);
  CliqueSet s = planted_clique(g, SelectionCertificate{{1}}).materialize(g);
  const AVertex a = std::get<AVertex>(s.back());
  const AVertex other{a.a, a.copy, (a.value + 1) % 4};
  s.push_back(other);
  const CliqueCheck c = is_clique(g, s);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.violation.has_value());
  EXPECT_EQ(c.violation->second, Vertex(other));
  EXPECT_TRUE(is_clique(g, CliqueSet{s.front()}).ok);
}

TEST(PlantedTest, WrongSelectionIsFlagged) {
  const GapGraph g(one_set({"10", "01"}, "01"), 1);
  const PlantedClique p = planted_clique(g, SelectionCertificate{{0}});
  EXPECT_FALSE(p.from_satisfying_selection);
  EXPECT_FALSE(is_clique(g, p));
  EXPECT_FALSE(is_clique(g, p.materialize(g)).ok);
}

TEST(ProbeTest, ExactBelowOnNoInstanceAndReachedOnYes) {
  ProbeOptions opt;
  opt.mode = ProbeMode::kExact;
  const GapGraph no(one_set({"10"}, "01"), 1);
  const ProbeResult r = soundness_probe(no, opt);
  EXPECT_EQ(r.verdict, Verdict::kBelow);
  ASSERT_TRUE(r.exact_omega.has_value());
  EXPECT_LT(*r.exact_omega, 20);
  const GapGraph yes(one_set({"10", "01"}, "01"), 1);
  const ProbeResult y = soundness_probe(yes, opt);
  EXPECT_EQ(y.verdict, Verdict::kReached);
  EXPECT_EQ(y.exact_omega, 20);
  EXPECT_TRUE(is_clique(yes, y.witness).ok);
}

TEST(ProbeTest, StructuralAgreesWithExactSolveOnSmallestGraphs) {
  // Every instance over {0,1}^2 with one set and the injective scheme.
  for (uint64_t mask = 1; mask < 16; ++mask) {
    std::vector<FVector> set;
    for (uint64_t v = 0; v < 4; ++v)
      if (mask >> v & 1) set.push_back(FVector::from_binary_mask(2, v));
    for (uint64_t t = 0; t < 4; ++t) {
      const CspInstance csp(VectorSumInstance(2, {set}, FVector::from_binary_mask(2, t)), two_bit_scheme());
      const GapGraph g(csp, 1);
      ProbeOptions opt;
      opt.mode = ProbeMode::kExact;
      const ProbeResult exact = soundness_probe(g, opt);
      opt.mode = ProbeMode::kStructural;
      const ProbeResult structural = soundness_probe(g, opt);
      EXPECT_EQ(exact.verdict, structural.verdict) << mask << " " << t;
      EXPECT_EQ(structural.verdict == Verdict::kReached, static_cast<bool>(mask >> t & 1));
    }
  }
}

TEST(ProbeTest, StructuralMatchesBruteForceOverAllAssignments) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<FVector> set;
    for (int j = 0; j < 1 + static_cast<int>(rng.below(3)); ++j) set.push_back(rng.binary_vector(3));
    const CspInstance csp(VectorSumInstance(3, {set}, rng.binary_vector(3)), sample_scheme(rng.next(), 1, 3, 1));
    bool any = false;
    for (uint64_t code = 0; code < 256 && !any; ++code) {
      Assignment x(4, 1);
      for (Tuple a = 0; a < 4; ++a) x.set(a, FVector::from_elements({Gf4::from_bits((code >> (2 * a)) & 3)}));
      any = evaluate(csp, x, EvalMode::exact()).all_satisfied();
    }
    const auto found = satisfying_assignment(csp);
    EXPECT_EQ(found.has_value(), any);
    if (found) EXPECT_TRUE(evaluate(csp, *found, EvalMode::exact()).all_satisfied());
  }
}

TEST(ProbeTest, SampledSearchReachesPlantedOnYesInstance) {
  const GapGraph g(one_set({"10", "01"}, "01"), 1);
  ProbeOptions opt;
  opt.mode = ProbeMode::kSampled;
  opt.restarts = 200;
  const ProbeResult r = soundness_probe(g, opt);
  EXPECT_EQ(r.verdict, Verdict::kReached);
}

TEST(ProbeTest, WarmStartedSearchReachesPlantedSize) {
  const CspInstance csp(VectorSumInstance(2, {{FVector::from_digits("10")}, {FVector::from_digits("01")}},
                                          FVector::from_digits("11")),
                        two_bit_scheme());
  const GapGraph g(csp, 4);
  const ExplicitGapGraph ex = export_explicit(g);
  const CliqueSet planted = planted_clique(g, SelectionCertificate{{0, 0}}).materialize(g);
  SearchOptions opt;
  opt.restarts = 2;
  // Half of the planted clique as warm start; the rest is found greedily.
  for (size_t i = 0; i < planted.size(); i += 2) opt.warm_start.push_back(static_cast<int>(g.id_of(planted[i])));
  const CliqueReport r = clique_local_search(ex.graph, opt);
  EXPECT_GE(r.lower_bound, static_cast<int>(planted.size()));
}

TEST(ProbeTest, ImplicitSearchWitnessIsAClique) {
  const GapGraph g(one_set({"10", "01"}, "01"), 1);
  const GapSearchResult s = gap_local_search(g, 5, 3);
  EXPECT_TRUE(is_clique(g, s.best).ok);
  EXPECT_GT(s.best.size(), 0u);
}

TEST(VertexMapTest, SidecarLines) {
  const GapGraph g(one_set({"10"}, "10"), 1);
  std::ostringstream os;
  write_vertex_map(os, g, {BVertex{1, 2, 3, 1}, AVertex{3, 0, 2}});
  EXPECT_EQ(os.str(), "1 B 12 231\n2 A 3 1 2\n");
}

TEST(GapGraphTest, RejectsZeroReplication) {
  EXPECT_THROW(GapGraph(one_set({"10"}, "10"), 0), DomainError);
  EXPECT_THROW(export_explicit(GapGraph(one_set({"10"}, "10"), 100), 1000), BudgetExceeded);
}

}  // namespace
}  // namespace gapforge
