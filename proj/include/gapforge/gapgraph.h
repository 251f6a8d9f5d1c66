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


#ifndef GAPFORGE_GAPGRAPH_H_
#define GAPFORGE_GAPGRAPH_H_

// The clique instance built from the CSP. B-groups, one per ordered pair of
// tuples (a, b), hold the triples (y + z, y, z) assigning x_{a+b}, x_a, x_b.
// A-groups, one per (tuple, copy index), hold single values of one
// variable. Two vertices are adjacent when the union of their partial
// assignments is consistent and violates no constraint whose variables it
// covers completely. Values in F^ell are packed like tuples, so ell <= 31.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gapforge/csp.h"
#include "gapforge/graph.h"
#include "gapforge/rational.h"

namespace gapforge {

inline constexpr uint64_t kDefaultExportBudget = 20000;

using Value = uint64_t;

struct BVertex {
  Tuple a = 0, b = 0;
  Value y = 0, z = 0;  // x = y + z is assigned to a + b
  friend auto operator<=>(const BVertex&, const BVertex&) = default;
};

struct AVertex {
  Tuple a = 0;
  uint64_t copy = 0;
  Value value = 0;
  friend auto operator<=>(const AVertex&, const AVertex&) = default;
};

using Vertex = std::variant<BVertex, AVertex>;
using CliqueSet = std::vector<Vertex>;

std::string to_string(const Vertex& v, int tuple_digits, int ell);

class GapGraph {
 public:
  // r >= 1 copies of every A-group; ell <= 31.
  GapGraph(CspInstance csp, uint64_t r);

  const CspInstance& csp() const { return csp_; }
  uint64_t replication() const { return r_; }
  uint64_t num_values() const { return uint64_t{1} << (2 * csp_.ell()); }

  BigInt num_b_vertices() const;
  BigInt num_a_vertices() const;
  BigInt num_vertices() const { return num_b_vertices() + num_a_vertices(); }
  // One per group: 4^{2kh} + r 4^{kh}.
  BigInt planted_size() const;

  bool valid(const Vertex& v) const;
  // Whether the vertex's own assignment is consistent and breaks nothing.
  bool admissible(const Vertex& v) const;
  bool adjacent(const Vertex& u, const Vertex& w) const;

  // Compact ids: B vertices first, ordered by (a, b, y, z), then A vertices
  // ordered by (a, copy, value). Both counts must fit in 64 bits.
  uint64_t id_of(const Vertex& v) const;
  Vertex vertex_at(uint64_t id) const;

  Value encode_value(const FVector& v) const { return index_of_vector(v); }
  FVector decode_value(Value v) const { return vector_from_index(csp_.ell(), v); }

 private:
  struct Entry {
    Tuple tuple;
    Value value;
  };
  int entries(const Vertex& v, Entry* out) const;
  bool consistent(Entry* e, int n) const;
  bool allowed(int i, uint64_t alpha, Value diff) const;

  CspInstance csp_;
  uint64_t r_;
  bool empty_set_ = false;
  std::vector<std::vector<Value>> allowed_;  // per (i, alpha), ascending
  std::vector<Value> target_code_;
};

struct ExplicitGapGraph {
  Graph graph;
  std::vector<Vertex> vertices;  // index = compact id
};

// Throws BudgetExceeded when the vertex count exceeds the budget.
ExplicitGapGraph export_explicit(const GapGraph& g, uint64_t budget = kDefaultExportBudget);

// Sidecar lines: "<id> B <a b digits> <x y z digits>" or
// "<id> A <a digits> <copy> <value digits>", ids and copies 1-based.
void write_vertex_map(std::ostream& out, const GapGraph& g, const std::vector<Vertex>& vertices);

// The one-vertex-per-group set induced by a total assignment; kept in
// assignment form since it has 4^{2kh} + r 4^{kh} members.
struct PlantedClique {
  Assignment assignment;
  BigInt size;
  // Whether the selection it came from solves the vector-sum instance.
  bool from_satisfying_selection = false;

  // Every member, B groups first; throws BudgetExceeded over budget.
  CliqueSet materialize(const GapGraph& g, uint64_t budget = kDefaultExportBudget) const;
};

PlantedClique planted_clique(const GapGraph& g, const SelectionCertificate& sel);
PlantedClique planted_from_assignment(const GapGraph& g, const Assignment& x);

struct CliqueCheck {
  bool ok = true;
  std::optional<std::pair<Vertex, Vertex>> violation;  // first failing pair
};

// Pairwise check; a repeated vertex counts as a violation.
CliqueCheck is_clique(const GapGraph& g, const CliqueSet& s);
// The induced set is a clique iff the assignment satisfies every
// constraint of the CSP (every B triple then exists, and every constraint
// is covered by some pair of A vertices). Decided by exhaustive evaluation.
bool is_clique(const GapGraph& g, const PlantedClique& p, uint64_t budget = kDefaultCspBudget);

}  // namespace gapforge

#endif  // GAPFORGE_GAPGRAPH_H_
