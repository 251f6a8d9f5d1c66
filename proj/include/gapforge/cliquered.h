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

#ifndef GAPFORGE_CLIQUERED_H_
#define GAPFORGE_CLIQUERED_H_

// Reduction from k-Multi-Color-Clique to (k + k(k-1)/2)-Vector-Sum with 0/1
// vectors, and exhaustive oracles for both problems.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gapforge/field.h"

namespace gapforge {

inline constexpr uint64_t kDefaultBruteForceBudget = uint64_t{1} << 24;

// Vertices are 0..n-1, colors 0..k-1. Edges are stored once, as (u, v) with
// u < v. Edges inside a color class are kept but play no role in
// multicolored cliques.
class MulticolorGraph {
 public:
  MulticolorGraph(int k, std::vector<int> color, std::vector<std::pair<int, int>> edges);

  int k() const { return k_; }
  int num_vertices() const { return static_cast<int>(color_.size()); }
  int color(int v) const { return color_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const;
  // Vertices of each color class, ascending.
  std::vector<std::vector<int>> classes() const;

 private:
  int k_;
  std::vector<int> color_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<bool>> adj_;
};

// k' sets of vectors in F^m with entries in {0, 1}, and a target. A set may be
// empty; such an instance is unsolvable and has_empty_set() reports it.
class VectorSumInstance {
 public:
  VectorSumInstance(int dim, std::vector<std::vector<FVector>> sets, FVector target);

  int num_sets() const { return static_cast<int>(sets_.size()); }
  int dim() const { return dim_; }
  const std::vector<FVector>& set(int i) const { return sets_[i]; }
  const std::vector<std::vector<FVector>>& sets() const { return sets_; }
  const FVector& target() const { return target_; }
  bool has_empty_set() const;
  // Distinct members of all sets, ascending.
  std::vector<FVector> union_vectors() const;
  // Product of the set sizes (saturating).
  uint64_t search_space() const;

  friend bool operator==(const VectorSumInstance&, const VectorSumInstance&) = default;

 private:
  int dim_;
  std::vector<std::vector<FVector>> sets_;
  FVector target_;
};

// Two distinct vectors of `vectors` with one a nonzero multiple of the other,
// if any.
std::optional<std::pair<FVector, FVector>> find_scalar_multiple_pair(
    const std::vector<FVector>& vectors);

struct SelectionCertificate {
  std::vector<int> index;  // one chosen member per set
  friend bool operator==(const SelectionCertificate&, const SelectionCertificate&) = default;
};

// True iff the chosen vectors sum to the target. Out-of-range indices are a
// DimensionError.
bool verify_selection(const VectorSumInstance& inst, const SelectionCertificate& sel);

// The reduced instance together with where each vector came from. Sets
// 0..k-1 hold the vertex vectors w_v of each color class; set k + p holds the
// edge vectors w_e between the color pair with colex index p.
struct CliqueReduction {
  VectorSumInstance instance;
  int k = 0;
  int code_bits = 0;  // ceil(log2(|V| + 1))
  std::vector<std::vector<int>> vertex_of;                   // sets 0..k-1
  std::vector<std::vector<std::pair<int, int>>> edge_of;     // sets k..

  // Selection picking w_{v_i} and w_{v_i v_j} for a multicolored clique given
  // as one vertex per color. nullopt when the tuple is not such a clique.
  std::optional<SelectionCertificate> selection_for_clique(const std::vector<int>& clique) const;
  // Reads off v_i from the vertex sets and checks that every chosen edge
  // between classes i and j has endpoints v_i and v_j. Returns the clique
  // when that holds.
  std::optional<std::vector<int>> clique_for_selection(const SelectionCertificate& sel) const;
};

// Colex rank of the color pair {i, j}, i < j.
inline int color_pair_index(int i, int j) { return j * (j - 1) / 2 + i; }
std::pair<int, int> color_pair_from_index(int p);

// Gadget reduction. m = k + k(k-1)/2 + k^2 * ceil(log2(|V|+1)); vertex v is
// encoded by the binary expansion of v + 1 (most significant bit first), so
// no code is zero.
CliqueReduction reduce_clique(const MulticolorGraph& g);

// Exhaustive search in lexicographic order of selections. Throws
// BudgetExceeded when the product of set sizes exceeds the budget.
std::optional<SelectionCertificate> brute_force_vector_sum(
    const VectorSumInstance& inst, uint64_t budget = kDefaultBruteForceBudget);

// One vertex per color class, pairwise adjacent, first in lexicographic
// order. Throws BudgetExceeded when the product of class sizes exceeds the
// budget.
std::optional<std::vector<int>> brute_force_multicolor_clique(
    const MulticolorGraph& g, uint64_t budget = kDefaultBruteForceBudget);

}  // namespace gapforge

#endif  // GAPFORGE_CLIQUERED_H_
