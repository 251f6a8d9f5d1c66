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

#include "gapforge/cliquered.h"

#include <algorithm>
#include <set>
#include <string>

#include "gapforge/errors.h"

namespace gapforge {

MulticolorGraph::MulticolorGraph(int k, std::vector<int> color,
                                 std::vector<std::pair<int, int>> edges)
    : k_(k), color_(std::move(color)) {
  if (k <= 0) throw DomainError("k must be positive");
  const int n = num_vertices();
  for (int c : color_) {
    if (c < 0 || c >= k) throw DomainError("vertex color out of range");
  }
  adj_.assign(n, std::vector<bool>(n, false));
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    edges_.emplace_back(u, v);
    adj_[u][v] = adj_[v][u] = true;
  }
}

bool MulticolorGraph::adjacent(int u, int v) const { return adj_[u][v]; }

std::vector<std::vector<int>> MulticolorGraph::classes() const {
  std::vector<std::vector<int>> out(k_);
  for (int v = 0; v < num_vertices(); ++v) out[color_[v]].push_back(v);
  return out;
}

VectorSumInstance::VectorSumInstance(int dim, std::vector<std::vector<FVector>> sets,
                                     FVector target)
    : dim_(dim), sets_(std::move(sets)), target_(std::move(target)) {
  if (sets_.empty()) throw DomainError("vector-sum instance needs at least one set");
  if (target_.dim() != dim_) throw DimensionError("target dimension does not match m");
  for (const auto& s : sets_) {
    for (const FVector& v : s) {
      if (v.dim() != dim_) throw DimensionError("set member dimension does not match m");
      if (!v.is_binary()) throw DomainError("set member has an entry outside {0,1}");
    }
  }
}

bool VectorSumInstance::has_empty_set() const {
  return std::any_of(sets_.begin(), sets_.end(), [](const auto& s) { return s.empty(); });
}

std::vector<FVector> VectorSumInstance::union_vectors() const {
  std::vector<FVector> all;
  for (const auto& s : sets_) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

uint64_t VectorSumInstance::search_space() const {
  uint64_t p = 1;
  for (const auto& s : sets_) {
    if (s.empty()) return 0;
    if (p > UINT64_MAX / s.size()) return UINT64_MAX;
    p *= s.size();
  }
  return p;
}

std::optional<std::pair<FVector, FVector>> find_scalar_multiple_pair(
    const std::vector<FVector>& vectors) {
  for (size_t a = 0; a < vectors.size(); ++a) {
    for (size_t b = 0; b < vectors.size(); ++b) {
      if (vectors[a] == vectors[b]) continue;
      for (Gf4 c : {Gf4::omega(), Gf4::omega_plus_one()}) {
        if (vectors[a] == c * vectors[b]) return std::make_pair(vectors[a], vectors[b]);
      }
    }
  }
  return std::nullopt;
}

bool verify_selection(const VectorSumInstance& inst, const SelectionCertificate& sel) {
  if (static_cast<int>(sel.index.size()) != inst.num_sets()) {
    throw DimensionError("selection must pick exactly one member per set");
  }
  FVector sum = FVector::zero(inst.dim());
  for (int i = 0; i < inst.num_sets(); ++i) {
    const int idx = sel.index[i];
    if (idx < 0 || idx >= static_cast<int>(inst.set(i).size())) {
      throw DimensionError("selection index out of range for set " + std::to_string(i));
    }
    sum += inst.set(i)[idx];
  }
  return sum == inst.target();
}

std::pair<int, int> color_pair_from_index(int p) {
  int j = 1;
  while ((j + 1) * j / 2 <= p) ++j;
  return {p - j * (j - 1) / 2, j};
}

CliqueReduction reduce_clique(const MulticolorGraph& g) {
  const int k = g.k();
  const int pairs = k * (k - 1) / 2;
  const int n = g.num_vertices() + 1;
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  const int base = k + pairs;
  const int m = base + k * k * bits;

  // sigma(v) written into block (a, b) of the k^2 code blocks.
  auto put_code = [&](FVector& w, int a, int b, int v) {
    const int offset = base + (a * k + b) * bits;
    const unsigned code = static_cast<unsigned>(v) + 1;
    for (int p = 0; p < bits; ++p) {
      if ((code >> (bits - 1 - p)) & 1u) w.set(offset + p, Gf4::one());
    }
  };

  CliqueReduction red{VectorSumInstance(m, {{}}, FVector::zero(m)), k, bits, {}, {}};
  std::vector<std::vector<FVector>> sets(base);
  red.vertex_of.resize(k);
  red.edge_of.resize(pairs);

  for (int v = 0; v < g.num_vertices(); ++v) {
    const int i = g.color(v);
    FVector w = FVector::unit(m, i);
    for (int j = 0; j < k; ++j) {
      if (j != i) put_code(w, i, j, v);
    }
    sets[i].push_back(std::move(w));
    red.vertex_of[i].push_back(v);
  }
  for (auto [a, b] : g.edges()) {
    int ca = g.color(a), cb = g.color(b);
    if (ca == cb) continue;
    if (ca > cb) {
      std::swap(a, b);
      std::swap(ca, cb);
    }
    const int p = color_pair_index(ca, cb);
    FVector w = FVector::unit(m, k + p);
    put_code(w, ca, cb, a);
    put_code(w, cb, ca, b);
    sets[k + p].push_back(std::move(w));
    red.edge_of[p].emplace_back(a, b);
  }

  FVector target = FVector::zero(m);
  for (int c = 0; c < base; ++c) target.set(c, Gf4::one());
  red.instance = VectorSumInstance(m, std::move(sets), std::move(target));
  return red;
}

std::optional<SelectionCertificate> CliqueReduction::selection_for_clique(
    const std::vector<int>& clique) const {
  if (static_cast<int>(clique.size()) != k) return std::nullopt;
  SelectionCertificate sel;
  sel.index.resize(instance.num_sets());
  for (int i = 0; i < k; ++i) {
    auto it = std::find(vertex_of[i].begin(), vertex_of[i].end(), clique[i]);
    if (it == vertex_of[i].end()) return std::nullopt;
    sel.index[i] = static_cast<int>(it - vertex_of[i].begin());
  }
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < j; ++i) {
      const int p = color_pair_index(i, j);
      const auto& edges = edge_of[p];
      auto it = std::find(edges.begin(), edges.end(), std::make_pair(clique[i], clique[j]));
      if (it == edges.end()) return std::nullopt;
      sel.index[k + p] = static_cast<int>(it - edges.begin());
    }
  }
  return sel;
}

std::optional<std::vector<int>> CliqueReduction::clique_for_selection(
    const SelectionCertificate& sel) const {
  if (static_cast<int>(sel.index.size()) != instance.num_sets()) return std::nullopt;
  std::vector<int> clique(k);
  for (int i = 0; i < k; ++i) {
    if (sel.index[i] < 0 || sel.index[i] >= static_cast<int>(vertex_of[i].size())) {
      return std::nullopt;
    }
    clique[i] = vertex_of[i][sel.index[i]];
  }
  for (int p = 0; p < static_cast<int>(edge_of.size()); ++p) {
    const int idx = sel.index[k + p];
    if (idx < 0 || idx >= static_cast<int>(edge_of[p].size())) return std::nullopt;
    const auto [i, j] = color_pair_from_index(p);
    if (edge_of[p][idx] != std::make_pair(clique[i], clique[j])) return std::nullopt;
  }
  return clique;
}

std::optional<SelectionCertificate> brute_force_vector_sum(const VectorSumInstance& inst,
                                                           uint64_t budget) {
  if (inst.has_empty_set()) return std::nullopt;
  if (inst.search_space() > budget) {
    throw BudgetExceeded("brute_force_vector_sum",
                         "search space exceeds " + std::to_string(budget) + " selections");
  }
  const int k = inst.num_sets();
  // prefix[d] = sum of the members chosen for sets 0..d-1.
  std::vector<FVector> prefix(k + 1, FVector::zero(inst.dim()));
  std::vector<int> idx(k, 0);
  int depth = 0;
  while (depth >= 0) {
    if (idx[depth] == static_cast<int>(inst.set(depth).size())) {
      idx[depth] = 0;
      if (--depth >= 0) ++idx[depth];
      continue;
    }
    prefix[depth + 1] = prefix[depth] + inst.set(depth)[idx[depth]];
    if (depth + 1 == k) {
      if (prefix[k] == inst.target()) return SelectionCertificate{idx};
      ++idx[depth];
    } else {
      ++depth;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> brute_force_multicolor_clique(const MulticolorGraph& g,
                                                              uint64_t budget) {
  const auto classes = g.classes();
  uint64_t space = 1;
  for (const auto& c : classes) {
    if (c.empty()) return std::nullopt;
    space = (space > UINT64_MAX / c.size()) ? UINT64_MAX : space * c.size();
  }
  if (space > budget) {
    throw BudgetExceeded("brute_force_multicolor_clique",
                         "search space exceeds " + std::to_string(budget) + " tuples");
  }
  const int k = g.k();
  std::vector<int> pos(k, 0), chosen(k);
  int depth = 0;
  while (depth >= 0) {
    if (pos[depth] == static_cast<int>(classes[depth].size())) {
      pos[depth] = 0;
      if (--depth >= 0) ++pos[depth];
      continue;
    }
    const int v = classes[depth][pos[depth]];
    bool ok = true;
    for (int d = 0; d < depth && ok; ++d) ok = g.adjacent(chosen[d], v);
    if (!ok) {
      ++pos[depth];
      continue;
    }
    chosen[depth] = v;
    if (depth + 1 == k) return chosen;
    ++depth;
  }
  return std::nullopt;
}

}  // namespace gapforge
