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

#include <string>

#include "gapforge/errors.h"

namespace gapforge {

ProductGraph::ProductGraph(Graph base, int t) : base_(std::move(base)), t_(t) {
  if (t < 1) throw DomainError("power must be at least 1");
}

uint64_t ProductGraph::num_vertices() const {
  const uint64_t n = base_.num_vertices();
  uint64_t p = 1;
  for (int i = 0; i < t_; ++i) {
    if (n != 0 && p > UINT64_MAX / n) return UINT64_MAX;
    p *= n;
  }
  return p;
}

std::vector<int> ProductGraph::coordinates(uint64_t v) const {
  const uint64_t n = base_.num_vertices();
  std::vector<int> c(t_);
  for (int i = t_ - 1; i >= 0; --i) {
    c[i] = static_cast<int>(v % n);
    v /= n;
  }
  return c;
}

uint64_t ProductGraph::pack(const std::vector<int>& coords) const {
  if (static_cast<int>(coords.size()) != t_) throw DimensionError("tuple length differs from power");
  uint64_t v = 0;
  for (int c : coords) v = v * base_.num_vertices() + c;
  return v;
}

bool ProductGraph::adjacent(uint64_t u, uint64_t w) const {
  if (u == w) return false;
  const uint64_t n = base_.num_vertices();
  for (int i = 0; i < t_; ++i) {
    const int a = static_cast<int>(u % n), b = static_cast<int>(w % n);
    if (a != b && !base_.adjacent(a, b)) return false;
    u /= n;
    w /= n;
  }
  return true;
}

ProductGraph strong_power(const Graph& g, int t) { return ProductGraph(g, t); }

Graph export_power(const ProductGraph& p, uint64_t budget) {
  const uint64_t n = p.num_vertices();
  if (n > budget) {
    throw BudgetExceeded("export_power", "power has " + std::to_string(n) + " vertices");
  }
  Graph out(static_cast<int>(n));
  for (uint64_t u = 0; u < n; ++u)
    for (uint64_t w = u + 1; w < n; ++w)
      if (p.adjacent(u, w)) out.add_edge(static_cast<int>(u), static_cast<int>(w));
  return out;
}

}  // namespace gapforge
