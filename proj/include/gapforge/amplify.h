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


#ifndef GAPFORGE_AMPLIFY_H_
#define GAPFORGE_AMPLIFY_H_

// t-fold strong product: distinct tuples are adjacent when every coordinate
// pair is equal or adjacent in the base graph. ω is multiplicative under it.

#include <cstdint>
#include <vector>

#include "gapforge/graph.h"

namespace gapforge {

class ProductGraph {
 public:
  ProductGraph(Graph base, int t);

  const Graph& base() const { return base_; }
  int power() const { return t_; }
  // n^t, saturating at UINT64_MAX.
  uint64_t num_vertices() const;

  // Tuples are packed base n, first coordinate most significant.
  std::vector<int> coordinates(uint64_t v) const;
  uint64_t pack(const std::vector<int>& coords) const;
  bool adjacent(uint64_t u, uint64_t w) const;

 private:
  Graph base_;
  int t_;
};

ProductGraph strong_power(const Graph& g, int t);

// Throws BudgetExceeded when n^t exceeds the budget.
Graph export_power(const ProductGraph& p, uint64_t budget = 20000);

}  // namespace gapforge

#endif  // GAPFORGE_AMPLIFY_H_
