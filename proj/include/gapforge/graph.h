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


#ifndef GAPFORGE_GRAPH_H_
#define GAPFORGE_GRAPH_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gapforge {

// Simple undirected graph with bitset rows; vertices are 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int num_vertices() const { return n_; }
  int words() const { return w_; }
  uint64_t num_edges() const;

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return (rows_[u * w_ + v / 64] >> (v % 64)) & 1; }
  std::span<const uint64_t> row(int u) const { return {rows_.data() + u * w_, static_cast<size_t>(w_)}; }
  int degree(int u) const;
  // Edges (u, v) with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;

  bool is_clique(std::span<const int> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  int w_ = 0;
  std::vector<uint64_t> rows_;
};

Graph complete_graph(int n);
Graph cycle_graph(int n);

// "p edge <n> <m>" then "e <u> <v>" lines, 1-based; "c" lines are comments.
Graph read_dimacs(std::istream& in, const std::string& source = "<dimacs>");
void write_dimacs(std::ostream& out, const Graph& g);

}  // namespace gapforge

#endif  // GAPFORGE_GRAPH_H_
