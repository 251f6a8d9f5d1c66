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


#include "gapforge/graph.h"

#include <bit>
#include <sstream>

#include "gapforge/errors.h"

namespace gapforge {

Graph::Graph(int n) : n_(n), w_((n + 63) / 64) {
  if (n < 0) throw DomainError("vertex count must be non-negative");
  rows_.assign(static_cast<size_t>(n_) * w_, 0);
}

uint64_t Graph::num_edges() const {
  uint64_t twice = 0;
  for (uint64_t w : rows_) twice += std::popcount(w);
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("edge endpoint out of range");
  if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
  rows_[u * w_ + v / 64] |= uint64_t{1} << (v % 64);
  rows_[v * w_ + u / 64] |= uint64_t{1} << (u % 64);
}

int Graph::degree(int u) const {
  int d = 0;
  for (uint64_t w : row(u)) d += std::popcount(w);
  return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

bool Graph::is_clique(std::span<const int> vertices) const {
  for (size_t a = 0; a < vertices.size(); ++a)
    for (size_t b = a + 1; b < vertices.size(); ++b)
      if (!adjacent(vertices[a], vertices[b])) return false;
  return true;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

Graph read_dimacs(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  Graph g;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      long long n = -1, m = -1;
      if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col") || n < 0) {
        throw ParseError(source, lineno, "expected 'p edge <n> <m>'");
      }
      if (have_header) throw ParseError(source, lineno, "duplicate header");
      g = Graph(static_cast<int>(n));
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(source, lineno, "edge before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v) || u < 1 || v < 1 || u > g.num_vertices() || v > g.num_vertices()) {
        throw ParseError(source, lineno, "bad edge line");
      }
      if (u == v) throw ParseError(source, lineno, "self-loop");
      g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } else {
      throw ParseError(source, lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(source, lineno, "missing 'p edge' header");
  return g;
}

void write_dimacs(std::ostream& out, const Graph& g) {
  const auto es = g.edges();
  out << "p edge " << g.num_vertices() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace gapforge
