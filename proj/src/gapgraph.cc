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

#include <algorithm>
#include <ostream>

#include "gapforge/errors.h"

namespace gapforge {

namespace {

std::string digits_of(uint64_t index, int dim) { return vector_from_index(dim, index).digits(); }

}  // namespace

std::string to_string(const Vertex& v, int tuple_digits, int ell) {
  if (const auto* b = std::get_if<BVertex>(&v)) {
    return "B " + digits_of(b->a, tuple_digits) + digits_of(b->b, tuple_digits) + " " +
           digits_of(b->y ^ b->z, ell) + digits_of(b->y, ell) + digits_of(b->z, ell);
  }
  const auto& a = std::get<AVertex>(v);
  return "A " + digits_of(a.a, tuple_digits) + " " + std::to_string(a.copy + 1) + " " +
         digits_of(a.value, ell);
}

GapGraph::GapGraph(CspInstance csp, uint64_t r) : csp_(std::move(csp)), r_(r) {
  if (r_ == 0) throw DomainError("replication must be at least 1");
  if (csp_.ell() > 31) throw DimensionError("ell must be at most 31 for the gap graph");
  empty_set_ = csp_.instance().has_empty_set();
  const uint64_t na = csp_.num_alphas();
  allowed_.resize(csp_.k() * na);
  for (int i = 0; i < csp_.k(); ++i)
    for (uint64_t al = 0; al < na; ++al) {
      auto& list = allowed_[i * na + al];
      for (const FVector& v : csp_.allowed(i, al)) list.push_back(index_of_vector(v));
      std::sort(list.begin(), list.end());
    }
  for (uint64_t al = 0; al < na; ++al) target_code_.push_back(index_of_vector(csp_.target_code(al)));
}

BigInt GapGraph::num_b_vertices() const {
  return big_pow(4, 2 * csp_.k() * csp_.h()) * big_pow(4, 2 * csp_.ell());
}

BigInt GapGraph::num_a_vertices() const {
  return BigInt(r_) * big_pow(4, csp_.k() * csp_.h()) * big_pow(4, csp_.ell());
}

BigInt GapGraph::planted_size() const {
  return big_pow(4, 2 * csp_.k() * csp_.h()) + BigInt(r_) * big_pow(4, csp_.k() * csp_.h());
}

bool GapGraph::valid(const Vertex& v) const {
  const uint64_t n = csp_.num_tuples(), q = num_values();
  if (const auto* b = std::get_if<BVertex>(&v)) return b->a < n && b->b < n && b->y < q && b->z < q;
  const auto& a = std::get<AVertex>(v);
  return a.a < n && a.copy < r_ && a.value < q;
}

int GapGraph::entries(const Vertex& v, Entry* out) const {
  if (const auto* b = std::get_if<BVertex>(&v)) {
    out[0] = {b->a ^ b->b, b->y ^ b->z};
    out[1] = {b->a, b->y};
    out[2] = {b->b, b->z};
    return 3;
  }
  const auto& a = std::get<AVertex>(v);
  out[0] = {a.a, a.value};
  return 1;
}

bool GapGraph::allowed(int i, uint64_t alpha, Value diff) const {
  const auto& list = allowed_[i * csp_.num_alphas() + alpha];
  return std::binary_search(list.begin(), list.end(), diff);
}

bool GapGraph::consistent(Entry* e, int n) const {
  // A C2 constraint with alpha = 0 on any assigned variable needs V_i != {}.
  if (empty_set_) return false;
  Entry d[6];
  int m = 0;
  for (int p = 0; p < n; ++p) {
    bool seen = false;
    for (int q = 0; q < m; ++q) {
      if (d[q].tuple != e[p].tuple) continue;
      if (d[q].value != e[p].value) return false;
      seen = true;
    }
    if (!seen) d[m++] = e[p];
  }
  const int k = csp_.k();
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      const Tuple diff = d[p].tuple ^ d[q].tuple;
      const Value val = d[p].value ^ d[q].value;
      int nonzero = 0, block = -1;
      bool replicated = true;
      const uint64_t first = csp_.component(diff, 0);
      for (int i = 0; i < k; ++i) {
        const uint64_t c = csp_.component(diff, i);
        if (c != 0) {
          ++nonzero;
          block = i;
        }
        replicated = replicated && c == first;
      }
      if (nonzero == 1 && !allowed(block, csp_.component(diff, block), val)) return false;
      if (replicated && val != target_code_[first]) return false;
    }
  }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      const Tuple sum = d[p].tuple ^ d[q].tuple;
      for (int s = 0; s < m; ++s)
        if (d[s].tuple == sum && d[s].value != (d[p].value ^ d[q].value)) return false;
    }
  return true;
}

bool GapGraph::admissible(const Vertex& v) const {
  Entry e[6];
  const int n = entries(v, e);
  return consistent(e, n);
}

bool GapGraph::adjacent(const Vertex& u, const Vertex& w) const {
  if (u == w) return false;
  Entry e[6];
  int n = entries(u, e);
  n += entries(w, e + n);
  return consistent(e, n);
}

uint64_t GapGraph::id_of(const Vertex& v) const {
  if (num_vertices() >= (BigInt(1) << 63)) throw DomainError("gap graph too large for 64-bit ids");
  const uint64_t n = csp_.num_tuples(), q = num_values();
  if (const auto* b = std::get_if<BVertex>(&v)) return ((b->a * n + b->b) * q + b->y) * q + b->z;
  const auto& a = std::get<AVertex>(v);
  return static_cast<uint64_t>(num_b_vertices()) + (a.a * r_ + a.copy) * q + a.value;
}

Vertex GapGraph::vertex_at(uint64_t id) const {
  const uint64_t n = csp_.num_tuples(), q = num_values();
  const uint64_t nb = static_cast<uint64_t>(num_b_vertices());
  if (id < nb) {
    BVertex b;
    b.z = id % q;
    id /= q;
    b.y = id % q;
    id /= q;
    b.b = id % n;
    b.a = id / n;
    return b;
  }
  id -= nb;
  AVertex a;
  a.value = id % q;
  id /= q;
  a.copy = id % r_;
  a.a = id / r_;
  if (a.a >= n) throw DomainError("vertex id out of range");
  return a;
}

ExplicitGapGraph export_explicit(const GapGraph& g, uint64_t budget) {
  const BigInt total = g.num_vertices();
  if (total > budget) {
    throw BudgetExceeded("export_explicit", "gap graph has " + total.str() + " vertices");
  }
  const int n = static_cast<int>(total);
  ExplicitGapGraph out{Graph(n), {}};
  out.vertices.reserve(n);
  for (int id = 0; id < n; ++id) out.vertices.push_back(g.vertex_at(id));
  std::vector<int> live;
  for (int id = 0; id < n; ++id)
    if (g.admissible(out.vertices[id])) live.push_back(id);
  for (size_t p = 0; p < live.size(); ++p)
    for (size_t q = p + 1; q < live.size(); ++q)
      if (g.adjacent(out.vertices[live[p]], out.vertices[live[q]])) out.graph.add_edge(live[p], live[q]);
  return out;
}

void write_vertex_map(std::ostream& out, const GapGraph& g, const std::vector<Vertex>& vertices) {
  const int digits = g.csp().k() * g.csp().h();
  for (size_t id = 0; id < vertices.size(); ++id) {
    out << id + 1 << ' ' << to_string(vertices[id], digits, g.csp().ell()) << '\n';
  }
}

CliqueSet PlantedClique::materialize(const GapGraph& g, uint64_t budget) const {
  if (size > budget) throw BudgetExceeded("planted_clique", "clique has " + size.str() + " members");
  const uint64_t n = g.csp().num_tuples();
  std::vector<Value> value(n);
  for (Tuple a = 0; a < n; ++a) value[a] = g.encode_value(assignment.get(a));
  CliqueSet out;
  for (Tuple a = 0; a < n; ++a)
    for (Tuple b = 0; b < n; ++b) out.push_back(BVertex{a, b, value[a], value[b]});
  for (Tuple a = 0; a < n; ++a)
    for (uint64_t c = 0; c < g.replication(); ++c) out.push_back(AVertex{a, c, value[a]});
  return out;
}

PlantedClique planted_from_assignment(const GapGraph& g, const Assignment& x) {
  if (x.num_tuples() != g.csp().num_tuples() || x.ell() != g.csp().ell()) {
    throw DimensionError("assignment shape does not match the CSP");
  }
  return PlantedClique{x, g.planted_size(), false};
}

PlantedClique planted_clique(const GapGraph& g, const SelectionCertificate& sel) {
  PlantedClique p = planted_from_assignment(g, honest_assignment(g.csp(), sel));
  p.from_satisfying_selection = verify_selection(g.csp().instance(), sel);
  return p;
}

CliqueCheck is_clique(const GapGraph& g, const CliqueSet& s) {
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      if (!g.adjacent(s[a], s[b])) return CliqueCheck{false, std::make_pair(s[a], s[b])};
  return CliqueCheck{};
}

bool is_clique(const GapGraph& g, const PlantedClique& p, uint64_t budget) {
  return evaluate(g.csp(), p.assignment, EvalMode::exact(budget)).all_satisfied();
}

}  // namespace gapforge
