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


#include "gapforge/verify.h"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "gapforge/errors.h"
#include "gapforge/rng.h"

namespace gapforge {

namespace {

using Bits = std::vector<uint64_t>;

bool test(const Bits& b, int v) { return (b[v / 64] >> (v % 64)) & 1; }
void put(Bits& b, int v) { b[v / 64] |= uint64_t{1} << (v % 64); }
void drop(Bits& b, int v) { b[v / 64] &= ~(uint64_t{1} << (v % 64)); }
bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](uint64_t w) { return w == 0; });
}
int count(const Bits& b) {
  int c = 0;
  for (uint64_t w : b) c += std::popcount(w);
  return c;
}
int first(const Bits& b) {
  for (size_t i = 0; i < b.size(); ++i)
    if (b[i]) return static_cast<int>(i * 64 + std::countr_zero(b[i]));
  return -1;
}
// The j-th set bit, 0-based.
int select(const Bits& b, int j) {
  for (size_t i = 0; i < b.size(); ++i) {
    const int c = std::popcount(b[i]);
    if (j < c) {
      uint64_t w = b[i];
      for (int s = 0; s < j; ++s) w &= w - 1;
      return static_cast<int>(i * 64 + std::countr_zero(w));
    }
    j -= c;
  }
  return -1;
}
int random_member(const Bits& b, Rng& rng) {
  const int c = count(b);
  return c == 0 ? -1 : select(b, static_cast<int>(rng.below(c)));
}

// Vertices by repeatedly removing one of minimum degree; the order returned
// lists the last removed first.
std::vector<int> degeneracy_order(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<bool> gone(n, false);
  std::vector<int> removed;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
    gone[best] = true;
    removed.push_back(best);
    for (int u = 0; u < n; ++u)
      if (!gone[u] && g.adjacent(best, u)) --deg[u];
  }
  std::reverse(removed.begin(), removed.end());
  return removed;
}

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, uint64_t node_budget)
      : n_(g.num_vertices()), w_((n_ + 63) / 64), budget_(node_budget), order_(degeneracy_order(g)) {
    adj_.assign(n_, Bits(w_, 0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && g.adjacent(order_[i], order_[j])) put(adj_[i], j);
  }

  // Number of colours used on P: an upper bound on ω(P).
  int colour_bound(const Bits& p) {
    std::vector<int> verts, colours;
    colour(p, verts, colours);
    return colours.empty() ? 0 : colours.back();
  }

  void run() {
    Bits all(w_, 0);
    for (int v = 0; v < n_; ++v) put(all, v);
    root_bound_ = colour_bound(all);
    std::vector<int> current;
    if (n_ > 0) expand(current, all);
  }

  bool aborted() const { return aborted_; }
  uint64_t nodes() const { return nodes_; }
  int root_bound() const { return root_bound_; }
  std::vector<int> best() const {
    std::vector<int> out;
    for (int v : best_) out.push_back(order_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void colour(const Bits& p, std::vector<int>& verts, std::vector<int>& colours) {
    Bits rest = p;
    int c = 0;
    while (!none(rest)) {
      ++c;
      Bits q = rest;
      int v;
      while ((v = first(q)) >= 0) {
        drop(rest, v);
        drop(q, v);
        for (int i = 0; i < w_; ++i) q[i] &= ~adj_[v][i];
        verts.push_back(v);
        colours.push_back(c);
      }
    }
  }

  void expand(std::vector<int>& current, Bits p) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<int> verts, colours;
    colour(p, verts, colours);
    for (int idx = static_cast<int>(verts.size()) - 1; idx >= 0; --idx) {
      if (aborted_) return;
      if (static_cast<int>(current.size()) + colours[idx] <= static_cast<int>(best_.size())) return;
      const int v = verts[idx];
      current.push_back(v);
      Bits np(w_);
      for (int i = 0; i < w_; ++i) np[i] = p[i] & adj_[v][i];
      if (none(np)) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, np);
      }
      current.pop_back();
      drop(p, v);
    }
  }

  int n_, w_;
  uint64_t budget_;
  std::vector<int> order_;
  std::vector<Bits> adj_;
  std::vector<int> best_;
  uint64_t nodes_ = 0;
  bool aborted_ = false;
  int root_bound_ = 0;
};

Bits row_bits(const Graph& g, int v) {
  const auto r = g.row(v);
  return Bits(r.begin(), r.end());
}

}  // namespace

CliqueReport max_clique_exact(const Graph& g, const ExactOptions& opt) {
  CliqueReport rep;
  if (g.num_vertices() > opt.max_vertices) {
    SearchOptions quick;
    quick.restarts = 16;
    rep = clique_local_search(g, quick);
    rep.restarts = 0;
    BranchAndBound bb(g, 0);
    Bits all(g.words(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) put(all, v);
    rep.upper_bound = bb.colour_bound(all);
    rep.exact = false;
    return rep;
  }
  BranchAndBound bb(g, opt.node_budget);
  bb.run();
  rep.witness = bb.best();
  rep.lower_bound = static_cast<int>(rep.witness.size());
  rep.nodes_explored = bb.nodes();
  rep.exact = !bb.aborted();
  rep.upper_bound = rep.exact ? rep.lower_bound : bb.root_bound();
  return rep;
}

CliqueReport clique_local_search(const Graph& g, const SearchOptions& opt) {
  const int n = g.num_vertices();
  const int w = g.words();
  if (!g.is_clique(opt.warm_start)) throw DomainError("warm start is not a clique");
  CliqueReport rep;
  std::vector<Bits> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = row_bits(g, v);
  Bits all(w, 0);
  for (int v = 0; v < n; ++v) put(all, v);

  for (uint64_t r = 0; r < opt.restarts; ++r) {
    ++rep.restarts;
    Rng rng(derive_seed(opt.seed, r));
    Bits in(w, 0), cand = all;
    std::vector<int> clique;
    auto add = [&](int v) {
      clique.push_back(v);
      put(in, v);
      for (int i = 0; i < w; ++i) cand[i] &= adj[v][i];
    };
    auto rebuild = [&] {
      cand = all;
      for (int v : clique)
        for (int i = 0; i < w; ++i) cand[i] &= adj[v][i];
    };
    auto grow = [&] {
      int v;
      while ((v = random_member(cand, rng)) >= 0) add(v);
    };
    for (int v : opt.warm_start)
      if (!test(in, v)) add(v);
    grow();
    std::vector<int> best = clique;
    int idle = 0;
    std::vector<int> tabu(n, -1);
    for (int step = 0; idle <= opt.plateau && n > 0; ++step) {
      // Vertices outside the clique with exactly one non-neighbour in it.
      Bits one(w, 0), two(w, 0);
      for (int u : clique)
        for (int i = 0; i < w; ++i) {
          const uint64_t miss = ~adj[u][i];
          two[i] |= one[i] & miss;
          one[i] |= miss;
        }
      Bits exact_one(w);
      for (int i = 0; i < w; ++i) exact_one[i] = one[i] & ~two[i] & ~in[i] & all[i];
      if (none(exact_one)) break;
      // Prefer a (1,2)-swap: u out, v and a neighbour of v that also only
      // misses u in.
      bool improved = false;
      std::vector<int> order = clique;
      for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      int swap_u = -1, swap_v = -1;
      for (int u : order) {
        Bits su(w);
        for (int i = 0; i < w; ++i) su[i] = exact_one[i] & ~adj[u][i];
        int v;
        Bits scan = su;
        while ((v = first(scan)) >= 0) {
          drop(scan, v);
          Bits t(w);
          for (int i = 0; i < w; ++i) t[i] = su[i] & adj[v][i];
          if (!none(t)) {
            swap_u = u;
            swap_v = v;
            improved = true;
            break;
          }
          if (swap_u < 0 && tabu[v] < step) {
            swap_u = u;
            swap_v = v;
          }
        }
        if (improved) break;
      }
      if (swap_u < 0) break;
      clique.erase(std::find(clique.begin(), clique.end(), swap_u));
      drop(in, swap_u);
      tabu[swap_u] = step + 2;
      rebuild();
      add(swap_v);
      grow();
      if (clique.size() > best.size()) {
        best = clique;
        idle = 0;
      } else {
        ++idle;
      }
      if (opt.target > 0 && static_cast<int>(best.size()) >= opt.target) break;
    }
    if (best.size() > rep.witness.size()) rep.witness = best;
    if (opt.target > 0 && static_cast<int>(rep.witness.size()) >= opt.target) break;
  }
  std::sort(rep.witness.begin(), rep.witness.end());
  rep.lower_bound = static_cast<int>(rep.witness.size());
  rep.exact = false;
  return rep;
}

GapSearchResult gap_local_search(const GapGraph& g, uint64_t restarts, uint64_t seed,
                                 uint64_t budget) {
  const uint64_t n = g.csp().num_tuples(), q = g.num_values(), r = g.replication();
  if (n > (uint64_t{1} << 16)) throw BudgetExceeded("gap_local_search", "too many groups");
  const uint64_t groups = n * n + n * r;
  GapSearchResult out;
  uint64_t checks = 0;
  for (uint64_t rs = 0; rs < restarts; ++rs) {
    ++out.restarts;
    Rng rng(derive_seed(seed, rs));
    std::vector<uint64_t> perm(groups);
    std::iota(perm.begin(), perm.end(), 0);
    for (uint64_t i = groups; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    CliqueSet clique;
    for (uint64_t gi : perm) {
      const bool is_b = gi < n * n;
      const uint64_t choices = is_b ? q * q : q;
      const uint64_t offset = rng.below(choices);
      for (uint64_t c = 0; c < choices; ++c) {
        const uint64_t pick = (offset + c) % choices;
        Vertex v;
        if (is_b) {
          v = BVertex{gi / n, gi % n, pick / q, pick % q};
        } else {
          const uint64_t j = gi - n * n;
          v = AVertex{j / r, j % r, pick};
        }
        if (!g.admissible(v)) continue;
        bool ok = true;
        for (const Vertex& u : clique) {
          if (++checks > budget) throw BudgetExceeded("gap_local_search", "adjacency checks");
          if (!g.adjacent(u, v)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          clique.push_back(v);
          break;
        }
      }
    }
    if (clique.size() > out.best.size()) out.best = std::move(clique);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kBelow: return "below";
    case Verdict::kReached: return "reached";
    default: return "inconclusive";
  }
}

std::optional<Assignment> satisfying_assignment(const CspInstance& csp, uint64_t budget) {
  const int k = csp.k(), h = csp.h(), ell = csp.ell();
  const uint64_t na = csp.num_alphas();
  const int basis = 2 * h;
  // Basis vector j: digit r = j / 2 set to 1 (j even) or w (j odd).
  auto basis_alpha = [&](int j) -> uint64_t {
    return uint64_t{(j % 2) ? 2u : 1u} << (2 * (h - 1 - j / 2));
  };
  auto bit_of = [&](uint64_t alpha, int j) -> bool {
    const unsigned d = (alpha >> (2 * (h - 1 - j / 2))) & 3u;
    return (j % 2) ? (d >> 1) & 1 : d & 1;
  };
  auto table_of = [&](const std::vector<Value>& on_basis) {
    std::vector<Value> t(na, 0);
    for (uint64_t al = 0; al < na; ++al)
      for (int j = 0; j < basis; ++j)
        if (bit_of(al, j)) t[al] ^= on_basis[j];
    return t;
  };
  auto allowed_idx = [&](int i, uint64_t al) {
    std::vector<Value> out;
    for (const FVector& v : csp.allowed(i, al)) out.push_back(index_of_vector(v));
    return out;
  };

  uint64_t work = 0;
  // Feasible additive maps per block, stored by their values on the basis.
  std::vector<std::vector<std::vector<Value>>> feasible(k);
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<Value>> lists;
    for (int j = 0; j < basis; ++j) lists.push_back(allowed_idx(i, basis_alpha(j)));
    if (csp.allowed(i, 0).empty()) return std::nullopt;
    std::vector<std::vector<Value>> allowed_sets;
    for (uint64_t al = 0; al < na; ++al) allowed_sets.push_back(allowed_idx(i, al));
    std::vector<size_t> pick(basis, 0);
    if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) {
      return std::nullopt;
    }
    for (;;) {
      if ((work += na) > budget) throw BudgetExceeded("satisfying_assignment", "block maps");
      std::vector<Value> on_basis(basis);
      for (int j = 0; j < basis; ++j) on_basis[j] = lists[j][pick[j]];
      const auto t = table_of(on_basis);
      bool ok = true;
      for (uint64_t al = 0; al < na && ok; ++al)
        ok = std::binary_search(allowed_sets[al].begin(), allowed_sets[al].end(), t[al]);
      if (ok) feasible[i].push_back(on_basis);
      int d = 0;
      while (d < basis && ++pick[d] == lists[d].size()) pick[d++] = 0;
      if (d == basis) break;
    }
    if (feasible[i].empty()) return std::nullopt;
  }

  // Partial sums over blocks 0..i, with a back pointer per reachable sum.
  using Key = std::vector<Value>;
  std::vector<std::map<Key, std::pair<Key, size_t>>> layers(k);
  for (size_t c = 0; c < feasible[0].size(); ++c) layers[0].emplace(feasible[0][c], std::make_pair(Key(), c));
  for (int i = 1; i < k; ++i) {
    for (const auto& [sum, back] : layers[i - 1]) {
      for (size_t c = 0; c < feasible[i].size(); ++c) {
        if (++work > budget) throw BudgetExceeded("satisfying_assignment", "partial sums");
        Key next = sum;
        for (int j = 0; j < basis; ++j) next[j] ^= feasible[i][c][j];
        layers[i].emplace(std::move(next), std::make_pair(sum, c));
      }
    }
  }
  Key want(basis);
  for (int j = 0; j < basis; ++j) want[j] = index_of_vector(csp.target_code(basis_alpha(j)));
  auto it = layers[k - 1].find(want);
  if (it == layers[k - 1].end()) return std::nullopt;

  std::vector<std::vector<Value>> tables(k);
  Key key = want;
  for (int i = k - 1; i >= 0; --i) {
    const auto& [prev, c] = layers[i].at(key);
    tables[i] = table_of(feasible[i][c]);
    key = prev;
  }
  if ((work += csp.num_tuples()) > budget) throw BudgetExceeded("satisfying_assignment", "assignment table");
  Assignment x(csp.num_tuples(), ell);
  for (Tuple a = 0; a < csp.num_tuples(); ++a) {
    Value v = 0;
    for (int i = 0; i < k; ++i) v ^= tables[i][csp.component(a, i)];
    x.set(a, vector_from_index(ell, v));
  }
  return x;
}

ProbeResult soundness_probe(const GapGraph& g, const ProbeOptions& opt) {
  ProbeResult res;
  res.planted_size = g.planted_size();
  const bool exportable = g.num_vertices() <= opt.export_budget;

  if (opt.mode == ProbeMode::kStructural) {
    auto x = satisfying_assignment(g.csp(), opt.structural_budget);
    if (!x) {
      res.verdict = Verdict::kBelow;
      return res;
    }
    const PlantedClique p = planted_from_assignment(g, *x);
    if (!is_clique(g, p)) throw DomainError("structural witness failed re-verification");
    res.verdict = Verdict::kReached;
    res.best_size = p.size;
    res.witness_assignment = std::move(x);
    return res;
  }

  if (opt.mode == ProbeMode::kExact) {
    if (!exportable) return res;
    const ExplicitGapGraph ex = export_explicit(g, opt.export_budget);
    res.report = max_clique_exact(ex.graph, opt.exact);
    for (int v : res.report.witness) res.witness.push_back(ex.vertices[v]);
    if (!is_clique(g, res.witness).ok) throw DomainError("exact witness failed re-verification");
    res.best_size = res.report.lower_bound;
    if (res.report.exact) res.exact_omega = res.report.lower_bound;
    if (res.best_size >= res.planted_size) {
      res.verdict = Verdict::kReached;
    } else if (res.report.upper_bound && BigInt(*res.report.upper_bound) < res.planted_size) {
      res.verdict = Verdict::kBelow;
    }
    return res;
  }

  if (exportable) {
    const ExplicitGapGraph ex = export_explicit(g, opt.export_budget);
    SearchOptions so;
    so.restarts = opt.restarts;
    so.seed = opt.seed;
    so.target = static_cast<int>(res.planted_size);
    res.report = clique_local_search(ex.graph, so);
    for (int v : res.report.witness) res.witness.push_back(ex.vertices[v]);
  } else {
    GapSearchResult s = gap_local_search(g, opt.restarts, opt.seed);
    res.report.restarts = s.restarts;
    res.report.lower_bound = static_cast<int>(s.best.size());
    res.witness = std::move(s.best);
  }
  if (!is_clique(g, res.witness).ok) throw DomainError("search witness failed re-verification");
  res.best_size = res.witness.size();
  res.verdict = res.best_size >= res.planted_size ? Verdict::kReached : Verdict::kBelow;
  return res;
}

}  // namespace gapforge
