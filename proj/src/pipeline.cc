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


#include "gapforge/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "gapforge/csp.h"
#include "gapforge/errors.h"
#include "gapforge/gapgraph.h"
#include "gapforge/io.h"
#include "gapforge/rng.h"

namespace gapforge {

MulticolorGraph plain_to_multicolor(const Graph& g, int k) {
  if (k < 1) throw DomainError("k must be at least 1");
  const int n = g.num_vertices();
  std::vector<int> color(static_cast<size_t>(n) * k);
  for (int i = 0; i < k; ++i)
    for (int u = 0; u < n; ++u) color[i * n + u] = i;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (auto [u, v] : g.edges()) {
        // edges() lists u < v
        edges.emplace_back(i * n + u, j * n + v);
      }
  std::sort(edges.begin(), edges.end());
  return MulticolorGraph(k, std::move(color), std::move(edges));
}

namespace {

int ceil_log2(uint64_t n) {
  int b = 0;
  while (b < 64 && (uint64_t{1} << b) < n) ++b;
  return b;
}

class Report {
 public:
  template <typename T>
  Report& add(const std::string& key, const T& value) {
    std::ostringstream s;
    s << value;
    out_ << key << '=' << s.str() << '\n';
    return *this;
  }
  Report& add(const std::string& key, bool value) { return add(key, value ? "true" : "false"); }
  Report& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  Report& add(const std::string& key, const Rational& q) { return add(key, to_string(q)); }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

template <typename F>
auto in_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(name, e.what());
  }
}

std::string join_fractions(const std::vector<Rational>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

void add_sizes(Report& rep, const PipelineParams& p, const Rational& eps) {
  const BigInt n_tuples = big_pow(4, static_cast<uint64_t>(p.k_prime) * p.h);
  const BigInt q = big_pow(4, p.ell);
  const BigInt planted = n_tuples * n_tuples + p.r * n_tuples;
  rep.add("sizes.tuples", n_tuples.str())
      .add("sizes.values", q.str())
      .add("sizes.b_vertices", BigInt(n_tuples * n_tuples * q * q).str())
      .add("sizes.a_vertices", BigInt(n_tuples * p.r * q).str())
      .add("sizes.vertices", BigInt(n_tuples * n_tuples * q * q + n_tuples * p.r * q).str())
      .add("sizes.planted_clique", planted.str());
  if (p.r == n_tuples) {
    // same number written as 2^{4k'h+1}
    rep.add("sizes.planted_clique_pow2", "2^" + std::to_string(4 * p.k_prime * p.h + 1));
  }
  rep.add("sizes.soundness_threshold", to_string(Rational(planted) * (1 - eps)));
}

Bundle run(const VectorSumInstance& inst, const CliqueReduction* red, const MulticolorGraph* g,
           const PipelineConfig& cfg) {
  Bundle out;
  Report rep;
  {
    std::ostringstream s;
    write_vsi(s, inst);
    out["instance.vsi"] = s.str();
  }
  PipelineParams p = resolve_parameters(inst, cfg);
  if (red) rep.add("input.k", red->k).add("input.vertices", g->num_vertices());
  rep.add("k_prime", p.k_prime).add("m", p.m).add("n", p.n).add("h", p.h);
  rep.add("seed", cfg.seed).add("epsilon", cfg.epsilon).add("derandomize", cfg.derandomize);

  if (cfg.dry_run) {
    rep.add("ell", p.ell).add("replication", p.r.str()).add("dry_run", true);
    add_sizes(rep, p, cfg.epsilon);
    out["report.txt"] = rep.str();
    return out;
  }

  if (p.k_prime * p.h > 31) {
    throw BudgetExceeded("csp", "k'h = " + std::to_string(p.k_prime * p.h) +
                                    " exceeds 31; use overrides or a dry run");
  }
  const std::vector<FVector> vectors = inst.union_vectors();
  const EncodingScheme scheme = in_stage("scheme", [&] {
    if (cfg.derandomize) {
      return derandomize_scheme(vectors, inst.target(), p.h, p.m, cfg.budgets.scheme).scheme;
    }
    return sample_scheme(derive_seed(cfg.seed, 1), p.h, p.m, p.ell);
  });
  p.ell = scheme.ell();
  if (p.r > BigInt(uint64_t{1} << 62)) {
    throw BudgetExceeded("graph", "replication " + p.r.str() + " does not fit; override --replication");
  }
  const uint64_t r = static_cast<uint64_t>(p.r);
  rep.add("ell", p.ell).add("replication", r).add("dry_run", false);
  {
    std::ostringstream s;
    write_scheme(s, scheme);
    out["scheme.txt"] = s.str();
  }
  const SchemeReport sr =
      in_stage("scheme", [&] { return check_scheme(scheme, vectors, inst.target(), cfg.budgets.scheme); });
  rep.add("scheme.provenance", scheme.provenance_token())
      .add("scheme.injective", sr.cond_g_injective)
      .add("scheme.alpha", sr.cond_alpha)
      .add("scheme.self_correction", sr.cond_selfcorr);

  if (p.ell > 31) throw BudgetExceeded("csp", "ell = " + std::to_string(p.ell) + " exceeds 31");
  CspInstance csp(inst, scheme);
  {
    Report meta;
    meta.add("k", csp.k()).add("h", csp.h()).add("ell", csp.ell());
    meta.add("tuples", csp.num_tuples()).add("alphas", csp.num_alphas());
    meta.add("c1_count", csp.c1_count().str());
    meta.add("c2_count_per_i", csp.c2_count_per_i().str()).add("c3_count", csp.c3_count().str());
    meta.add("scheme", scheme.provenance_token());
    out["csp.meta"] = meta.str();
  }

  const std::optional<SelectionCertificate> sel = in_stage("reduce", [&] {
    if (red) {
      auto clique = brute_force_multicolor_clique(*g, cfg.budgets.brute_force);
      return clique ? red->selection_for_clique(*clique) : std::nullopt;
    }
    return brute_force_vector_sum(inst, cfg.budgets.brute_force);
  });
  rep.add("instance.solvable", sel.has_value());
  if (sel) {
    std::string s;
    for (size_t i = 0; i < sel->index.size(); ++i) s += (i ? " " : "") + std::to_string(sel->index[i] + 1);
    rep.add("instance.selection", s);
    if (csp.num_tuples() > cfg.budgets.assignment_tuples) {
      throw BudgetExceeded("csp", "honest assignment has " + std::to_string(csp.num_tuples()) + " tuples");
    }
    const SatReport sat = in_stage("csp", [&] {
      return evaluate(csp, honest_assignment(csp, *sel), EvalMode::exact(cfg.budgets.csp));
    });
    rep.add("honest.c1_fraction", sat.c1_fraction)
        .add("honest.c2_fraction_per_i", join_fractions(sat.c2_fraction_per_i))
        .add("honest.c3_fraction", sat.c3_fraction)
        .add("honest.all_satisfied", sat.all_satisfied());
  }

  const GapGraph gg(csp, r);
  rep.add("graph.vertices", gg.num_vertices().str())
      .add("graph.b_vertices", gg.num_b_vertices().str())
      .add("graph.a_vertices", gg.num_a_vertices().str())
      .add("graph.planted_size", gg.planted_size().str());
  std::optional<ExplicitGapGraph> ex;
  if (gg.num_vertices() <= cfg.budgets.export_vertices) {
    ex = in_stage("graph", [&] { return export_explicit(gg, cfg.budgets.export_vertices); });
    std::ostringstream d, m;
    write_dimacs(d, ex->graph);
    write_vertex_map(m, gg, ex->vertices);
    out["graph.dimacs"] = d.str();
    out["graph.map"] = m.str();
    rep.add("graph.explicit", true).add("graph.exported_vertices", ex->graph.num_vertices());
    rep.add("graph.exported_edges", ex->graph.num_edges());
  } else {
    Report d;
    d.add("kind", "implicit").add("instance", "instance.vsi").add("scheme", "scheme.txt");
    d.add("replication", r).add("vertices", gg.num_vertices().str());
    d.add("b_order", "((a*N+b)*Q+x_a)*Q+x_b").add("a_order", "B_count+(a*r+copy)*Q+value");
    out["graph.implicit"] = d.str();
    rep.add("graph.explicit", false);
  }

  if (sel) {
    const PlantedClique pc = planted_clique(gg, *sel);
    std::ostringstream s;
    s << "planted " << pc.size.str() << '\n';
    bool ok = false;
    if (ex) {
      const CliqueSet members = pc.materialize(gg, cfg.budgets.export_vertices);
      ok = is_clique(gg, members).ok;
      s << "ids";
      for (const Vertex& v : members) {
        auto it = std::lower_bound(ex->vertices.begin(), ex->vertices.end(), v);
        if (it == ex->vertices.end() || *it != v) {
          ok = false;  // inadmissible member
          s << " ?";
        } else {
          s << ' ' << (it - ex->vertices.begin()) + 1;
        }
      }
      s << '\n';
      rep.add("completeness.method", "pairwise");
    } else {
      ok = in_stage("planted", [&] { return is_clique(gg, pc, cfg.budgets.csp); });
      rep.add("completeness.method", "structural");
    }
    write_assignment(s, csp, pc.assignment);
    out["planted.clq"] = s.str();
    rep.add("completeness.size", pc.size.str()).add("completeness.is_clique", ok);
  }

  ProbeOptions po;
  po.seed = derive_seed(cfg.seed, 2);
  po.restarts = cfg.budgets.restarts;
  po.export_budget = cfg.budgets.export_vertices;
  po.exact = cfg.budgets.exact;
  po.structural_budget = cfg.budgets.structural;
  po.mode = ex && ex->graph.num_vertices() <= cfg.budgets.exact.max_vertices ? ProbeMode::kExact
                                                                               : ProbeMode::kStructural;
  const ProbeResult pr = in_stage("probe", [&] { return soundness_probe(gg, po); });
  rep.add("soundness.mode", po.mode == ProbeMode::kExact ? "exact" : "structural");
  rep.add("soundness.verdict", to_string(pr.verdict));
  rep.add("soundness.planted_size", pr.planted_size.str());
  const Rational threshold = Rational(pr.planted_size) * (1 - cfg.epsilon);
  rep.add("soundness.threshold", threshold);
  if (po.mode == ProbeMode::kExact) {
    rep.add("soundness.best_size", pr.best_size.str());
    if (pr.report.upper_bound) rep.add("soundness.upper_bound", *pr.report.upper_bound);
    rep.add("soundness.exact", pr.exact_omega.has_value());
    rep.add("soundness.nodes", pr.report.nodes_explored);
    rep.add("soundness.ratio", Rational(pr.best_size, pr.planted_size));
    rep.add("soundness.below_threshold", Rational(pr.best_size) < threshold);
  }
  out["report.txt"] = rep.str();
  return out;
}

}  // namespace

PipelineParams resolve_parameters(const VectorSumInstance& inst, const PipelineConfig& cfg) {
  PipelineParams p;
  p.k_prime = inst.num_sets();
  p.m = inst.dim();
  p.n = static_cast<int>(inst.union_vectors().size());
  p.h = cfg.h.value_or(p.k_prime * p.k_prime);
  if (p.h < 1) throw DomainError("h must be positive");
  p.ell = cfg.ell.value_or(2 * ceil_log2(p.n) + 2 * p.h);
  if (p.ell < 1) throw DomainError("ell must be positive");
  p.r = cfg.replication ? BigInt(*cfg.replication)
                        : big_pow(4, static_cast<uint64_t>(p.k_prime) * p.h);
  if (p.r < 1) throw DomainError("replication must be positive");
  return p;
}

Bundle run_pipeline(const MulticolorGraph& g, const PipelineConfig& cfg) {
  const CliqueReduction red = reduce_clique(g);
  return run(red.instance, &red, &g, cfg);
}

Bundle run_pipeline(const Graph& g, const PipelineConfig& cfg) {
  return run_pipeline(plain_to_multicolor(g, cfg.k), cfg);
}

Bundle run_pipeline(const VectorSumInstance& inst, const PipelineConfig& cfg) {
  return run(inst, nullptr, nullptr, cfg);
}

void write_bundle(const std::string& dir, const Bundle& bundle) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : bundle) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + name + " in " + dir);
  }
}

std::map<std::string, std::string> parse_report(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    const std::string frac = s.substr(dot + 1);
    const std::string whole = s.substr(0, dot);
    const BigInt den = big_pow(10, frac.size());
    const BigInt num = BigInt((whole.empty() || whole == "-" ? whole + "0" : whole) + frac);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw DomainError("not a rational number: '" + s + "'");
  }
}

}  // namespace gapforge
