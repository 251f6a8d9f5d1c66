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


// gapforge command line. Every subcommand prints key=value lines on stdout;
// errors go to stderr with exit status 1.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gapforge/amplify.h"
#include "gapforge/cliquered.h"
#include "gapforge/csp.h"
#include "gapforge/encoding.h"
#include "gapforge/errors.h"
#include "gapforge/gapgraph.h"
#include "gapforge/graph.h"
#include "gapforge/io.h"
#include "gapforge/pipeline.h"
#include "gapforge/verify.h"

namespace gf = gapforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

// First data token of a file: "p mcol", "p edge"/"p col", "vsi".
enum class InputKind { kMulticolor, kPlain, kVectorSum };

InputKind sniff(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b;
    ls >> a >> b;
    if (a.empty() || a == "c" || a[0] == '#') continue;
    if (a == "vsi") return InputKind::kVectorSum;
    if (a == "p" && b == "mcol") return InputKind::kMulticolor;
    if (a == "p") return InputKind::kPlain;
    break;
  }
  throw gf::ParseError("<input>", 0, "cannot tell the input format");
}

gf::VectorSumInstance load_vsi(const std::string& path) {
  std::istringstream in(slurp(path));
  return gf::read_vsi(in, path);
}

gf::EncodingScheme load_scheme(const std::string& path) {
  std::istringstream in(slurp(path));
  return gf::read_scheme(in, path);
}

gf::Graph load_dimacs(const std::string& path) {
  std::istringstream in(slurp(path));
  return gf::read_dimacs(in, path);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string selection_str(const gf::SelectionCertificate& sel) {
  std::string s;
  for (size_t i = 0; i < sel.index.size(); ++i) s += (i ? " " : "") + std::to_string(sel.index[i] + 1);
  return s;
}

void print_sat(const gf::SatReport& r, const gf::Rational& eps) {
  std::cout << "mode=" << (r.exact ? "exact" : "sampled") << '\n';
  if (!r.exact) std::cout << "samples=" << r.samples << " seed=" << r.seed << '\n';
  std::cout << "c1_fraction=" << gf::to_string(r.c1_fraction) << '\n';
  gf::Rational worst = r.c1_fraction;
  std::cout << "c2_fraction_per_i=";
  for (size_t i = 0; i < r.c2_fraction_per_i.size(); ++i) {
    std::cout << (i ? " " : "") << gf::to_string(r.c2_fraction_per_i[i]);
    worst = std::min(worst, r.c2_fraction_per_i[i]);
  }
  std::cout << "\nc3_fraction=" << gf::to_string(r.c3_fraction) << '\n';
  worst = std::min(worst, r.c3_fraction);
  std::cout << "all_satisfied=" << bool_str(r.all_satisfied()) << '\n';
  std::cout << "min_fraction=" << gf::to_string(worst) << '\n';
  std::cout << "within_epsilon=" << bool_str(worst >= 1 - eps) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gap-creating clique reductions at desk scale"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "multicolour or plain graph -> vector-sum instance");
  std::string r_input, r_out;
  int r_k = 0;
  bool r_solve = false;
  reduce->add_option("--input", r_input, "p mcol file, or DIMACS with --k")->required();
  reduce->add_option("--k", r_k, "clique size for plain DIMACS input");
  reduce->add_option("--out", r_out, "vsi output (default stdout)");
  reduce->add_flag("--solve", r_solve, "also run the brute-force oracles");

  // scheme
  auto* scheme = app.add_subcommand("scheme", "sample or derandomize an encoding scheme");
  bool s_sample = false, s_derand = false;
  uint64_t s_seed = 0, s_budget = gf::kDefaultSchemeBudget;
  int s_h = 1, s_m = 0, s_ell = 0;
  std::string s_instance, s_out, s_check;
  auto* opt_sample = scheme->add_flag("--sample", s_sample, "seeded random matrices");
  auto* opt_derand = scheme->add_flag("--derandomize", s_derand, "conditional expectations (needs --instance)");
  opt_sample->excludes(opt_derand);
  scheme->add_option("--seed", s_seed);
  scheme->add_option("--h", s_h);
  scheme->add_option("--m", s_m, "defaults to the instance dimension");
  scheme->add_option("--ell", s_ell, "number of matrices when sampling");
  scheme->add_option("--instance", s_instance, "vsi file supplying V and t");
  scheme->add_option("--check", s_check, "existing scheme file to verify against --instance");
  scheme->add_option("--budget", s_budget);
  scheme->add_option("--out", s_out);

  // csp
  auto* csp = app.add_subcommand("csp", "build, evaluate or decode CSP assignments");
  std::string c_instance, c_scheme, c_eval, c_decode, c_out, c_eps = "0.05";
  bool c_build = false;
  uint64_t c_samples = 0, c_seed = 0, c_budget = gf::kDefaultCspBudget;
  csp->add_option("--instance", c_instance)->required();
  csp->add_option("--scheme", c_scheme)->required();
  auto* o_build = csp->add_flag("--build", c_build, "print counts; honest assignment to --out");
  auto* o_eval = csp->add_option("--evaluate", c_eval, "assignment file");
  auto* o_dec = csp->add_option("--decode", c_decode, "assignment file");
  o_build->excludes(o_eval)->excludes(o_dec);
  o_eval->excludes(o_dec);
  csp->add_option("--samples", c_samples, "sample instead of enumerating");
  csp->add_option("--seed", c_seed);
  csp->add_option("--budget", c_budget);
  csp->add_option("--epsilon", c_eps);
  csp->add_option("--out", c_out);

  // graph
  auto* graph = app.add_subcommand("graph", "gap graph counts, export and planted clique");
  std::string g_instance, g_scheme, g_export;
  uint64_t g_r = 1, g_budget = gf::kDefaultExportBudget, g_csp_budget = gf::kDefaultCspBudget;
  bool g_build = false, g_plant = false;
  graph->add_option("--instance", g_instance)->required();
  graph->add_option("--scheme", g_scheme)->required();
  graph->add_option("--replication", g_r);
  graph->add_flag("--build", g_build, "print vertex counts");
  graph->add_option("--export", g_export, "write PREFIX.dimacs and PREFIX.map");
  graph->add_flag("--plant", g_plant, "plant the honest clique and check it");
  graph->add_option("--budget", g_budget, "export vertex budget");
  graph->add_option("--csp-budget", g_csp_budget);

  // clique
  auto* clique = app.add_subcommand("clique", "maximum clique on a DIMACS graph");
  std::string q_input;
  bool q_exact = false, q_search = false;
  uint64_t q_restarts = 100, q_seed = 0, q_nodes = uint64_t{1} << 26;
  int q_max_vertices = 1000;
  clique->add_option("--input", q_input)->required();
  auto* o_exact = clique->add_flag("--exact", q_exact);
  auto* o_search = clique->add_flag("--search", q_search);
  o_exact->excludes(o_search);
  clique->add_option("--restarts", q_restarts);
  clique->add_option("--seed", q_seed);
  clique->add_option("--node-budget", q_nodes);
  clique->add_option("--max-vertices", q_max_vertices);

  // amplify
  auto* amplify = app.add_subcommand("amplify", "strong graph power");
  std::string a_input, a_out;
  int a_power = 2;
  uint64_t a_budget = 20000;
  amplify->add_option("--input", a_input)->required();
  amplify->add_option("--power", a_power)->required();
  amplify->add_option("--out", a_out, "DIMACS output (default stdout)");
  amplify->add_option("--budget", a_budget, "vertex budget");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "end-to-end run writing an artifact bundle");
  std::string p_input, p_out, p_eps = "0.05";
  gf::PipelineConfig cfg;
  int p_h = 0, p_ell = 0;
  uint64_t p_r = 0;
  pipe->add_option("--input", p_input, "DIMACS (needs --k), p mcol, or vsi")->required();
  pipe->add_option("--k", cfg.k);
  pipe->add_option("--h", p_h);
  pipe->add_option("--ell", p_ell);
  pipe->add_option("--replication", p_r);
  pipe->add_option("--epsilon", p_eps);
  pipe->add_option("--seed", cfg.seed);
  pipe->add_flag("--derandomize", cfg.derandomize);
  pipe->add_flag("--dry-run", cfg.dry_run);
  pipe->add_option("--out", p_out, "bundle directory");
  pipe->add_option("--export-budget", cfg.budgets.export_vertices);
  pipe->add_option("--csp-budget", cfg.budgets.csp);
  pipe->add_option("--scheme-budget", cfg.budgets.scheme);
  pipe->add_option("--brute-force-budget", cfg.budgets.brute_force);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reduce) {
      const std::string text = slurp(r_input);
      std::istringstream in(text);
      std::optional<gf::MulticolorGraph> mg;
      if (sniff(text) == InputKind::kMulticolor) {
        mg = gf::read_mcol(in, r_input);
      } else if (sniff(text) == InputKind::kPlain) {
        if (r_k < 1) throw gf::DomainError("plain DIMACS input needs --k");
        mg = gf::plain_to_multicolor(gf::read_dimacs(in, r_input), r_k);
      } else {
        throw gf::DomainError("reduce expects a graph");
      }
      const gf::CliqueReduction red = gf::reduce_clique(*mg);
      std::ostringstream out;
      gf::write_vsi(out, red.instance);
      emit(r_out, out.str());
      if (r_solve) {
        auto cl = gf::brute_force_multicolor_clique(*mg);
        auto sel = gf::brute_force_vector_sum(red.instance);
        std::ostream& os = r_out.empty() ? std::cerr : std::cout;
        os << "clique_exists=" << bool_str(cl.has_value()) << '\n';
        os << "vector_sum_solvable=" << bool_str(sel.has_value()) << '\n';
        if (sel) os << "selection=" << selection_str(*sel) << '\n';
      }
    } else if (*scheme) {
      std::optional<gf::VectorSumInstance> inst;
      if (!s_instance.empty()) inst = load_vsi(s_instance);
      if (!s_check.empty()) {
        if (!inst) throw gf::DomainError("--check needs --instance");
        const gf::EncodingScheme s = load_scheme(s_check);
        const gf::SchemeReport r = gf::check_scheme(s, inst->union_vectors(), inst->target(), s_budget);
        std::cout << "injective=" << bool_str(r.cond_g_injective) << "\nalpha=" << bool_str(r.cond_alpha)
                  << "\nself_correction=" << bool_str(r.cond_selfcorr) << "\npass=" << bool_str(r.all())
                  << '\n';
        return r.all() ? 0 : 3;
      }
      if (s_m == 0 && inst) s_m = inst->dim();
      std::ostringstream out;
      if (s_derand) {
        if (!inst) throw gf::DomainError("--derandomize needs --instance");
        const auto d = gf::derandomize_scheme(inst->union_vectors(), inst->target(), s_h, s_m, s_budget);
        gf::write_scheme(out, d.scheme);
        std::cerr << "projections=" << d.projections << " rounds=" << d.rounds
                  << " constraints=" << d.constraint_count << '\n';
      } else if (s_sample) {
        if (s_m < 1 || s_ell < 1) throw gf::DomainError("--sample needs --m (or --instance) and --ell");
        gf::write_scheme(out, gf::sample_scheme(s_seed, s_h, s_m, s_ell));
      } else {
        throw gf::DomainError("give --sample, --derandomize or --check");
      }
      emit(s_out, out.str());
    } else if (*csp) {
      const gf::CspInstance inst(load_vsi(c_instance), load_scheme(c_scheme));
      const gf::Rational eps = gf::parse_rational(c_eps);
      if (c_build) {
        std::cout << "k=" << inst.k() << "\nh=" << inst.h() << "\nell=" << inst.ell()
                  << "\ntuples=" << inst.num_tuples() << "\nc1_count=" << inst.c1_count().str()
                  << "\nc2_count_per_i=" << inst.c2_count_per_i().str()
                  << "\nc3_count=" << inst.c3_count().str() << '\n';
        auto sel = gf::brute_force_vector_sum(inst.instance());
        std::cout << "solvable=" << bool_str(sel.has_value()) << '\n';
        if (sel && !c_out.empty()) {
          std::ostringstream out;
          gf::write_assignment(out, inst, gf::honest_assignment(inst, *sel));
          emit(c_out, out.str());
        }
      } else if (!c_eval.empty() || !c_decode.empty()) {
        const std::string path = c_eval.empty() ? c_decode : c_eval;
        std::istringstream in(slurp(path));
        const gf::Assignment x = gf::read_assignment(in, inst, path);
        if (!c_eval.empty()) {
          const gf::EvalMode mode =
              c_samples ? gf::EvalMode::sampled(c_samples, c_seed) : gf::EvalMode::exact(c_budget);
          print_sat(gf::evaluate(inst, x, mode), eps);
        } else {
          const gf::Decoding d = c_samples ? gf::linearity_decode_sampled(inst, x, c_samples, c_seed)
                                           : gf::linearity_decode(inst, x, c_budget);
          std::cout << "mode=" << (d.exact ? "exact" : "sampled") << '\n';
          if (!d.exact) std::cout << "samples=" << c_samples << " seed=" << c_seed << '\n';
          for (size_t i = 0; i < d.c.size(); ++i) std::cout << "c" << i + 1 << '=' << d.c[i].digits() << '\n';
          std::cout << "agreement=" << gf::to_string(d.agreement) << '\n';
        }
      } else {
        throw gf::DomainError("give --build, --evaluate or --decode");
      }
    } else if (*graph) {
      const gf::GapGraph g(gf::CspInstance(load_vsi(g_instance), load_scheme(g_scheme)), g_r);
      std::cout << "vertices=" << g.num_vertices().str() << "\nb_vertices=" << g.num_b_vertices().str()
                << "\na_vertices=" << g.num_a_vertices().str()
                << "\nplanted_size=" << g.planted_size().str() << '\n';
      std::optional<gf::ExplicitGapGraph> ex;
      if (!g_export.empty()) {
        ex = gf::export_explicit(g, g_budget);
        std::ostringstream d, m;
        gf::write_dimacs(d, ex->graph);
        gf::write_vertex_map(m, g, ex->vertices);
        emit(g_export + ".dimacs", d.str());
        emit(g_export + ".map", m.str());
        std::cout << "exported_vertices=" << ex->graph.num_vertices()
                  << "\nexported_edges=" << ex->graph.num_edges() << '\n';
      }
      if (g_plant) {
        auto sel = gf::brute_force_vector_sum(g.csp().instance());
        std::cout << "solvable=" << bool_str(sel.has_value()) << '\n';
        if (sel) {
          const gf::PlantedClique p = gf::planted_clique(g, *sel);
          std::cout << "planted_is_clique=" << bool_str(gf::is_clique(g, p, g_csp_budget)) << '\n';
          if (!g_export.empty()) {
            std::ostringstream out;
            out << "planted " << p.size.str() << '\n';
            gf::write_assignment(out, g.csp(), p.assignment);
            emit(g_export + ".clq", out.str());
          }
        }
      }
    } else if (*clique) {
      const gf::Graph g = load_dimacs(q_input);
      gf::CliqueReport r;
      if (q_search) {
        gf::SearchOptions o;
        o.restarts = q_restarts;
        o.seed = q_seed;
        r = gf::clique_local_search(g, o);
      } else {
        r = gf::max_clique_exact(g, gf::ExactOptions{q_max_vertices, q_nodes});
      }
      std::cout << "vertices=" << g.num_vertices() << "\nedges=" << g.num_edges()
                << "\nlower_bound=" << r.lower_bound << "\nupper_bound="
                << (r.upper_bound ? std::to_string(*r.upper_bound) : "unknown")
                << "\nexact=" << bool_str(r.exact) << "\nnodes_explored=" << r.nodes_explored
                << "\nrestarts=" << r.restarts << "\nwitness=";
      for (size_t i = 0; i < r.witness.size(); ++i) std::cout << (i ? " " : "") << r.witness[i] + 1;
      std::cout << '\n';
    } else if (*amplify) {
      const gf::Graph p = gf::export_power(gf::strong_power(load_dimacs(a_input), a_power), a_budget);
      std::ostringstream out;
      gf::write_dimacs(out, p);
      emit(a_out, out.str());
    } else if (*pipe) {
      if (p_h) cfg.h = p_h;
      if (p_ell) cfg.ell = p_ell;
      if (p_r) cfg.replication = p_r;
      cfg.epsilon = gf::parse_rational(p_eps);
      const std::string text = slurp(p_input);
      std::istringstream in(text);
      gf::Bundle b;
      switch (sniff(text)) {
        case InputKind::kMulticolor:
          b = gf::run_pipeline(gf::read_mcol(in, p_input), cfg);
          break;
        case InputKind::kPlain:
          if (cfg.k < 1) throw gf::DomainError("plain DIMACS input needs --k");
          b = gf::run_pipeline(gf::read_dimacs(in, p_input), cfg);
          break;
        case InputKind::kVectorSum:
          b = gf::run_pipeline(gf::read_vsi(in, p_input), cfg);
          break;
      }
      if (!p_out.empty()) {
        gf::write_bundle(p_out, b);
      } else if (!cfg.dry_run) {
        throw gf::DomainError("--out is required unless --dry-run");
      }
      std::cout << b.at("report.txt");
    }
  } catch (const std::exception& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
