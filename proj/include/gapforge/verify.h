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


#ifndef GAPFORGE_VERIFY_H_
#define GAPFORGE_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/gapgraph.h"
#include "gapforge/graph.h"

namespace gapforge {

struct CliqueReport {
  int lower_bound = 0;
  std::vector<int> witness;  // ascending vertex ids
  std::optional<int> upper_bound;
  bool exact = false;
  uint64_t nodes_explored = 0;
  uint64_t restarts = 0;

  friend bool operator==(const CliqueReport&, const CliqueReport&) = default;
};

struct ExactOptions {
  int max_vertices = 1000;
  uint64_t node_budget = uint64_t{1} << 26;
};

// Branch and bound with greedy colouring bounds over a degeneracy order.
// Over either budget the report has exact = false and the best bounds found.
CliqueReport max_clique_exact(const Graph& g, const ExactOptions& opt = {});

struct SearchOptions {
  uint64_t restarts = 100;
  uint64_t seed = 0;
  // Non-improving moves allowed per restart.
  int plateau = 64;
  // Grown first in every restart; must be a clique.
  std::vector<int> warm_start;
  // Stop as soon as a clique of this size is found (0 = never).
  int target = 0;
};

// Random greedy construction plus (1,1)-swaps that keep the clique size,
// each restart seeded from derive_seed(seed, restart).
CliqueReport clique_local_search(const Graph& g, const SearchOptions& opt = {});

// The same idea on the implicit gap graph: one vertex per group, groups
// visited in random order, values tried in random order.
struct GapSearchResult {
  CliqueSet best;
  uint64_t restarts = 0;
};
GapSearchResult gap_local_search(const GapGraph& g, uint64_t restarts, uint64_t seed,
                                 uint64_t budget = uint64_t{1} << 32);

enum class Verdict { kBelow, kReached, kInconclusive };
std::string to_string(Verdict v);

enum class ProbeMode { kExact, kSampled, kStructural };

struct ProbeOptions {
  ProbeMode mode = ProbeMode::kExact;
  uint64_t restarts = 10000;
  uint64_t seed = 0;
  uint64_t export_budget = kDefaultExportBudget;
  ExactOptions exact;
  uint64_t structural_budget = uint64_t{1} << 26;
};

struct ProbeResult {
  Verdict verdict = Verdict::kInconclusive;
  BigInt planted_size;
  // Largest clique seen (explicit ids or gap vertices), re-verified.
  BigInt best_size;
  std::optional<int> exact_omega;
  CliqueSet witness;
  // Structural mode: a satisfying assignment when one exists.
  std::optional<Assignment> witness_assignment;
  CliqueReport report;
};

// Exact: ω of the explicit export. Sampled: local search (explicit when the
// export fits, implicit otherwise). Structural: decides whether any
// one-vertex-per-group clique exists by deciding satisfiability of the CSP
// over additive assignments. Every reached verdict carries a checked
// witness.
ProbeResult soundness_probe(const GapGraph& g, const ProbeOptions& opt);

// Searches additive block maps sigma_i : F^h -> F^ell with sigma_i(al) in
// the C2 lists for every al and sum_i sigma_i(al) = f(al, t). Such a map
// exists iff the CSP is satisfiable.
std::optional<Assignment> satisfying_assignment(const CspInstance& csp,
                                                uint64_t budget = uint64_t{1} << 26);

}  // namespace gapforge

#endif  // GAPFORGE_VERIFY_H_
