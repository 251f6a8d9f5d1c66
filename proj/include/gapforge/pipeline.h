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


#ifndef GAPFORGE_PIPELINE_H_
#define GAPFORGE_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "gapforge/cliquered.h"
#include "gapforge/encoding.h"
#include "gapforge/graph.h"
#include "gapforge/rational.h"
#include "gapforge/verify.h"

namespace gapforge {

// k copies of the vertex set, copy i coloured i. (u,i) ~ (v,j) for i < j iff
// uv is an edge and u < v, so a multicolour clique is a k-clique listed in
// increasing order. Vertex (u,i) has id i*n + u.
MulticolorGraph plain_to_multicolor(const Graph& g, int k);

struct PipelineBudgets {
  uint64_t brute_force = kDefaultBruteForceBudget;
  uint64_t scheme = kDefaultSchemeBudget;
  uint64_t csp = kDefaultCspBudget;
  uint64_t assignment_tuples = uint64_t{1} << 22;
  uint64_t export_vertices = kDefaultExportBudget;
  uint64_t structural = uint64_t{1} << 26;
  uint64_t restarts = 10000;
  ExactOptions exact;
};

struct PipelineConfig {
  int k = 0;  // ignored for vector-sum input
  std::optional<int> h;
  std::optional<int> ell;  // not used with derandomize
  std::optional<uint64_t> replication;
  Rational epsilon = Rational(1, 20);
  uint64_t seed = 0;
  bool derandomize = false;
  bool dry_run = false;
  PipelineBudgets budgets;
};

// Resolved parameters. r is kept as a BigInt since the default 4^{k'h} is
// far beyond 64 bits.
struct PipelineParams {
  int k_prime = 0;
  int m = 0;
  int n = 0;  // distinct vectors over all sets
  int h = 0;
  int ell = 0;
  BigInt r;
};

// h = k'^2, ell = 2 ceil(log2 n) + 2h, r = 4^{k'h} unless overridden.
PipelineParams resolve_parameters(const VectorSumInstance& inst, const PipelineConfig& cfg);

// File name -> contents.
using Bundle = std::map<std::string, std::string>;

// Stages: reduce, scheme, csp, graph, planted, probe. Budget failures are
// rethrown as BudgetExceeded with the pipeline stage name. Randomness: the
// scheme uses derive_seed(seed, 1), the probe derive_seed(seed, 2).
Bundle run_pipeline(const MulticolorGraph& g, const PipelineConfig& cfg);
Bundle run_pipeline(const Graph& g, const PipelineConfig& cfg);
Bundle run_pipeline(const VectorSumInstance& inst, const PipelineConfig& cfg);

// Creates `dir` if needed and writes every file.
void write_bundle(const std::string& dir, const Bundle& bundle);

// Key=value lines of a report file, in order.
std::map<std::string, std::string> parse_report(const std::string& text);

// "1/20", "0.05" or "3".
Rational parse_rational(const std::string& s);

}  // namespace gapforge

#endif  // GAPFORGE_PIPELINE_H_
