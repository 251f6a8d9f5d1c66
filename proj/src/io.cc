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


#include "gapforge/io.h"

#include <sstream>
#include <vector>

#include "gapforge/errors.h"

namespace gapforge {

namespace {

// Next line that is neither blank nor a "c" comment... except that "c" is a
// data tag in the multicolor format, so comments there use '#'.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

FVector parse_digits(const std::string& s, int dim, const std::string& source, int lineno) {
  if (static_cast<int>(s.size()) != dim) {
    throw ParseError(source, lineno, "expected " + std::to_string(dim) + " digits, got '" + s + "'");
  }
  try {
    return FVector::from_digits(s);
  } catch (const DomainError&) {
    throw ParseError(source, lineno, "bad digit string '" + s + "'");
  }
}

template <typename... T>
void read_fields(std::istringstream& ls, const std::string& source, int lineno, T&... fields) {
  if (!(ls >> ... >> fields)) throw ParseError(source, lineno, "malformed line");
  std::string extra;
  if (ls >> extra) throw ParseError(source, lineno, "trailing text '" + extra + "'");
}

}  // namespace

void write_vsi(std::ostream& out, const VectorSumInstance& inst) {
  out << "vsi " << inst.num_sets() << ' ' << inst.dim() << '\n';
  out << "t " << inst.target().digits() << '\n';
  for (int i = 0; i < inst.num_sets(); ++i)
    for (const FVector& v : inst.set(i)) out << "s " << i + 1 << ' ' << v.digits() << '\n';
}

VectorSumInstance read_vsi(std::istream& in, const std::string& source) {
  std::string line, tag;
  int lineno = 0, k = 0, m = 0;
  if (!next_line(in, line, lineno)) throw ParseError(source, lineno, "empty input");
  {
    std::istringstream ls(line);
    read_fields(ls, source, lineno, tag, k, m);
    if (tag != "vsi" || k <= 0 || m <= 0) throw ParseError(source, lineno, "expected 'vsi <k> <m>'");
  }
  std::vector<std::vector<FVector>> sets(k);
  std::optional<FVector> target;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    ls >> tag;
    if (tag == "t") {
      std::string d;
      read_fields(ls, source, lineno, d);
      if (target) throw ParseError(source, lineno, "duplicate target");
      target = parse_digits(d, m, source, lineno);
    } else if (tag == "s") {
      int idx = 0;
      std::string d;
      read_fields(ls, source, lineno, idx, d);
      if (idx < 1 || idx > k) throw ParseError(source, lineno, "set index out of range");
      const FVector v = parse_digits(d, m, source, lineno);
      if (!v.is_binary()) throw ParseError(source, lineno, "set members must be 0/1 vectors");
      sets[idx - 1].push_back(v);
    } else {
      throw ParseError(source, lineno, "unknown tag '" + tag + "'");
    }
  }
  if (!target) throw ParseError(source, lineno, "missing target line");
  return VectorSumInstance(m, std::move(sets), *target);
}

void write_scheme(std::ostream& out, const EncodingScheme& s) {
  out << "scheme " << s.h() << ' ' << s.m() << ' ' << s.ell() << ' ' << s.provenance_token() << '\n';
  for (const FMat& a : s.matrices())
    for (int r = 0; r < a.rows(); ++r) out << a.row(r).digits() << '\n';
}

EncodingScheme read_scheme(std::istream& in, const std::string& source) {
  std::string line, tag, prov;
  int lineno = 0, h = 0, m = 0, ell = 0;
  if (!next_line(in, line, lineno)) throw ParseError(source, lineno, "empty input");
  {
    std::istringstream ls(line);
    read_fields(ls, source, lineno, tag, h, m, ell, prov);
    if (tag != "scheme" || h <= 0 || m <= 0 || ell <= 0) {
      throw ParseError(source, lineno, "expected 'scheme <h> <m> <ell> <provenance>'");
    }
  }
  Provenance p = Provenance::kDerandomized;
  uint64_t seed = 0;
  const std::string prefix = "seeded-random(";
  if (prov.rfind(prefix, 0) == 0 && prov.back() == ')') {
    p = Provenance::kSeededRandom;
    try {
      size_t used = 0;
      const std::string num = prov.substr(prefix.size(), prov.size() - prefix.size() - 1);
      seed = std::stoull(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw ParseError(source, lineno, "bad seed in '" + prov + "'");
    }
  } else if (prov != "derandomized") {
    throw ParseError(source, lineno, "unknown provenance '" + prov + "'");
  }
  std::vector<FMat> mats;
  for (int i = 0; i < ell; ++i) {
    std::vector<FVector> rows;
    for (int r = 0; r < h; ++r) {
      if (!next_line(in, line, lineno)) throw ParseError(source, lineno, "truncated scheme");
      std::istringstream ls(line);
      std::string d;
      read_fields(ls, source, lineno, d);
      rows.push_back(parse_digits(d, m, source, lineno));
    }
    mats.push_back(FMat::from_rows(std::move(rows)));
  }
  if (next_line(in, line, lineno)) throw ParseError(source, lineno, "text after the last matrix");
  return EncodingScheme(h, m, std::move(mats), p, seed);
}

void write_mcol(std::ostream& out, const MulticolorGraph& g) {
  out << "p mcol " << g.num_vertices() << ' ' << g.edges().size() << ' ' << g.k() << '\n';
  for (int v = 0; v < g.num_vertices(); ++v) out << "c " << v + 1 << ' ' << g.color(v) + 1 << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

MulticolorGraph read_mcol(std::istream& in, const std::string& source) {
  std::string line, tag, kind;
  int lineno = 0, n = 0, k = 0;
  long long m = 0;
  if (!next_line(in, line, lineno)) throw ParseError(source, lineno, "empty input");
  {
    std::istringstream ls(line);
    read_fields(ls, source, lineno, tag, kind, n, m, k);
    if (tag != "p" || kind != "mcol" || n < 0 || k <= 0) {
      throw ParseError(source, lineno, "expected 'p mcol <n> <edges> <k>'");
    }
  }
  std::vector<int> color(n, -1);
  std::vector<std::pair<int, int>> edges;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    ls >> tag;
    int a = 0, b = 0;
    read_fields(ls, source, lineno, a, b);
    if (tag == "c") {
      if (a < 1 || a > n || b < 1 || b > k) throw ParseError(source, lineno, "bad colour line");
      color[a - 1] = b - 1;
    } else if (tag == "e") {
      if (a < 1 || a > n || b < 1 || b > n || a == b) throw ParseError(source, lineno, "bad edge line");
      edges.emplace_back(a - 1, b - 1);
    } else {
      throw ParseError(source, lineno, "unknown tag '" + tag + "'");
    }
  }
  for (int v = 0; v < n; ++v)
    if (color[v] < 0) throw ParseError(source, lineno, "vertex " + std::to_string(v + 1) + " has no colour");
  return MulticolorGraph(k, std::move(color), std::move(edges));
}

void write_assignment(std::ostream& out, const CspInstance& csp, const Assignment& x) {
  for (Tuple a = 0; a < csp.num_tuples(); ++a) {
    out << csp.tuple_vector(a).digits() << ' ' << x.get(a).digits() << '\n';
  }
}

Assignment read_assignment(std::istream& in, const CspInstance& csp, const std::string& source) {
  Assignment x(csp.num_tuples(), csp.ell());
  std::vector<bool> seen(csp.num_tuples(), false);
  std::string line;
  int lineno = 0;
  uint64_t count = 0;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    std::string t, v;
    read_fields(ls, source, lineno, t, v);
    const Tuple a = index_of_vector(parse_digits(t, csp.k() * csp.h(), source, lineno));
    if (seen[a]) throw ParseError(source, lineno, "tuple assigned twice");
    seen[a] = true;
    x.set(a, parse_digits(v, csp.ell(), source, lineno));
    ++count;
  }
  if (count != csp.num_tuples()) throw ParseError(source, lineno, "assignment is not total");
  return x;
}

}  // namespace gapforge
