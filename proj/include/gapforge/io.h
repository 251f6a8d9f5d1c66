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


#ifndef GAPFORGE_IO_H_
#define GAPFORGE_IO_H_

// Text formats. Vectors are digit strings (digit d = element with bits
// (d >> 1, d & 1)); indices in files are 1-based.
//
//   vector-sum:  "vsi <k'> <m>", "t <digits>", "s <set> <digits>"...
//   scheme:      "scheme <h> <m> <ell> <provenance>", then ell blocks of h
//                rows of m digits
//   multicolor:  "p mcol <n> <edges> <k>", "c <vertex> <color>", "e <u> <v>"
//   assignment:  "<tuple digits> <value digits>" per tuple, lexicographic

#include <istream>
#include <ostream>
#include <string>

#include "gapforge/cliquered.h"
#include "gapforge/csp.h"
#include "gapforge/encoding.h"

namespace gapforge {

void write_vsi(std::ostream& out, const VectorSumInstance& inst);
VectorSumInstance read_vsi(std::istream& in, const std::string& source = "<vsi>");

void write_scheme(std::ostream& out, const EncodingScheme& s);
EncodingScheme read_scheme(std::istream& in, const std::string& source = "<scheme>");

void write_mcol(std::ostream& out, const MulticolorGraph& g);
MulticolorGraph read_mcol(std::istream& in, const std::string& source = "<mcol>");

void write_assignment(std::ostream& out, const CspInstance& csp, const Assignment& x);
Assignment read_assignment(std::istream& in, const CspInstance& csp,
                           const std::string& source = "<assignment>");

}  // namespace gapforge

#endif  // GAPFORGE_IO_H_
