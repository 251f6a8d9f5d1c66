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

#ifndef GAPFORGE_ERRORS_H_
#define GAPFORGE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gapforge {

// Operation applied outside its mathematical domain (inverse of zero,
// scalar-multiple query vectors, zero constraint vectors, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector / matrix / parameter shapes that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive stage would exceed its caller-supplied work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": budget exceeded: " + what),
        stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Malformed text input (instance, scheme, graph, assignment files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace gapforge

#endif  // GAPFORGE_ERRORS_H_
