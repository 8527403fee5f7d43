// Copyright 2026 The sepcheck Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sepcheck {

/// Input violates an operation's precondition (shape, symmetry, range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A retraction or orthonormalization met a numerically rank-deficient input.
class DegenerateStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polygon lengths cannot close (largest exceeds the sum of the rest).
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A single-pair decomposition was requested for a pair with a^r > 0.
class CriterionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// State-file parse or validation failure. line() is 1-based, 0 if not
/// attributable to a single line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sepcheck
