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

// Parallel pairs of an m x n coefficient matrix and their pair operators.
//
// A pure state |psi> = sum A_ab |a b> is a product state iff every 2x2 minor
// anchored at A_11 vanishes. Pair (p, q) tests
//   (A_11, A_1q) || (A_p1, A_pq),
// through the symmetric +-1 operator B with
//   <psi| B |psi*> = 2 (A*_1q A*_p1 - A*_11 A*_pq).
// All indices in this header are 1-based, matching the basis label
// idx(a, b) = (a - 1) n + b.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sepcheck/matcore.hpp"

namespace sepcheck {

struct PairIndex {
  std::size_t p = 2;  // row, 2..m
  std::size_t q = 2;  // column, 2..n

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

struct PairEntry {
  std::size_t row;  // 1-based
  std::size_t col;  // 1-based
  int value;        // +1 or -1

  friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

/// Sparse symmetric operator with exactly four +-1 entries.
struct PairOperator {
  std::size_t m = 2;
  std::size_t n = 2;
  PairIndex pair;
  std::array<PairEntry, 4> entries{};

  std::size_t dim() const { return m * n; }

  ComplexMatrix dense() const {
    const auto d = static_cast<Eigen::Index>(dim());
    ComplexMatrix b = ComplexMatrix::Zero(d, d);
    for (const auto& e : entries) {
      b(static_cast<Eigen::Index>(e.row - 1),
        static_cast<Eigen::Index>(e.col - 1)) = static_cast<double>(e.value);
    }
    return b;
  }
};

/// 1-based basis label of |a b>.
inline std::size_t basis_index(std::size_t a, std::size_t b, std::size_t n) {
  return (a - 1) * n + b;
}

inline void require_dims(std::size_t m, std::size_t n, const char* what) {
  if (m < 2 || n < 2) {
    throw DomainError(std::string(what) + ": subsystem dimensions must be >= 2");
  }
}

/// The (m-1)(n-1) pairs, ordered by q ascending then p ascending. Position
/// r (1-based) in this list is the pair label used in reports.
inline std::vector<PairIndex> enumerate_pairs(std::size_t m, std::size_t n) {
  require_dims(m, n, "enumerate_pairs");
  std::vector<PairIndex> pairs;
  pairs.reserve((m - 1) * (n - 1));
  for (std::size_t q = 2; q <= n; ++q) {
    for (std::size_t p = 2; p <= m; ++p) {
      pairs.push_back({p, q});
    }
  }
  return pairs;
}

inline PairOperator build_pair_operator(std::size_t m, std::size_t n,
                                        PairIndex pair) {
  require_dims(m, n, "build_pair_operator");
  if (pair.p < 2 || pair.p > m || pair.q < 2 || pair.q > n) {
    throw DomainError("build_pair_operator: pair index out of range");
  }
  const std::size_t i11 = basis_index(1, 1, n);
  const std::size_t ipq = basis_index(pair.p, pair.q, n);
  const std::size_t i1q = basis_index(1, pair.q, n);
  const std::size_t ip1 = basis_index(pair.p, 1, n);
  PairOperator op;
  op.m = m;
  op.n = n;
  op.pair = pair;
  op.entries = {PairEntry{i11, ipq, -1}, PairEntry{ipq, i11, -1},
                PairEntry{i1q, ip1, +1}, PairEntry{ip1, i1q, +1}};
  return op;
}

/// All pair operators in enumerate_pairs order.
inline std::vector<PairOperator> build_all_pair_operators(std::size_t m,
                                                          std::size_t n) {
  std::vector<PairOperator> ops;
  for (const auto& pair : enumerate_pairs(m, n)) {
    ops.push_back(build_pair_operator(m, n, pair));
  }
  return ops;
}

/// B conj(psi).
inline ComplexVector tilde(const PairOperator& b, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != b.dim()) {
    throw DomainError("tilde: vector length does not match m*n");
  }
  ComplexVector out = ComplexVector::Zero(psi.size());
  for (const auto& e : b.entries) {
    out(static_cast<Eigen::Index>(e.row - 1)) +=
        static_cast<double>(e.value) *
        std::conj(psi(static_cast<Eigen::Index>(e.col - 1)));
  }
  return out;
}

/// c = <psi| B |psi*>; zero iff the pair's 2x2 minor vanishes.
inline Complex pair_residual(const PairOperator& b, const ComplexVector& psi) {
  return psi.dot(tilde(b, psi));
}

}  // namespace sepcheck
