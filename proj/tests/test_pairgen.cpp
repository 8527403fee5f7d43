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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "sepcheck/criterion.hpp"
#include "sepcheck/pairgen.hpp"
#include "test_util.hpp"

namespace sepcheck {
namespace {

using Triple = std::tuple<std::size_t, std::size_t, int>;

std::vector<Triple> sorted_entries(const PairOperator& op) {
  std::vector<Triple> out;
  for (const auto& e : op.entries) out.emplace_back(e.row, e.col, e.value);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> expected_entries(std::size_t a, std::size_t b, std::size_t c,
                                     std::size_t d) {
  // -1 at (a, b), (b, a); +1 at (c, d), (d, c).
  std::vector<Triple> out = {{a, b, -1}, {b, a, -1}, {c, d, 1}, {d, c, 1}};
  std::sort(out.begin(), out.end());
  return out;
}

TEST(EnumeratePairs, CountsAndOrder) {
  EXPECT_EQ(enumerate_pairs(2, 2), (std::vector<PairIndex>{{2, 2}}));
  EXPECT_EQ(enumerate_pairs(2, 4), (std::vector<PairIndex>{{2, 2}, {2, 3}, {2, 4}}));
  EXPECT_EQ(enumerate_pairs(3, 5).size(), 8u);
  EXPECT_THROW(enumerate_pairs(1, 3), DomainError);
  EXPECT_THROW(enumerate_pairs(3, 1), DomainError);
}

TEST(BuildPairOperator, TwoByFourListing) {
  const auto ops = build_all_pair_operators(2, 4);
  ASSERT_EQ(ops.size(), 3u);
  EXPECT_EQ(sorted_entries(ops[0]), expected_entries(1, 6, 2, 5));
  EXPECT_EQ(sorted_entries(ops[1]), expected_entries(1, 7, 3, 5));
  EXPECT_EQ(sorted_entries(ops[2]), expected_entries(1, 8, 4, 5));
}

TEST(BuildPairOperator, FourByFourListing) {
  // (minus partner of 1, plus pair) for B^1 ... B^9 of the 4 x 4 listing.
  const std::size_t listing[9][3] = {{6, 2, 5},   {10, 2, 9},  {14, 2, 13},
                                     {7, 3, 5},   {11, 3, 9},  {15, 3, 13},
                                     {8, 4, 5},   {12, 4, 9},  {16, 4, 13}};
  const auto ops = build_all_pair_operators(4, 4);
  ASSERT_EQ(ops.size(), 9u);
  for (std::size_t r = 0; r < 9; ++r) {
    EXPECT_EQ(sorted_entries(ops[r]),
              expected_entries(1, listing[r][0], listing[r][1], listing[r][2]))
        << "r=" << r + 1;
  }
}

TEST(BuildPairOperator, TwoByTwo) {
  const auto op = build_pair_operator(2, 2, {2, 2});
  EXPECT_EQ(sorted_entries(op), expected_entries(1, 4, 2, 3));
  EXPECT_THROW(build_pair_operator(2, 2, {3, 2}), DomainError);
  EXPECT_THROW(build_pair_operator(2, 2, {1, 2}), DomainError);
}

TEST(BuildPairOperator, SymmetricWithProjectorSquare) {
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t n = 2; n <= 5; ++n) {
      for (const auto& op : build_all_pair_operators(m, n)) {
        const ComplexMatrix b = op.dense();
        EXPECT_EQ(b, b.transpose());
        const ComplexMatrix sq = b * b;
        EXPECT_TRUE(sq.isDiagonal());
        EXPECT_NEAR(sq.trace().real(), 4.0, 0.0);
        for (Eigen::Index i = 0; i < sq.rows(); ++i) {
          EXPECT_TRUE(sq(i, i) == Complex(0.0) || sq(i, i) == Complex(1.0));
        }
      }
    }
  }
}

TEST(Tilde, BasisVectors) {
  const auto op = build_pair_operator(2, 2, {2, 2});
  ComplexVector e1 = ComplexVector::Zero(4), e2 = ComplexVector::Zero(4);
  e1(0) = 1.0;
  e2(1) = 1.0;
  ComplexVector minus_e4 = ComplexVector::Zero(4), e3 = ComplexVector::Zero(4);
  minus_e4(3) = -1.0;
  e3(2) = 1.0;
  EXPECT_EQ(tilde(op, e1), minus_e4);
  EXPECT_EQ(tilde(op, e2), e3);
  EXPECT_THROW(tilde(op, ComplexVector::Zero(3)), DomainError);
}

TEST(Tilde, MatchesDenseProduct) {
  std::mt19937_64 gen(4);
  for (const auto& op : build_all_pair_operators(3, 4)) {
    const ComplexVector psi = testing_util::random_complex(12, 1, gen);
    EXPECT_LE((tilde(op, psi) - op.dense() * psi.conjugate()).norm(), 1e-15);
  }
}

TEST(PairResidual, Examples) {
  const auto op = build_pair_operator(2, 2, {2, 2});
  ComplexVector zero_zero = ComplexVector::Zero(4);
  zero_zero(0) = 1.0;
  EXPECT_EQ(pair_residual(op, zero_zero), Complex(0.0));

  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(pair_residual(op, bell) - Complex(-1.0)), 0.0, 1e-15);

  ComplexVector plus = ComplexVector::Zero(4);
  plus(0) = plus(1) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(pair_residual(op, plus)), 0.0, 1e-15);
  EXPECT_THROW(pair_residual(op, ComplexVector::Zero(5)), DomainError);
}

TEST(PairResidual, MinorIdentity) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = dim(gen), n = dim(gen);
    const ComplexVector psi = testing_util::random_complex(m * n, 1, gen);
    auto a = [&](int i, int j) { return std::conj(psi((i - 1) * n + (j - 1))); };
    for (const auto& op : build_all_pair_operators(m, n)) {
      const int p = static_cast<int>(op.pair.p), q = static_cast<int>(op.pair.q);
      const Complex expected = 2.0 * (a(1, q) * a(p, 1) - a(1, 1) * a(p, q));
      ASSERT_NEAR(std::abs(pair_residual(op, psi) - expected), 0.0, 1e-12);
    }
  }
}

TEST(PairResidual, ProductStatesVanish) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexVector alpha = testing_util::random_complex(3, 1, gen).normalized();
    ComplexVector beta = testing_util::random_complex(4, 1, gen).normalized();
    const ComplexVector psi = kron(alpha, beta);
    for (const auto& op : build_all_pair_operators(3, 4)) {
      EXPECT_LE(std::abs(pair_residual(op, psi)), 1e-12);
    }
  }
}

TEST(PairResidual, GenericConverse) {
  // Fix row 1 and column 1 with A_11 != 0; solving every c_r = 0 forces
  // A_pq = A_1q A_p1 / A_11, which must be rank one.
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 3, n = 4;
    ComplexMatrix a = testing_util::random_complex(m, n, gen);
    for (int p = 1; p < m; ++p)
      for (int q = 1; q < n; ++q) a(p, q) = a(0, q) * a(p, 0) / a(0, 0);
    ComplexVector psi(m * n);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < n; ++q) psi(p * n + q) = a(p, q);
    double worst = 0.0;
    for (const auto& op : build_all_pair_operators(m, n)) {
      worst = std::max(worst, std::abs(pair_residual(op, psi)));
    }
    ASSERT_LE(worst, 1e-12 * psi.squaredNorm());
    const RealVector sv = singular_values(a);
    EXPECT_LE(sv(1), 1e-8 * a.norm());
  }
}

TEST(PairResidual, VanishingAnchorRowIsNotDetected) {
  // Zero first row: every residual vanishes although the state is entangled.
  ComplexVector ent = ComplexVector::Zero(9);
  ent(4) = 1.0;  // |2 2>
  ent(8) = 1.0;  // |3 3>
  for (const auto& op : build_all_pair_operators(3, 3)) {
    EXPECT_EQ(pair_residual(op, ent), Complex(0.0));
  }
  EXPECT_GT(product_defect(ent, 3, 3), 0.5);
}

}  // namespace
}  // namespace sepcheck
