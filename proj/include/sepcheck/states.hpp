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

// Built-in states used by the CLI and the test suites.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "sepcheck/density.hpp"

namespace sepcheck {

/// The 2 x 4 state with entries 0 and 1/8: the five vectors
/// |1 4>, |2 1>, |1 1>+|2 2>, |1 2>+|2 3>, |1 3>+|2 4>, each weighted 1/8.
inline DensityMatrix bound_2x4() {
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (auto [a, b] : {std::pair{0, 5}, std::pair{1, 6}, std::pair{2, 7}}) {
    rho(a, a) = rho(b, b) = rho(a, b) = rho(b, a) = 1.0;
  }
  rho(3, 3) = rho(4, 4) = 1.0;
  return DensityMatrix(2, 4, rho / 8.0);
}

/// Hand-picked scaled eigenbasis of bound_2x4(), ordered t = 1/8, 1/8, 1/4,
/// 1/4, 1/4. The degenerate eigenspaces make tau depend on this choice.
inline std::vector<ComplexVector> bound_2x4_reference_basis() {
  const double s = std::sqrt(1.0 / 8.0);
  auto unit = [s](std::initializer_list<int> idx) {
    ComplexVector v = ComplexVector::Zero(8);
    for (int i : idx) v(i - 1) = s;
    return v;
  };
  return {unit({4}), unit({5}), unit({1, 6}), unit({2, 7}), unit({3, 8})};
}

/// p |psi-><psi-| + (1 - p) I/4 with psi- = (|01> - |10>)/sqrt(2).
inline DensityMatrix werner_2x2(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("werner_2x2: p must lie in [0, 1]");
  }
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  const ComplexMatrix rho =
      p * psi * psi.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(2, 2, rho);
}

/// (|00> + |11>)/sqrt(2).
inline DensityMatrix bell() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(2, 2, psi * psi.adjoint());
}

inline DensityMatrix pure_state(std::size_t m, std::size_t n,
                                const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != m * n || !(psi.norm() > 0.0)) {
    throw DomainError("pure_state: vector must be non-zero with length m*n");
  }
  const ComplexVector unit = psi / psi.norm();
  return DensityMatrix(m, n, unit * unit.adjoint());
}

/// rho_a (x) rho_b.
inline DensityMatrix product(const ComplexMatrix& rho_a,
                             const ComplexMatrix& rho_b) {
  const DensityMatrix a(static_cast<std::size_t>(rho_a.rows()), 1, rho_a);
  const DensityMatrix b(static_cast<std::size_t>(rho_b.rows()), 1, rho_b);
  return DensityMatrix(a.m(), b.m(), kron(a.matrix(), b.matrix()));
}

/// F |Phi+><Phi+| + (1 - F) (I - |Phi+><Phi+|)/(d^2 - 1) on C^d (x) C^d.
/// Separable iff F <= 1/d.
inline DensityMatrix isotropic(std::size_t d, double fidelity) {
  if (d < 2) throw DomainError("isotropic: d must be >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw DomainError("isotropic: fidelity must lie in [0, 1]");
  }
  const auto dim = static_cast<Eigen::Index>(d * d);
  ComplexVector phi = ComplexVector::Zero(dim);
  for (std::size_t i = 0; i < d; ++i) {
    phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  const ComplexMatrix proj = phi * phi.adjoint();
  const ComplexMatrix rho =
      fidelity * proj + (1.0 - fidelity) *
                            (ComplexMatrix::Identity(dim, dim) - proj) /
                            static_cast<double>(d * d - 1);
  return DensityMatrix(d, d, rho);
}

namespace detail {

inline ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace detail

/// G G^H / tr(G G^H) with G a complex Gaussian (m n) x rank matrix.
inline DensityMatrix random_density(std::size_t m, std::size_t n,
                                    std::size_t rank, std::uint64_t seed) {
  if (rank < 1 || rank > m * n) {
    throw DomainError("random_density: rank must lie in [1, m n]");
  }
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = detail::gaussian_matrix(
      static_cast<Eigen::Index>(m * n), static_cast<Eigen::Index>(rank), gen);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(m, n, rho);
}

/// sum_i p_i |a_i><a_i| (x) |b_i><b_i| with Haar-random unit a_i, b_i and
/// flat-Dirichlet weights p.
inline DensityMatrix random_separable(std::size_t m, std::size_t n,
                                      std::size_t terms, std::uint64_t seed) {
  if (terms < 1) throw DomainError("random_separable: terms must be >= 1");
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (auto& w : weights) total += (w = expo(gen));
  const auto d = static_cast<Eigen::Index>(m * n);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (std::size_t t = 0; t < terms; ++t) {
    ComplexVector a = detail::gaussian_matrix(static_cast<Eigen::Index>(m), 1, gen);
    ComplexVector b = detail::gaussian_matrix(static_cast<Eigen::Index>(n), 1, gen);
    a.normalize();
    b.normalize();
    const ComplexVector psi = kron(a, b);
    rho += (weights[t] / total) * psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(m, n, rho);
}

}  // namespace sepcheck
