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

// Per-pair spectral test and the partial-transpose cross-check.
//
// With rho = sum_i |x_i><x_i| (scaled eigenvectors, <x_i|x_j> = t_i d_ij),
// each pair operator B gives the complex symmetric matrix
//   tau_ij = <x_i| B |x_j*>.
// Its Takagi values lambda_1 >= lambda_2 >= ... do not depend on the choice
// of eigenbasis, and
//   a = lambda_1 - sum_{i=2..l'} lambda_i <= 0
// holds iff some ensemble of rho has the pair parallel in every member.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sepcheck/density.hpp"
#include "sepcheck/matcore.hpp"
#include "sepcheck/pairgen.hpp"

namespace sepcheck {

struct ScaledEigvecs {
  std::vector<ComplexVector> vectors;  // |x_i>, norm^2 = t_i
  RealVector weights;                  // t_i
  double rank_tol = 1e-12;

  std::size_t l() const { return vectors.size(); }

  /// (m n) x l matrix with the |x_i> as columns.
  ComplexMatrix as_matrix() const {
    ComplexMatrix x(vectors.empty() ? 0 : vectors.front().size(),
                    static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      x.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return x;
  }
};

struct PairSpectrum {
  RealVector lambdas;  // descending
  std::size_t l_prime = 0;
};

struct SpectralReport {
  PairIndex pair;
  ComplexMatrix tau;
  RealVector lambdas;
  std::size_t l_prime = 0;
  double a_value = 0.0;
};

/// Eigenvectors of rho scaled by the square root of their eigenvalues. An
/// override basis must be orthogonal with sum |x_i><x_i| = rho (1e-10).
inline ScaledEigvecs scaled_eigvecs(
    const DensityMatrix& rho, double rank_tol = 1e-12,
    const std::optional<std::vector<ComplexVector>>& basis_override =
        std::nullopt) {
  const HermitianEig eig = hermitian_eig(rho.matrix());
  std::size_t l = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > rank_tol) ++l;
  }

  ScaledEigvecs out;
  out.rank_tol = rank_tol;
  if (!basis_override) {
    out.weights.resize(static_cast<Eigen::Index>(l));
    for (std::size_t i = 0; i < l; ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      out.weights(idx) = eig.eigenvalues(idx);
      out.vectors.push_back(std::sqrt(eig.eigenvalues(idx)) *
                            eig.eigenvectors.col(idx));
    }
    return out;
  }

  const auto& basis = *basis_override;
  if (basis.size() != l) {
    throw DomainError("scaled_eigvecs: override has " +
                      std::to_string(basis.size()) + " vectors, rho has rank " +
                      std::to_string(l));
  }
  for (const auto& v : basis) {
    if (static_cast<std::size_t>(v.size()) != rho.dim()) {
      throw DomainError("scaled_eigvecs: override vector has wrong length");
    }
  }
  out.vectors = basis;
  const ComplexMatrix x = out.as_matrix();
  const ComplexMatrix gram = x.adjoint() * x;
  ComplexMatrix off = gram;
  off.diagonal().setZero();
  if (off.norm() > 1e-10) {
    throw DomainError("scaled_eigvecs: override vectors are not orthogonal");
  }
  if ((x * x.adjoint() - rho.matrix()).norm() > 1e-10) {
    throw DomainError("scaled_eigvecs: override vectors do not reproduce rho");
  }
  out.weights = gram.diagonal().real();
  return out;
}

/// tau_ij = <x_i| B |x_j*>.
inline ComplexMatrix tau_matrix(const ScaledEigvecs& x, const PairOperator& b) {
  const auto l = static_cast<Eigen::Index>(x.l());
  ComplexMatrix tilded(static_cast<Eigen::Index>(b.dim()), l);
  for (Eigen::Index j = 0; j < l; ++j) {
    const auto& xj = x.vectors[static_cast<std::size_t>(j)];
    if (static_cast<std::size_t>(xj.size()) != b.dim()) {
      throw DomainError("tau_matrix: vector length does not match m*n");
    }
    tilded.col(j) = tilde(b, xj);
  }
  if (l == 0) return ComplexMatrix(0, 0);
  return x.as_matrix().adjoint() * tilded;
}

/// Square roots of the eigenvalues of tau conj(tau), i.e. the singular values
/// of the symmetric tau, with l' = number above rank_tol.
inline PairSpectrum pair_spectrum(const ComplexMatrix& tau,
                                  double rank_tol = 1e-12) {
  if (tau.rows() != tau.cols() || !is_symmetric(tau)) {
    throw DomainError("pair_spectrum: tau is not complex symmetric");
  }
  PairSpectrum out;
  out.lambdas = singular_values(tau);
  for (Eigen::Index i = 0; i < out.lambdas.size(); ++i) {
    if (out.lambdas(i) > rank_tol) ++out.l_prime;
  }
  return out;
}

inline double a_value(const RealVector& lambdas, std::size_t l_prime) {
  if (l_prime == 0) return 0.0;
  double a = lambdas(0);
  for (std::size_t i = 1; i < l_prime; ++i) {
    a -= lambdas(static_cast<Eigen::Index>(i));
  }
  return a;
}

inline SpectralReport spectral_report(const ScaledEigvecs& x,
                                      const PairOperator& b) {
  SpectralReport rep;
  rep.pair = b.pair;
  rep.tau = tau_matrix(x, b);
  auto spectrum = pair_spectrum(rep.tau, x.rank_tol);
  rep.lambdas = std::move(spectrum.lambdas);
  rep.l_prime = spectrum.l_prime;
  rep.a_value = a_value(rep.lambdas, rep.l_prime);
  return rep;
}

/// One report per pair, in enumerate_pairs order.
inline std::vector<SpectralReport> spectral_reports(const ScaledEigvecs& x,
                                                    std::size_t m,
                                                    std::size_t n) {
  std::vector<SpectralReport> reports;
  for (const auto& op : build_all_pair_operators(m, n)) {
    reports.push_back(spectral_report(x, op));
  }
  return reports;
}

/// Partial transpose on subsystem 1 or 2 of an (m n) x (m n) operator.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t m,
                                       std::size_t n, int subsystem) {
  if (subsystem != 1 && subsystem != 2) {
    throw DomainError("partial_transpose: subsystem must be 1 or 2");
  }
  const auto d = static_cast<Eigen::Index>(m * n);
  if (rho.rows() != d || rho.cols() != d) {
    throw DomainError("partial_transpose: matrix size does not match m*n");
  }
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix out(d, d);
  for (Eigen::Index a = 0; a < mi; ++a) {
    for (Eigen::Index b = 0; b < ni; ++b) {
      for (Eigen::Index a2 = 0; a2 < mi; ++a2) {
        for (Eigen::Index b2 = 0; b2 < ni; ++b2) {
          const Complex v = subsystem == 2 ? rho(a * ni + b2, a2 * ni + b)
                                           : rho(a2 * ni + b, a * ni + b2);
          out(a * ni + b, a2 * ni + b2) = v;
        }
      }
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                       int subsystem) {
  return partial_transpose(rho.matrix(), rho.m(), rho.n(), subsystem);
}

inline double ppt_min_eigenvalue(const DensityMatrix& rho) {
  const ComplexMatrix pt = partial_transpose(rho, 2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// psi reshaped to its m x n coefficient matrix A_ab.
inline ComplexMatrix coefficient_matrix(const ComplexVector& psi, std::size_t m,
                                        std::size_t n) {
  if (static_cast<std::size_t>(psi.size()) != m * n) {
    throw DomainError("coefficient_matrix: vector length does not match m*n");
  }
  ComplexMatrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      a(i, j) = psi(i * a.cols() + j);
    }
  }
  return a;
}

/// sigma_2(A) / ||A||_F, or 0 for a single row/column.
inline double product_defect(const ComplexVector& psi, std::size_t m,
                             std::size_t n) {
  const ComplexMatrix a = coefficient_matrix(psi, m, n);
  const double norm = a.norm();
  if (!(norm > 0.0)) {
    throw DomainError("product_defect: zero vector");
  }
  const RealVector sv = singular_values(a);
  return sv.size() > 1 ? sv(1) / norm : 0.0;
}

/// True iff the coefficient matrix has numerical rank one. Unlike the pair
/// residuals this is not fooled by a vanishing first row or column.
inline bool pure_product_check(const ComplexVector& psi, std::size_t m,
                               std::size_t n, double tol = 1e-8) {
  return product_defect(psi, m, n) <= tol;
}

/// a^1 of a two-qubit state (the Wootters combination l1 - l2 - l3 - l4).
inline double pair_concurrence_2x2(const DensityMatrix& rho,
                                   double rank_tol = 1e-12) {
  if (rho.m() != 2 || rho.n() != 2) {
    throw DomainError("pair_concurrence_2x2: state must be 2 x 2");
  }
  const ScaledEigvecs x = scaled_eigvecs(rho, rank_tol);
  return spectral_report(x, build_pair_operator(2, 2, {2, 2})).a_value;
}

}  // namespace sepcheck
