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

// Dense complex linear-algebra kernel: Hermitian eigendecomposition, Takagi
// factorization of complex symmetric matrices, singular values and
// orthonormal-column utilities.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "sepcheck/errors.hpp"

namespace sepcheck {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
/// Each eigenvector is gauge-fixed so that its largest-magnitude component
/// is real and positive.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Takagi factorization S = v^H diag(lambdas) conj(v) of a complex symmetric
/// matrix S; equivalently v S v^T = diag(lambdas) with v unitary.
struct TakagiResult {
  ComplexMatrix v;
  RealVector lambdas;
};

/// Relative tolerance scale used for symmetry/Hermiticity preconditions.
inline double relative_scale(const ComplexMatrix& m) { return 1.0 + m.norm(); }

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DomainError(std::string(what) + ": matrix must be square and non-empty");
  }
}

inline bool is_hermitian(const ComplexMatrix& h, double tol = 1e-10) {
  return h.rows() == h.cols() &&
         (h - h.adjoint()).norm() <= tol * relative_scale(h);
}

inline bool is_symmetric(const ComplexMatrix& s, double tol = 1e-10) {
  return s.rows() == s.cols() &&
         (s - s.transpose()).norm() <= tol * relative_scale(s);
}

/// ||u^H u - I||_F.
inline double orthonormality_error(const ComplexMatrix& u) {
  return (u.adjoint() * u -
          ComplexMatrix::Identity(u.cols(), u.cols()))
      .norm();
}

/// Kronecker product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

namespace detail {

// Multiply each column by a phase so its largest-magnitude entry is real
// positive. Ties resolve to the lowest index.
inline void fix_column_phases(ComplexMatrix& vecs) {
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
      const double a = std::abs(vecs(i, j));
      if (a > best + 1e-14) {
        best = a;
        arg = i;
      }
    }
    if (best > 0.0) {
      vecs.col(j) *= std::conj(vecs(arg, j)) / best;
    }
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix.
inline HermitianEig hermitian_eig(const ComplexMatrix& h,
                                  double herm_tol = 1e-10) {
  require_square(h, "hermitian_eig");
  if (!is_hermitian(h, herm_tol)) {
    throw DomainError("hermitian_eig: matrix is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw DomainError("hermitian_eig: eigensolver did not converge");
  }
  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  detail::fix_column_phases(out.eigenvectors);
  return out;
}

/// Singular values, descending.
inline RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

/// Takagi factorization through the real symmetric embedding
/// [[Re S, Im S], [Im S, -Re S]]. A real eigenvector (p, q) with eigenvalue
/// s gives x = p + i q with S conj(x) = s x; the -s partner is i x. Taking
/// eigenvectors from the top of the spectrum and discarding those that are
/// complex-dependent on the ones already kept yields a unitary basis even when
/// lambdas are degenerate or zero.
inline TakagiResult takagi(const ComplexMatrix& s, double sym_tol = 1e-10) {
  require_square(s, "takagi");
  if (!is_symmetric(s, sym_tol)) {
    throw DomainError("takagi: matrix is not complex symmetric");
  }
  const Eigen::Index l = s.rows();
  const ComplexMatrix sym = 0.5 * (s + s.transpose());
  const Eigen::MatrixXd re = sym.real();
  const Eigen::MatrixXd im = sym.imag();

  Eigen::MatrixXd embed(2 * l, 2 * l);
  embed << re, im, im, -re;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed);
  if (solver.info() != Eigen::Success) {
    throw DomainError("takagi: eigensolver did not converge");
  }

  ComplexMatrix basis(l, l);
  Eigen::Index kept = 0;
  for (Eigen::Index idx = 2 * l - 1; idx >= 0 && kept < l; --idx) {
    const Eigen::VectorXd w = solver.eigenvectors().col(idx);
    ComplexVector x(l);
    for (Eigen::Index i = 0; i < l; ++i) x(i) = Complex(w(i), w(l + i));
    for (int pass = 0; pass < 2 && kept > 0; ++pass) {
      const auto prev = basis.leftCols(kept);
      x -= prev * (prev.adjoint() * x);
    }
    const double norm = x.norm();
    if (norm > 0.5) {
      basis.col(kept++) = x / norm;
    }
  }
  if (kept != l) {
    throw DomainError("takagi: failed to assemble a unitary basis");
  }

  ComplexMatrix v = basis.adjoint();
  const ComplexMatrix diag = v * sym * v.transpose();
  RealVector lambdas(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    const Complex d = diag(i, i);
    lambdas(i) = std::abs(d);
    if (lambdas(i) > 0.0) {
      v.row(i) *= std::polar(1.0, -0.5 * std::arg(d));
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(l));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return lambdas(a) > lambdas(b);
                   });
  TakagiResult out;
  out.v.resize(l, l);
  out.lambdas.resize(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    out.v.row(i) = v.row(order[static_cast<std::size_t>(i)]);
    out.lambdas(i) = lambdas(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Orthonormalize the columns of m by Gram-Schmidt with one
/// reorthogonalization pass. Equivalent to the Q factor of a QR
/// decomposition with positive diagonal R, so the nested column spans are
/// preserved.
inline ComplexMatrix reorthonormalize(const ComplexMatrix& m,
                                      double rank_tol = 1e-10) {
  if (m.rows() < m.cols()) {
    throw DegenerateStepError("reorthonormalize: more columns than rows");
  }
  ComplexMatrix q(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    ComplexVector v = m.col(j);
    const double norm0 = v.norm();
    if (!(norm0 > 0.0) || !std::isfinite(norm0)) {
      throw DegenerateStepError("reorthonormalize: zero or non-finite column");
    }
    for (int pass = 0; pass < 2 && j > 0; ++pass) {
      const auto prev = q.leftCols(j);
      v -= prev * (prev.adjoint() * v);
    }
    const double norm = v.norm();
    if (norm <= rank_tol * norm0) {
      throw DegenerateStepError("reorthonormalize: columns are linearly dependent");
    }
    q.col(j) = v / norm;
  }
  return q;
}

/// k x l complex matrix with orthonormal columns, deterministic per seed.
inline ComplexMatrix random_orthonormal_columns(std::size_t k, std::size_t l,
                                                std::uint64_t seed) {
  if (l < 1 || k < l) {
    throw DomainError("random_orthonormal_columns: requires k >= l >= 1");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return reorthonormalize(g);
}

}  // namespace sepcheck
