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

// Explicit single-pair decompositions.
//
// In the Takagi basis |y_j> of a pair (<y_i|B|y_j*> = lambda_i d_ij) the
// ensemble
//   |z_i> = (1/sqrt(N)) sum_j s_ij e^{i theta_j} |y_j>,   i = 1..N,
// with s an N x l sign matrix of mutually orthogonal columns reproduces rho,
// and every member has <z_i|B|z_i*> = (1/N) conj(sum_j lambda_j e^{2 i theta_j}).
// Choosing 2 theta_j as the angles of a closed polygon with side lengths
// lambda_j makes all members parallel on that pair. The polygon closes iff
// lambda_1 <= sum_{j>1} lambda_j, i.e. a <= 0.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "sepcheck/criterion.hpp"

namespace sepcheck {

struct CanonicalBasis {
  PairIndex pair;
  std::vector<ComplexVector> vectors;  // |y_i>
  RealVector lambdas;                  // descending
  ComplexMatrix v;                     // Takagi unitary, y = X v^H
};

struct PureEnsemble {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<ComplexVector> members;

  ComplexMatrix density() const {
    const auto d = static_cast<Eigen::Index>(m * n);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (const auto& z : members) rho += z * z.adjoint();
    return rho;
  }
};

/// N x l matrix of +-1 with pairwise orthogonal columns; N = 4k.
struct SignMatrix {
  Eigen::MatrixXi entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  int operator()(Eigen::Index r, Eigen::Index c) const { return entries(r, c); }
};

struct EnsembleCheck {
  double reconstruction_error = 0.0;  // ||sum |z><z| - rho||_F
  double max_pair_residual = 0.0;     // max over members and pairs of |c|
  std::vector<double> product_defect;  // sigma_2 / ||A|| per member
};

struct DecomposeOptions {
  double rank_tol = 1e-12;
  double boundary_tol = 1e-9;
};

inline CanonicalBasis canonical_basis(const ScaledEigvecs& x,
                                      const PairOperator& b) {
  if (x.l() == 0) {
    throw DomainError("canonical_basis: empty eigenbasis");
  }
  const TakagiResult tk = takagi(tau_matrix(x, b));
  const ComplexMatrix y = x.as_matrix() * tk.v.adjoint();
  CanonicalBasis out;
  out.pair = b.pair;
  out.lambdas = tk.lambdas;
  out.v = tk.v;
  for (Eigen::Index i = 0; i < y.cols(); ++i) out.vectors.push_back(y.col(i));
  return out;
}

namespace detail {

inline double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

}  // namespace detail

/// Phases phi_j with |sum_j lengths_j e^{i phi_j}| ~ 0.
///
/// Lengths are placed largest first. At each step the remaining target w and
/// the next length mu leave a remainder that must realize w - mu e^{i phi};
/// the remainder can realize any magnitude in [max(0, 2 max - sum), sum], so
/// the magnitude nearest |t - mu| is chosen and the (mu, r, t) triangle fixes
/// phi. `slack` is the tolerated excess of the largest length over the rest
/// (default 1e-12 of the total).
inline std::vector<double> close_polygon(const std::vector<double>& lengths,
                                         std::optional<double> slack = {}) {
  std::vector<double> phases(lengths.size(), 0.0);
  double total = 0.0;
  for (double len : lengths) {
    if (!(len >= 0.0) || !std::isfinite(len)) {
      throw DomainError("close_polygon: lengths must be finite and nonnegative");
    }
    total += len;
  }
  if (total == 0.0) return phases;

  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lengths[a] > lengths[b];
  });
  std::vector<double> sorted;
  for (auto idx : order) {
    if (lengths[idx] > 0.0) sorted.push_back(lengths[idx]);
  }
  // suffix[i] = sum of sorted[i..]
  std::vector<double> suffix(sorted.size() + 1, 0.0);
  for (std::size_t i = sorted.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + sorted[i];
  }

  const double tol = slack.value_or(1e-12 * total);
  if (sorted.front() > suffix[1] + tol) {
    throw InfeasibleError("close_polygon: largest length exceeds the sum of the others");
  }

  Complex target(0.0, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double mu = sorted[i];
    const double t = std::abs(target);
    const double frame = t > 0.0 ? std::arg(target) : 0.0;
    double phi = frame;
    if (i + 1 < sorted.size()) {
      const double hi = suffix[i + 1];
      const double lo = std::max(0.0, 2.0 * sorted[i + 1] - hi);
      const double want = std::abs(t - mu);
      const double r = std::clamp(want, lo, hi);
      if (r != want && t > 0.0) {
        // Genuine triangle with sides mu, r, t; apex below the target axis.
        const double x =
            std::clamp((t * t + (mu - r) * (mu + r)) / (2.0 * t), -mu, mu);
        const double y = std::sqrt(std::max(0.0, (mu - x) * (mu + x)));
        phi = frame + std::arg(Complex(x, -y));
      }
      // Otherwise the triangle is degenerate and mu points along the target.
    }
    const std::size_t original = order[i];
    phases[original] = detail::wrap_phase(phi);
    target -= std::polar(mu, phi);
  }
  return phases;
}

/// Rows 1..4k, columns 1..l of the sign matrix
///   s(r, j) = (-1)^popcount(bitrev(r - 1) & (j - 1)),
/// with bit reversal over log2(4k) bits. 4k must be a power of two.
inline SignMatrix sign_matrix(std::size_t k, std::size_t l) {
  const std::size_t rows = 4 * k;
  if (k == 0 || !std::has_single_bit(rows)) {
    throw DomainError("sign_matrix: 4k must be a power of two");
  }
  if (l < 1 || rows < l) {
    throw DomainError("sign_matrix: requires 1 <= l <= 4k");
  }
  const int bits = std::countr_zero(rows);
  auto bitrev = [bits](std::uint64_t v) {
    std::uint64_t out = 0;
    for (int b = 0; b < bits; ++b) {
      out = (out << 1) | ((v >> b) & 1U);
    }
    return out;
  };
  SignMatrix s;
  s.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(l));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint64_t rev = bitrev(r);
    for (std::size_t j = 0; j < l; ++j) {
      s.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          (std::popcount(rev & j) % 2 == 0) ? 1 : -1;
    }
  }
  return s;
}

/// Smallest power of two >= max(4, l), expressed as k = N / 4.
inline std::size_t minimal_sign_k(std::size_t l) {
  return std::bit_ceil(std::max<std::size_t>(4, l)) / 4;
}

/// Transformation u (N x l) with z_i = sum_j u_ij |x_j> for the single-pair
/// construction; u has orthonormal columns.
inline ComplexMatrix single_pair_transformation(
    const ScaledEigvecs& x, const PairOperator& b,
    std::optional<std::size_t> k = {}, DecomposeOptions opts = {}) {
  const CanonicalBasis basis = canonical_basis(x, b);
  std::size_t l_prime = 0;
  for (Eigen::Index i = 0; i < basis.lambdas.size(); ++i) {
    if (basis.lambdas(i) > x.rank_tol) ++l_prime;
  }
  const double a = a_value(basis.lambdas, l_prime);
  if (a > opts.boundary_tol) {
    throw CriterionError("single_pair_decomposition: a = " + std::to_string(a) +
                         " > 0 for the requested pair");
  }
  const std::size_t l = x.l();
  const std::size_t kk = k.value_or(minimal_sign_k(l));
  const SignMatrix signs = sign_matrix(kk, l);

  std::vector<double> lengths(basis.lambdas.data(),
                              basis.lambdas.data() + basis.lambdas.size());
  for (std::size_t j = l_prime; j < lengths.size(); ++j) lengths[j] = 0.0;
  const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  const std::vector<double> phi =
      close_polygon(lengths, std::max(opts.boundary_tol, 1e-12 * total));

  const auto rows = signs.rows();
  const auto cols = static_cast<Eigen::Index>(l);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  ComplexMatrix c(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex phase = std::polar(1.0, 0.5 * phi[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < rows; ++i) {
      c(i, j) = scale * static_cast<double>(signs(i, j)) * phase;
    }
  }
  return c * basis.v.conjugate();
}

/// Members z_i = sum_j u_ij |x_j> for a transformation u (k x l).
inline PureEnsemble ensemble_from_transformation(const ComplexMatrix& u,
                                                 const ScaledEigvecs& x,
                                                 std::size_t m, std::size_t n) {
  if (static_cast<std::size_t>(u.cols()) != x.l()) {
    throw DomainError("ensemble_from_transformation: u has wrong column count");
  }
  const ComplexMatrix z = x.as_matrix() * u.transpose();
  PureEnsemble e;
  e.m = m;
  e.n = n;
  for (Eigen::Index i = 0; i < z.cols(); ++i) e.members.push_back(z.col(i));
  return e;
}

/// Explicit ensemble in which every member is parallel on pair `pair_label`
/// (1-based position in enumerate_pairs).
inline PureEnsemble single_pair_decomposition(
    const ScaledEigvecs& x, std::size_t m, std::size_t n,
    std::size_t pair_label, std::optional<std::size_t> k = {},
    DecomposeOptions opts = {}) {
  const auto pairs = enumerate_pairs(m, n);
  if (pair_label < 1 || pair_label > pairs.size()) {
    throw DomainError("single_pair_decomposition: pair label out of range");
  }
  const PairOperator b = build_pair_operator(m, n, pairs[pair_label - 1]);
  return ensemble_from_transformation(single_pair_transformation(x, b, k, opts),
                                      x, m, n);
}

inline PureEnsemble single_pair_decomposition(const DensityMatrix& rho,
                                              std::size_t pair_label,
                                              std::optional<std::size_t> k = {},
                                              DecomposeOptions opts = {}) {
  return single_pair_decomposition(scaled_eigvecs(rho, opts.rank_tol), rho.m(),
                                   rho.n(), pair_label, k, opts);
}

inline EnsembleCheck verify_ensemble(const PureEnsemble& e,
                                     const ComplexMatrix& rho,
                                     const std::vector<PairIndex>& pairs) {
  EnsembleCheck check;
  check.reconstruction_error = (e.density() - rho).norm();
  std::vector<PairOperator> ops;
  for (const auto& p : pairs) ops.push_back(build_pair_operator(e.m, e.n, p));
  for (const auto& z : e.members) {
    for (const auto& op : ops) {
      check.max_pair_residual =
          std::max(check.max_pair_residual, std::abs(pair_residual(op, z)));
    }
    check.product_defect.push_back(z.norm() > 0.0 ? product_defect(z, e.m, e.n)
                                                  : 0.0);
  }
  return check;
}

}  // namespace sepcheck
