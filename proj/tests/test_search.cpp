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

#include <random>

#include "sepcheck/search.hpp"
#include "sepcheck/states.hpp"
#include "test_util.hpp"

namespace sepcheck {
namespace {

namespace tu = testing_util;

// F evaluated member by member from explicit |z_i>.
double direct_residual(const ComplexMatrix& u, const ScaledEigvecs& x, std::size_t m,
                       std::size_t n) {
  const ComplexMatrix z = x.as_matrix() * u.transpose();
  double f = 0.0;
  for (const auto& op : build_all_pair_operators(m, n)) {
    for (Eigen::Index i = 0; i < z.cols(); ++i) {
      f += std::norm(pair_residual(op, z.col(i)));
    }
  }
  return f;
}

ScaledEigvecs reference_basis() {
  return scaled_eigvecs(bound_2x4(), 1e-12, bound_2x4_reference_basis());
}

TEST(JointResidual, IdentityOnReferenceBasis) {
  const auto x = reference_basis();
  const auto taus = all_taus(x, 2, 4);
  const ComplexMatrix u = ComplexMatrix::Identity(5, 5);
  EXPECT_NEAR(joint_residual(u, taus), 1.0 / 16.0, 1e-15);
  EXPECT_NEAR(direct_residual(u, x, 2, 4), 1.0 / 16.0, 1e-15);
}

TEST(JointResidual, ProductPureState) {
  ComplexVector psi = ComplexVector::Zero(6);
  psi(0) = 1.0;
  const auto x = scaled_eigvecs(pure_state(2, 3, psi));
  const auto taus = all_taus(x, 2, 3);
  EXPECT_EQ(joint_residual(random_orthonormal_columns(4, 1, 3), taus), 0.0);
}

TEST(JointResidual, BellSingleColumn) {
  const auto x = scaled_eigvecs(bell());
  const auto taus = all_taus(x, 2, 2);
  ComplexMatrix phase(1, 1);
  phase(0, 0) = std::polar(1.0, 0.3);
  EXPECT_NEAR(joint_residual(phase, taus), 1.0, 1e-15);
  // k > 1 splits the state into rescaled copies: F = sum |u_i|^4.
  const ComplexMatrix u = random_orthonormal_columns(3, 1, 2);
  EXPECT_NEAR(joint_residual(u, taus), u.cwiseAbs2().array().square().sum(), 1e-15);
}

TEST(JointResidual, MatchesMemberResiduals) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t m = 2 + seed % 2, n = 2 + (seed / 2) % 3;
    const DensityMatrix rho = random_density(m, n, 1 + seed % 5, seed);
    const auto x = scaled_eigvecs(rho);
    const ComplexMatrix u = random_orthonormal_columns(x.l() + seed % 3, x.l(), seed);
    EXPECT_NEAR(joint_residual(u, all_taus(x, m, n)), direct_residual(u, x, m, n), 1e-14);
  }
}

TEST(JointResidual, Errors) {
  const auto taus = all_taus(reference_basis(), 2, 4);
  EXPECT_THROW(joint_residual(ComplexMatrix::Identity(4, 4), taus), DomainError);
  EXPECT_THROW(joint_residual(2.0 * ComplexMatrix::Identity(5, 5), taus), DomainError);
}

ComplexMatrix random_direction(Eigen::Index k, Eigen::Index l, std::mt19937_64& gen) {
  return tu::random_complex(k, l, gen);
}

// <G, D> in the real inner product Re tr(G^H D).
double real_inner(const ComplexMatrix& g, const ComplexMatrix& d) {
  return (g.adjoint() * d).trace().real();
}

TEST(ResidualGradient, CentralDifferences) {
  std::mt19937_64 gen(77);
  for (int point = 0; point < 20; ++point) {
    const std::size_t m = 2, n = 2 + point % 2;
    const DensityMatrix rho = random_density(m, n, 2 + point % 3, 100 + point);
    const auto x = scaled_eigvecs(rho);
    const auto taus = all_taus(x, m, n);
    const auto l = static_cast<Eigen::Index>(x.l());
    const ComplexMatrix u = random_orthonormal_columns(l + 1, l, point);
    const ComplexMatrix g = residual_gradient(u, taus);
    const ComplexMatrix d = random_direction(l + 1, l, gen);
    const double h = 1e-5;
    const double fd = (detail::objective(u + h * d, taus) - detail::objective(u - h * d, taus)) /
                      (2.0 * h);
    const double an = real_inner(g, d);
    EXPECT_NEAR(an, fd, 1e-6 * std::max(1.0, std::abs(fd))) << "point " << point;
  }
}

TEST(ResidualGradient, VanishesAtZero) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  const auto taus = all_taus(scaled_eigvecs(pure_state(2, 2, psi)), 2, 2);
  EXPECT_LE(residual_gradient(ComplexMatrix::Identity(1, 1), taus).norm(), 1e-10);
}

TEST(ResidualGradient, RowPermutationEquivariance) {
  const DensityMatrix rho = random_density(2, 3, 3, 5);
  const auto taus = all_taus(scaled_eigvecs(rho), 2, 3);
  const ComplexMatrix u = random_orthonormal_columns(5, 3, 8);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
  perm.indices() << 3, 0, 4, 1, 2;
  const ComplexMatrix pu = perm * u;
  EXPECT_NEAR(joint_residual(pu, taus), joint_residual(u, taus), 1e-15);
  EXPECT_LE((residual_gradient(pu, taus) - perm * residual_gradient(u, taus)).norm(), 1e-14);
}

TEST(Descend, MonotoneAndFeasible) {
  const DensityMatrix rho = random_separable(2, 3, 4, 9);
  const auto x = scaled_eigvecs(rho);
  const auto taus = all_taus(x, 2, 3);
  const ComplexMatrix start = random_orthonormal_columns(2 * x.l(), x.l(), 1);
  double prev = detail::objective(start, taus);
  SearchConfig cfg;
  for (std::size_t iters = 1; iters <= 40; ++iters) {
    cfg.max_iters = iters;
    const auto res = detail::descend(start, taus, cfg);
    EXPECT_LE(res.residual, prev);
    EXPECT_LE(orthonormality_error(res.u), 1e-12);
    EXPECT_NEAR(res.residual, joint_residual(res.u, taus), 1e-15);
    prev = res.residual;
  }
}

TEST(KSchedule, DoublesUpToCap) {
  SearchConfig cfg;
  EXPECT_EQ(k_schedule(3, 2, 2, cfg), (std::vector<std::size_t>{3, 6, 12, 16}));
  EXPECT_EQ(k_schedule(4, 2, 2, cfg), (std::vector<std::size_t>{4, 8, 16}));
  cfg.k_max = 10;
  EXPECT_EQ(k_schedule(5, 2, 4, cfg), (std::vector<std::size_t>{5, 10}));
  cfg.k = 7;
  EXPECT_EQ(k_schedule(5, 2, 4, cfg), (std::vector<std::size_t>{7}));
  cfg.k = 4;
  EXPECT_THROW(k_schedule(5, 2, 4, cfg), DomainError);
}

TEST(Minimize, RandomProductMixture) {
  const DensityMatrix rho = random_separable(2, 2, 2, 0);
  const SearchReport rep = minimize(rho);
  EXPECT_LE(rep.best_residual, 1e-10);
  ASSERT_TRUE(rep.certificate);
  EXPECT_LE((rep.certificate->density() - rho.matrix()).norm(), 1e-8);
  EXPECT_NEAR(rep.best_residual, joint_residual(rep.best_u, all_taus(scaled_eigvecs(rho), 2, 2)),
              1e-12);
}

TEST(Minimize, WernerSeparable) {
  const DensityMatrix rho = werner_2x2(0.2);
  const SearchReport rep = minimize(rho);
  ASSERT_TRUE(rep.certificate);
  EXPECT_LE((rep.certificate->density() - rho.matrix()).norm(), 1e-8);
  EXPECT_NEAR(rep.certificate->total_weight(), 1.0, 1e-10);
}

TEST(Minimize, BoundStateFindsProductEnsemble) {
  const SearchReport rep = minimize(reference_basis(), 2, 4);
  EXPECT_LE(rep.best_residual, 1e-10);
  ASSERT_TRUE(rep.certificate);
  EXPECT_LE((rep.certificate->density() - bound_2x4().matrix()).norm(), 1e-8);
}

TEST(Minimize, EntangledStateNeverCertifies) {
  SearchConfig cfg;
  cfg.restarts = 3;
  const SearchReport rep = minimize(werner_2x2(0.6), cfg);
  EXPECT_FALSE(rep.certificate);
  EXPECT_GT(rep.best_residual, 1e-4);
}

TEST(Minimize, Deterministic) {
  const DensityMatrix rho = random_separable(2, 3, 3, 2);
  SearchConfig cfg;
  cfg.seed = 11;
  const auto a = minimize(rho, cfg);
  const auto b = minimize(rho, cfg);
  EXPECT_EQ(a.best_u, b.best_u);
  EXPECT_EQ(a.best_residual, b.best_residual);
  EXPECT_EQ(a.iterations_used, b.iterations_used);
  EXPECT_EQ(a.restarts_used, b.restarts_used);
}

TEST(ExtractCertificate, ProductState) {
  ComplexMatrix ra(2, 2), rb(2, 2);
  ra << 0.6, 0.1, 0.1, 0.4;
  rb << 0.5, Complex(0.0, 0.2), Complex(0.0, -0.2), 0.5;
  const DensityMatrix rho = product(ra, rb);
  const auto x = scaled_eigvecs(rho);
  const auto out = extract_certificate(ComplexMatrix::Identity(4, 4), x, 2, 2);
  ASSERT_TRUE(out);
  EXPECT_EQ(out.certificate->terms.size(), 4u);
  EXPECT_LE((out.certificate->density() - rho.matrix()).norm(), 1e-12);
}

TEST(ExtractCertificate, BellFailsAtFirstMember) {
  const auto x = scaled_eigvecs(bell());
  const auto out = extract_certificate(ComplexMatrix::Identity(1, 1), x, 2, 2);
  EXPECT_FALSE(out);
  ASSERT_TRUE(out.failed_member);
  EXPECT_EQ(*out.failed_member, 1u);
}

TEST(EmitConstraints, ReferenceBasisRelations) {
  const ConstraintSystem sys = emit_constraints(reference_basis(), 2, 4);
  ASSERT_EQ(sys.pairs.size(), 3u);
  EXPECT_EQ(sys.l, 5u);
  const std::string expected =
      "pair 1: 2 2\n"
      "2 4 1.0000000000000000e+00 0.0000000000000000e+00\n"
      "3 3 -1.0000000000000000e+00 0.0000000000000000e+00\n"
      "pair 2: 2 3\n"
      "2 5 1.0000000000000000e+00 0.0000000000000000e+00\n"
      "3 4 -1.0000000000000000e+00 0.0000000000000000e+00\n"
      "pair 3: 2 4\n"
      "1 2 1.0000000000000000e+00 0.0000000000000000e+00\n"
      "3 5 -1.0000000000000000e+00 0.0000000000000000e+00\n";
  EXPECT_EQ(format_constraints(sys), expected);
  // Raw coefficients are (2 - delta) tau.
  EXPECT_NEAR(std::abs(sys.pairs[0].terms[0].w - Complex(0.25)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sys.pairs[0].terms[1].w - Complex(-0.25)), 0.0, 1e-15);
}

TEST(EmitConstraints, SubstitutionReproducesResiduals) {
  const DensityMatrix rho = random_density(3, 3, 4, 21);
  const auto x = scaled_eigvecs(rho);
  const ConstraintSystem sys = emit_constraints(x, 3, 3);
  const ComplexMatrix u = random_orthonormal_columns(6, 4, 5);
  const ComplexMatrix z = x.as_matrix() * u.transpose();
  for (const auto& pc : sys.pairs) {
    const auto op = build_pair_operator(3, 3, pc.pair);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const Complex direct = pair_residual(op, z.col(i));
      EXPECT_NEAR(std::abs(pc.evaluate(u.row(i).transpose()) - direct), 0.0, 1e-12);
    }
  }
}

TEST(EmitConstraints, DegenerateCases) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  const auto product_sys = emit_constraints(scaled_eigvecs(pure_state(2, 2, psi)), 2, 2);
  ASSERT_EQ(product_sys.pairs.size(), 1u);
  EXPECT_TRUE(product_sys.pairs[0].terms.empty());

  const auto bell_sys = emit_constraints(scaled_eigvecs(bell()), 2, 2);
  ASSERT_EQ(bell_sys.pairs[0].terms.size(), 1u);
  EXPECT_NEAR(std::abs(bell_sys.pairs[0].terms[0].w), 1.0, 1e-15);
}

}  // namespace
}  // namespace sepcheck
