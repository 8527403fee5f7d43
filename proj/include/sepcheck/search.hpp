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

// Numerical search for an ensemble that is parallel on every pair at once.
//
// Every ensemble of rho is z_i = sum_j u_ij |x_j> with u (k x l) having
// orthonormal columns, and the pair residual of member i is
//   <z_i| B^r |z_i*> = (u* tau^r u^H)_ii = conj((u conj(tau^r) u^T)_ii).
// The search minimizes F(u) = sum_r sum_i |(u conj(tau^r) u^T)_ii|^2 over such u
// by Riemannian gradient descent with Armijo backtracking and a
// Gram-Schmidt retraction. F = 0 does not by itself prove separability when
// a member has a vanishing anchor row/column, so success is only reported
// once every member passes the rank-one test.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepcheck/criterion.hpp"
#include "sepcheck/format.hpp"

namespace sepcheck {

struct SearchConfig {
  std::optional<std::size_t> k;      // fixed ensemble size; default l, 2l, 4l, ...
  std::optional<std::size_t> k_max;  // schedule cap; default (mn)^2
  std::size_t restarts = 50;
  std::size_t max_iters = 2000;
  double armijo = 1e-4;
  double backtrack = 0.5;
  std::size_t max_backtracks = 60;
  double tol_residual = 1e-10;   // success threshold on F
  double stop_residual = 1e-28;  // a restart stops once F is below this
  std::uint64_t seed = 0;
  double cert_tol = 1e-6;        // sigma_2 / ||A|| bound for members
  double rank_tol = 1e-12;
  double polish_below = 1e-6;    // Levenberg-Marquardt polish once F is below this
  std::size_t polish_iters = 40;
};

/// rho = sum_i weight_i |alpha_i><alpha_i| (x) |beta_i><beta_i|.
struct SeparableCertificate {
  struct Term {
    double weight = 0.0;
    ComplexVector alpha;  // unit vector in C^m
    ComplexVector beta;   // unit vector in C^n
  };
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Term> terms;

  ComplexMatrix density() const {
    const auto d = static_cast<Eigen::Index>(m * n);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (const auto& t : terms) {
      const ComplexVector psi = kron(t.alpha, t.beta);
      rho += t.weight * psi * psi.adjoint();
    }
    return rho;
  }

  double total_weight() const {
    double w = 0.0;
    for (const auto& t : terms) w += t.weight;
    return w;
  }
};

struct CertificateOutcome {
  std::optional<SeparableCertificate> certificate;
  std::optional<std::size_t> failed_member;  // 1-based
  std::string reason;

  explicit operator bool() const { return certificate.has_value(); }
};

struct SearchReport {
  double best_residual = std::numeric_limits<double>::infinity();
  ComplexMatrix best_u;
  std::size_t k = 0;
  std::size_t iterations_used = 0;
  std::size_t restarts_used = 0;
  std::optional<SeparableCertificate> certificate;
  std::string certificate_failure;
};

struct ConstraintTerm {
  std::size_t j = 1;   // 1-based, j <= jp
  std::size_t jp = 1;
  Complex w;           // (2 - delta_{j jp}) tau_{j jp}
};

struct PairConstraints {
  std::size_t label = 1;  // r, 1-based
  PairIndex pair;
  ComplexMatrix tau;
  std::vector<ConstraintTerm> terms;

  /// sum w u*_j u*_jp for one row of u; equals <z_i| B |z_i*>.
  Complex evaluate(const ComplexVector& row) const {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms) {
      acc += t.w * std::conj(row(static_cast<Eigen::Index>(t.j - 1))) *
             std::conj(row(static_cast<Eigen::Index>(t.jp - 1)));
    }
    return acc;
  }
};

struct ConstraintSystem {
  std::size_t l = 0;
  std::vector<PairConstraints> pairs;
};

namespace detail {

inline void check_shapes(const ComplexMatrix& u,
                         const std::vector<ComplexMatrix>& taus) {
  for (const auto& tau : taus) {
    if (tau.rows() != u.cols() || tau.cols() != u.cols()) {
      throw DomainError("search: tau size does not match the columns of u");
    }
  }
}

// F(u) without the orthonormality precondition.
inline double objective(const ComplexMatrix& u,
                        const std::vector<ComplexMatrix>& taus) {
  double f = 0.0;
  for (const auto& tau : taus) {
    const ComplexMatrix w = u * tau.conjugate();
    f += w.cwiseProduct(u).rowwise().sum().squaredNorm();
  }
  return f;
}

// Euclidean gradient dF/dRe(u) + i dF/dIm(u) = 4 c_i conj((u conj(tau))_ij)
// with c_i = (u conj(tau) u^T)_ii.
inline ComplexMatrix objective_gradient(const ComplexMatrix& u,
                                        const std::vector<ComplexMatrix>& taus) {
  ComplexMatrix g = ComplexMatrix::Zero(u.rows(), u.cols());
  for (const auto& tau : taus) {
    const ComplexMatrix w = u * tau.conjugate();
    const ComplexVector c = w.cwiseProduct(u).rowwise().sum();
    g += 4.0 * c.asDiagonal() * w.conjugate();
  }
  return g;
}

inline ComplexMatrix project_tangent(const ComplexMatrix& u,
                                     const ComplexMatrix& g) {
  const ComplexMatrix s = u.adjoint() * g;
  return g - u * (0.5 * (s + s.adjoint()));
}

inline void require_orthonormal(const ComplexMatrix& u, double tol) {
  if (orthonormality_error(u) > tol) {
    throw DomainError("search: u does not have orthonormal columns");
  }
}

struct DescentResult {
  ComplexMatrix u;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// One restart of Riemannian gradient descent. Accepted steps satisfy the
// Armijo condition, so the residual is non-increasing.
inline DescentResult descend(ComplexMatrix u,
                             const std::vector<ComplexMatrix>& taus,
                             const SearchConfig& cfg) {
  DescentResult out;
  double f = objective(u, taus);
  ComplexMatrix pg = project_tangent(u, objective_gradient(u, taus));
  ComplexMatrix prev_u, prev_pg;
  double step = 0.0;
  std::size_t iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (f <= cfg.stop_residual) break;
    const double g2 = pg.squaredNorm();
    if (!(g2 > 0.0)) break;

    if (iter == 0) {
      step = 1.0 / std::sqrt(g2);
    } else {
      // Barzilai-Borwein length from the last accepted step.
      const ComplexMatrix s = u - prev_u;
      const ComplexMatrix y = pg - prev_pg;
      const double sy = std::abs(s.cwiseProduct(y.conjugate()).sum().real());
      step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * step;
      step = std::clamp(step, 1e-12, 1e12);
    }

    bool accepted = false;
    for (std::size_t b = 0; b < cfg.max_backtracks; ++b) {
      ComplexMatrix cand;
      try {
        cand = reorthonormalize(u - step * pg);
      } catch (const DegenerateStepError&) {
        step *= cfg.backtrack;
        continue;
      }
      const double fc = objective(cand, taus);
      if (fc <= f - cfg.armijo * step * g2) {
        prev_u = std::move(u);
        prev_pg = std::move(pg);
        u = std::move(cand);
        f = fc;
        pg = project_tangent(u, objective_gradient(u, taus));
        accepted = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (!accepted) break;
  }
  out.u = std::move(u);
  out.residual = f;
  out.iterations = iter;
  return out;
}

// Levenberg-Marquardt on the stacked residuals c_i^r = (u conj(tau^r) u^T)_ii
// and u^H u - I, over the real and imaginary parts of u. Gradient descent
// only converges linearly on the degenerate zero sets of F; this recovers
// fast convergence once descent is close. Returns u unchanged unless the
// retracted result has a lower F.
inline DescentResult polish(const DescentResult& start,
                            const std::vector<ComplexMatrix>& taus,
                            std::size_t max_iters) {
  DescentResult best = start;
  const Eigen::Index k = start.u.rows();
  const Eigen::Index l = start.u.cols();
  const Eigen::Index nvar = 2 * k * l;
  const Eigen::Index npair = static_cast<Eigen::Index>(taus.size());
  const Eigen::Index nres = 2 * k * npair + l * l;
  std::vector<ComplexMatrix> conj_taus;
  for (const auto& t : taus) conj_taus.push_back(t.conjugate());

  auto residuals = [&](const ComplexMatrix& u) {
    Eigen::VectorXd r(nres);
    Eigen::Index row = 0;
    for (const auto& ct : conj_taus) {
      const ComplexVector c = (u * ct).cwiseProduct(u).rowwise().sum();
      for (Eigen::Index i = 0; i < k; ++i) {
        r(row++) = c(i).real();
        r(row++) = c(i).imag();
      }
    }
    const ComplexMatrix g = u.adjoint() * u;
    for (Eigen::Index a = 0; a < l; ++a) {
      r(row++) = g(a, a).real() - 1.0;
      for (Eigen::Index b = a + 1; b < l; ++b) {
        r(row++) = g(a, b).real();
        r(row++) = g(a, b).imag();
      }
    }
    return r;
  };

  auto jacobian = [&](const ComplexMatrix& u) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nres, nvar);
    auto var = [l](Eigen::Index i, Eigen::Index j) { return 2 * (i * l + j); };
    Eigen::Index base = 0;
    for (const auto& ct : conj_taus) {
      const ComplexMatrix w = 2.0 * (u * ct);
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < l; ++j) {
          // d c_i / d Re u_ij = w_ij, d c_i / d Im u_ij = i w_ij.
          jac(base + 2 * i, var(i, j)) = w(i, j).real();
          jac(base + 2 * i + 1, var(i, j)) = w(i, j).imag();
          jac(base + 2 * i, var(i, j) + 1) = -w(i, j).imag();
          jac(base + 2 * i + 1, var(i, j) + 1) = w(i, j).real();
        }
      }
      base += 2 * k;
    }
    // d (u^H u)_ab = conj(du_ia) u_ib + conj(u_ia) du_ib.
    Eigen::Index row = base;
    for (Eigen::Index a = 0; a < l; ++a) {
      for (Eigen::Index b = a; b < l; ++b) {
        for (Eigen::Index i = 0; i < k; ++i) {
          for (int part = 0; part < 2; ++part) {
            const Complex e = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            const Complex d_ia = std::conj(e) * u(i, b);
            const Complex d_ib = std::conj(u(i, a)) * e;
            if (a == b) {
              jac(row, var(i, a) + part) += (d_ia + d_ib).real();
            } else {
              jac(row, var(i, a) + part) += d_ia.real();
              jac(row + 1, var(i, a) + part) += d_ia.imag();
              jac(row, var(i, b) + part) += d_ib.real();
              jac(row + 1, var(i, b) + part) += d_ib.imag();
            }
          }
        }
        row += a == b ? 1 : 2;
      }
    }
    return jac;
  };

  auto apply = [&](const ComplexMatrix& u, const Eigen::VectorXd& delta) {
    ComplexMatrix out = u;
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < l; ++j) {
        const Eigen::Index v = 2 * (i * l + j);
        out(i, j) += Complex(delta(v), delta(v + 1));
      }
    }
    return out;
  };

  ComplexMatrix u = start.u;
  Eigen::VectorXd r = residuals(u);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (std::size_t it = 0; it < max_iters && cost > 0.0; ++it) {
    const Eigen::MatrixXd jac = jacobian(u);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = lhs.ldlt().solve(-jtr);
      const ComplexMatrix cand = apply(u, delta);
      const Eigen::VectorXd rc = residuals(cand);
      const double cc = rc.squaredNorm();
      if (std::isfinite(cc) && cc < cost) {
        u = cand;
        r = rc;
        cost = cc;
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }

  try {
    ComplexMatrix q = reorthonormalize(u);
    const double f = objective(q, taus);
    if (f < best.residual) {
      best.u = std::move(q);
      best.residual = f;
    }
  } catch (const DegenerateStepError&) {
  }
  return best;
}

}  // namespace detail

/// F(u) = sum_r sum_i |<z_i| B^r |z_i*>|^2 for z_i = sum_j u_ij |x_j>.
inline double joint_residual(const ComplexMatrix& u,
                             const std::vector<ComplexMatrix>& taus,
                             double ortho_tol = 1e-8) {
  detail::check_shapes(u, taus);
  detail::require_orthonormal(u, ortho_tol);
  return detail::objective(u, taus);
}

/// Euclidean gradient of joint_residual (real-gradient convention
/// dF/dRe(u) + i dF/dIm(u)).
inline ComplexMatrix residual_gradient(const ComplexMatrix& u,
                                       const std::vector<ComplexMatrix>& taus,
                                       double ortho_tol = 1e-8) {
  detail::check_shapes(u, taus);
  detail::require_orthonormal(u, ortho_tol);
  return detail::objective_gradient(u, taus);
}

/// tau^r for every pair of an m x n system, in enumerate_pairs order.
inline std::vector<ComplexMatrix> all_taus(const ScaledEigvecs& x,
                                           std::size_t m, std::size_t n) {
  std::vector<ComplexMatrix> taus;
  for (const auto& op : build_all_pair_operators(m, n)) {
    taus.push_back(tau_matrix(x, op));
  }
  return taus;
}

/// Members z_i = sum_j u_ij |x_j>, factored into weighted product states.
/// Members of weight below 1e-14 are dropped; every other member must have
/// sigma_2 / ||A|| <= tol.
inline CertificateOutcome extract_certificate(const ComplexMatrix& u,
                                              const ScaledEigvecs& x,
                                              std::size_t m, std::size_t n,
                                              double tol = 1e-6) {
  CertificateOutcome out;
  if (static_cast<std::size_t>(u.cols()) != x.l()) {
    throw DomainError("extract_certificate: u has wrong column count");
  }
  const ComplexMatrix xs = x.as_matrix();
  const ComplexMatrix z = xs * u.transpose();
  SeparableCertificate cert;
  cert.m = m;
  cert.n = n;
  for (Eigen::Index i = 0; i < z.cols(); ++i) {
    const ComplexVector zi = z.col(i);
    const double weight = zi.squaredNorm();
    if (weight <= 1e-14) continue;
    const ComplexMatrix a = coefficient_matrix(zi, m, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector sv = svd.singularValues();
    const double defect = sv.size() > 1 ? sv(1) / a.norm() : 0.0;
    if (defect > tol) {
      out.failed_member = static_cast<std::size_t>(i) + 1;
      out.reason = "member " + std::to_string(i + 1) +
                   " is not a product state (sigma_2/norm = " +
                   format_real(defect) + ")";
      return out;
    }
    SeparableCertificate::Term term;
    term.weight = weight;
    term.alpha = svd.matrixU().col(0);
    term.beta = svd.matrixV().col(0).conjugate();
    cert.terms.push_back(std::move(term));
  }
  const ComplexMatrix rho = xs * xs.adjoint();
  if (std::abs(cert.total_weight() - rho.trace().real()) > 1e-10) {
    out.reason = "certificate weights do not sum to the trace";
    return out;
  }
  if ((cert.density() - rho).norm() > 1e-8) {
    out.reason = "certificate does not reproduce rho within 1e-8";
    return out;
  }
  out.certificate = std::move(cert);
  return out;
}

/// Ensemble sizes tried by minimize: l, 2l, 4l, ... capped at k_max.
inline std::vector<std::size_t> k_schedule(std::size_t l, std::size_t m,
                                           std::size_t n,
                                           const SearchConfig& cfg) {
  if (cfg.k) {
    if (*cfg.k < l) throw DomainError("minimize: k must be >= l");
    return {*cfg.k};
  }
  const std::size_t cap = std::max(l, cfg.k_max.value_or(m * n * m * n));
  std::vector<std::size_t> ks;
  for (std::size_t k = l; k < cap; k *= 2) ks.push_back(k);
  ks.push_back(cap);
  return ks;
}

/// Multi-start search over the k schedule. Restart r of every k starts from
/// random_orthonormal_columns(k, l, seed + r). Stops at the first restart
/// whose minimizer yields a certificate.
inline SearchReport minimize(const ScaledEigvecs& x, std::size_t m,
                             std::size_t n, const SearchConfig& cfg = {}) {
  SearchReport report;
  const std::size_t l = x.l();
  if (l == 0) throw DomainError("minimize: empty eigenbasis");
  const std::vector<ComplexMatrix> taus = all_taus(x, m, n);

  for (std::size_t k : k_schedule(l, m, n, cfg)) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      const ComplexMatrix start = random_orthonormal_columns(k, l, cfg.seed + r);
      detail::DescentResult res = detail::descend(start, taus, cfg);
      if (res.residual > cfg.stop_residual && res.residual < cfg.polish_below &&
          cfg.polish_iters > 0) {
        res = detail::polish(res, taus, cfg.polish_iters);
      }
      report.iterations_used += res.iterations;
      ++report.restarts_used;
      if (res.residual < report.best_residual) {
        report.best_residual = res.residual;
        report.best_u = res.u;
        report.k = k;
      }
      if (res.residual <= cfg.tol_residual) {
        CertificateOutcome cert = extract_certificate(res.u, x, m, n, cfg.cert_tol);
        if (cert) {
          report.best_residual = res.residual;
          report.best_u = std::move(res.u);
          report.k = k;
          report.certificate = std::move(cert.certificate);
          report.certificate_failure.clear();
          return report;
        }
        report.certificate_failure = cert.reason;
      }
    }
  }
  return report;
}

inline SearchReport minimize(const DensityMatrix& rho,
                             const SearchConfig& cfg = {}) {
  return minimize(scaled_eigvecs(rho, cfg.rank_tol), rho.m(), rho.n(), cfg);
}

/// Quadratic equations sum_{j <= j'} w_{jj'} u*_ij u*_ij' = 0 per pair, in the
/// conjugated coefficients of z_i = sum_j u_ij |x_j>.
/// Coefficients with |w| <= 1e-14 are treated as zero.
inline ConstraintSystem emit_constraints(const ScaledEigvecs& x, std::size_t m,
                                         std::size_t n) {
  ConstraintSystem sys;
  sys.l = x.l();
  const auto pairs = enumerate_pairs(m, n);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    PairConstraints pc;
    pc.label = r + 1;
    pc.pair = pairs[r];
    pc.tau = tau_matrix(x, build_pair_operator(m, n, pairs[r]));
    for (Eigen::Index j = 0; j < pc.tau.rows(); ++j) {
      for (Eigen::Index jp = j; jp < pc.tau.cols(); ++jp) {
        const Complex w = (j == jp ? 1.0 : 2.0) * pc.tau(j, jp);
        if (std::abs(w) > 1e-14) {
          pc.terms.push_back({static_cast<std::size_t>(j) + 1,
                              static_cast<std::size_t>(jp) + 1, w});
        }
      }
    }
    sys.pairs.push_back(std::move(pc));
  }
  return sys;
}

/// Text export: per pair a `pair r: p q` header, then `j j' w_re w_im` lines
/// with each equation scaled so its largest |w| is 1.
inline std::string format_constraints(const ConstraintSystem& sys) {
  std::ostringstream os;
  for (const auto& pc : sys.pairs) {
    os << "pair " << pc.label << ": " << pc.pair.p << ' ' << pc.pair.q << '\n';
    double scale = 0.0;
    for (const auto& t : pc.terms) scale = std::max(scale, std::abs(t.w));
    for (const auto& t : pc.terms) {
      const Complex w = t.w / scale;
      os << t.j << ' ' << t.jp << ' ' << format_real(w.real()) << ' '
         << format_real(w.imag()) << '\n';
    }
  }
  return os.str();
}

}  // namespace sepcheck
