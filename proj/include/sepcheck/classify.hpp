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

#include <optional>
#include <string_view>
#include <vector>

#include "sepcheck/criterion.hpp"
#include "sepcheck/search.hpp"

namespace sepcheck {

enum class Verdict {
  SeparableCertified,
  EntangledByPairCriterion,
  EntangledByPPT,
  Inconclusive,
};

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::SeparableCertified: return "SeparableCertified";
    case Verdict::EntangledByPairCriterion: return "EntangledByPairCriterion";
    case Verdict::EntangledByPPT: return "EntangledByPPT";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

struct ClassifyConfig {
  double rank_tol = 1e-12;
  double boundary_tol = 1e-9;   // a^r and PPT sign decisions
  double pure_product_tol = 1e-8;
  bool run_search = true;
  SearchConfig search;
  std::optional<std::vector<ComplexVector>> basis_override;
};

struct ClassificationReport {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t entangled_pair = 0;  // r (1-based) for EntangledByPairCriterion
  std::size_t rank = 0;            // l
  double ppt_min_eigenvalue = 0.0;
  std::vector<SpectralReport> per_pair;
  std::optional<SeparableCertificate> certificate;
  std::optional<SearchReport> search;
};

/// Eigenbasis, per-pair spectra, PPT, then (only if nothing proves
/// entanglement) the joint search. Search failure is Inconclusive: local
/// search cannot show that no parallel ensemble exists.
inline ClassificationReport classify(const DensityMatrix& rho,
                                     const ClassifyConfig& cfg = {}) {
  ClassificationReport rep;
  const ScaledEigvecs x = scaled_eigvecs(rho, cfg.rank_tol, cfg.basis_override);
  rep.rank = x.l();
  rep.per_pair = spectral_reports(x, rho.m(), rho.n());
  rep.ppt_min_eigenvalue = ppt_min_eigenvalue(rho);

  std::size_t first_positive = 0;
  for (std::size_t r = 0; r < rep.per_pair.size(); ++r) {
    if (rep.per_pair[r].a_value > cfg.boundary_tol) {
      first_positive = r + 1;
      break;
    }
  }

  if (x.l() == 1) {
    if (pure_product_check(x.vectors.front(), rho.m(), rho.n(),
                           cfg.pure_product_tol)) {
      CertificateOutcome cert =
          extract_certificate(ComplexMatrix::Identity(1, 1), x, rho.m(), rho.n(),
                              cfg.pure_product_tol);
      if (cert) {
        rep.verdict = Verdict::SeparableCertified;
        rep.certificate = std::move(cert.certificate);
        return rep;
      }
    }
    // A non-product pure state always has a non-positive partial transpose;
    // the pair test can miss it only when the anchors vanish.
    if (first_positive) {
      rep.verdict = Verdict::EntangledByPairCriterion;
      rep.entangled_pair = first_positive;
    } else {
      rep.verdict = Verdict::EntangledByPPT;
    }
    return rep;
  }

  if (first_positive) {
    rep.verdict = Verdict::EntangledByPairCriterion;
    rep.entangled_pair = first_positive;
    return rep;
  }
  if (rep.ppt_min_eigenvalue < -cfg.boundary_tol) {
    rep.verdict = Verdict::EntangledByPPT;
    return rep;
  }
  if (!cfg.run_search) {
    rep.verdict = Verdict::Inconclusive;
    return rep;
  }

  SearchConfig search_cfg = cfg.search;
  search_cfg.rank_tol = cfg.rank_tol;
  SearchReport sr = minimize(x, rho.m(), rho.n(), search_cfg);
  if (sr.certificate) {
    rep.verdict = Verdict::SeparableCertified;
    rep.certificate = sr.certificate;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  rep.search = std::move(sr);
  return rep;
}

}  // namespace sepcheck
