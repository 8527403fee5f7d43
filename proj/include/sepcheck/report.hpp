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

// Machine-readable (JSON) and tabular renderings of the analysis results.
// Field order is fixed so identical results serialize byte-identically.

#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sepcheck/classify.hpp"
#include "sepcheck/decomposer.hpp"

namespace sepcheck {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(vector_to_json(m.row(i).transpose()));
  }
  return out;
}

inline Json spectral_to_json(const SpectralReport& s, bool with_tau) {
  Json j;
  j["p"] = s.pair.p;
  j["q"] = s.pair.q;
  j["lambdas"] = Json::array();
  for (Eigen::Index i = 0; i < s.lambdas.size(); ++i) j["lambdas"].push_back(s.lambdas(i));
  j["a_value"] = s.a_value;
  if (with_tau) j["tau"] = matrix_to_json(s.tau);
  return j;
}

inline Json certificate_to_json(const SeparableCertificate& c) {
  Json j;
  j["terms"] = Json::array();
  for (const auto& t : c.terms) {
    Json term;
    term["weight"] = t.weight;
    term["alpha"] = vector_to_json(t.alpha);
    term["beta"] = vector_to_json(t.beta);
    j["terms"].push_back(std::move(term));
  }
  return j;
}

inline Json search_to_json(const SearchReport& s) {
  Json j;
  j["best_residual"] = s.best_residual;
  j["k"] = s.k;
  j["restarts"] = s.restarts_used;
  j["iterations"] = s.iterations_used;
  j["certified"] = s.certificate.has_value();
  if (!s.certificate && !s.certificate_failure.empty()) {
    j["certificate_failure"] = s.certificate_failure;
  }
  return j;
}

inline Json classification_to_json(const ClassificationReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.verdict == Verdict::EntangledByPairCriterion) j["entangled_pair"] = r.entangled_pair;
  j["rank"] = r.rank;
  j["ppt_min_eigenvalue"] = r.ppt_min_eigenvalue;
  j["pairs"] = Json::array();
  for (const auto& s : r.per_pair) j["pairs"].push_back(spectral_to_json(s, false));
  j["search"] = r.search ? search_to_json(*r.search) : Json(nullptr);
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j;
}

inline Json ensemble_to_json(const PureEnsemble& e, const EnsembleCheck& check) {
  Json j;
  j["m"] = e.m;
  j["n"] = e.n;
  j["members"] = Json::array();
  for (const auto& z : e.members) j["members"].push_back(vector_to_json(z));
  j["reconstruction_error"] = check.reconstruction_error;
  j["max_pair_residual"] = check.max_pair_residual;
  j["product_defect"] = check.product_defect;
  return j;
}

namespace detail {

inline std::string fixed(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << std::scientific << (v == 0.0 ? 0.0 : v);
  return os.str();
}

}  // namespace detail

inline std::string spectrum_table(const std::vector<SpectralReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "r" << std::setw(10) << "pair"
     << std::setw(16) << "a" << "lambdas\n";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& s = reports[r];
    std::ostringstream pair;
    pair << "(" << s.pair.p << "," << s.pair.q << ")";
    os << std::left << std::setw(6) << r + 1 << std::setw(10) << pair.str()
       << std::setw(16) << detail::fixed(s.a_value);
    for (Eigen::Index i = 0; i < s.lambdas.size(); ++i) {
      os << (i ? " " : "") << detail::fixed(s.lambdas(i));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string tau_table(const std::vector<SpectralReport>& reports) {
  std::ostringstream os;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    os << "tau " << r + 1 << " (" << reports[r].pair.p << "," << reports[r].pair.q << ")\n";
    const ComplexMatrix& t = reports[r].tau;
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        os << (j ? " " : "  ") << format_real(t(i, j).real()) << ','
           << format_real(t(i, j).imag());
      }
      os << '\n';
    }
  }
  return os.str();
}

inline std::string search_table(const SearchReport& s) {
  std::ostringstream os;
  os << "best residual  " << detail::fixed(s.best_residual) << '\n'
     << "k              " << s.k << '\n'
     << "restarts       " << s.restarts_used << '\n'
     << "iterations     " << s.iterations_used << '\n'
     << "certified      " << (s.certificate ? "yes" : "no") << '\n';
  if (!s.certificate && !s.certificate_failure.empty()) {
    os << "failure        " << s.certificate_failure << '\n';
  }
  return os.str();
}

inline std::string certificate_table(const SeparableCertificate& c) {
  std::ostringstream os;
  os << "certificate: " << c.terms.size() << " product terms\n";
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    os << "  " << std::setw(4) << i + 1 << "  weight " << detail::fixed(c.terms[i].weight)
       << '\n';
  }
  return os.str();
}

inline std::string classification_table(const ClassificationReport& r) {
  std::ostringstream os;
  os << "verdict        " << to_string(r.verdict);
  if (r.verdict == Verdict::EntangledByPairCriterion) os << " (pair " << r.entangled_pair << ")";
  os << '\n'
     << "rank           " << r.rank << '\n'
     << "ppt min eig    " << detail::fixed(r.ppt_min_eigenvalue) << "\n\n"
     << spectrum_table(r.per_pair);
  if (r.search) os << '\n' << search_table(*r.search);
  if (r.certificate) os << '\n' << certificate_table(*r.certificate);
  return os.str();
}

}  // namespace sepcheck
