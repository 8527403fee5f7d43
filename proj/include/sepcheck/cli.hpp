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

// Command-line front end. run_cli is stream-parameterized so tests can drive
// it in-process.
//
// Exit codes:
//   0   separable (certified), or an informational command succeeded
//   1   entangled (pair criterion or partial transpose)
//   2   inconclusive
//   64  usage error
//   65  malformed or invalid state file
//   66  state file cannot be read
//   70  numerical failure

#pragma once

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sepcheck/report.hpp"
#include "sepcheck/state_io.hpp"
#include "sepcheck/states.hpp"

namespace sepcheck {

enum ExitCode : int {
  kExitSeparable = 0,
  kExitEntangled = 1,
  kExitInconclusive = 2,
  kExitUsage = 64,
  kExitDataError = 65,
  kExitNoInput = 66,
  kExitSoftware = 70,
};

inline int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::SeparableCertified: return kExitSeparable;
    case Verdict::EntangledByPairCriterion:
    case Verdict::EntangledByPPT: return kExitEntangled;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitSoftware;
}

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return parse_state(text);
}

inline double to_real(const std::string& s, const char* what) {
  double v = 0.0;
  if (!parse_double(s, v)) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

inline std::size_t to_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  if (!parse_size(s, v)) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

inline void expect_params(const std::string& name,
                          const std::vector<std::string>& params,
                          std::size_t count, const char* usage) {
  if (params.size() != count) {
    throw UsageError("gen " + name + " expects: " + usage);
  }
}

inline DensityMatrix generate(const std::string& name,
                              const std::vector<std::string>& p) {
  if (name == "bound_2x4") {
    expect_params(name, p, 0, "no parameters");
    return bound_2x4();
  }
  if (name == "bell") {
    expect_params(name, p, 0, "no parameters");
    return bell();
  }
  if (name == "werner") {
    expect_params(name, p, 1, "p");
    return werner_2x2(to_real(p[0], "p"));
  }
  if (name == "isotropic") {
    expect_params(name, p, 2, "d F");
    return isotropic(to_count(p[0], "d"), to_real(p[1], "F"));
  }
  if (name == "maximally_mixed") {
    expect_params(name, p, 2, "m n");
    const std::size_t m = to_count(p[0], "m");
    const std::size_t n = to_count(p[1], "n");
    if (m < 1 || n < 1) throw UsageError("dimensions must be positive");
    const auto d = static_cast<Eigen::Index>(m * n);
    return DensityMatrix(m, n, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
  }
  if (name == "random") {
    expect_params(name, p, 4, "m n rank seed");
    return random_density(to_count(p[0], "m"), to_count(p[1], "n"),
                          to_count(p[2], "rank"), to_count(p[3], "seed"));
  }
  if (name == "random_separable") {
    expect_params(name, p, 4, "m n terms seed");
    return random_separable(to_count(p[0], "m"), to_count(p[1], "n"),
                            to_count(p[2], "terms"), to_count(p[3], "seed"));
  }
  throw UsageError("unknown state '" + name +
                   "' (bound_2x4, bell, werner, isotropic, maximally_mixed, random, "
                   "random_separable)");
}

// The hand-picked basis is only meaningful for the built-in 2 x 4 state.
inline std::optional<std::vector<ComplexVector>> basis_for(const std::string& basis,
                                                           const DensityMatrix& rho) {
  if (basis == "eigen") return std::nullopt;
  if (basis != "paper") throw UsageError("--basis must be 'eigen' or 'paper'");
  const DensityMatrix ref = bound_2x4();
  if (rho.m() != ref.m() || rho.n() != ref.n() ||
      (rho.matrix() - ref.matrix()).norm() > 1e-12) {
    throw UsageError("--basis paper is only available for the bound_2x4 state");
  }
  return bound_2x4_reference_basis();
}

inline std::string pairs_listing(std::size_t m, std::size_t n) {
  std::ostringstream os;
  const auto ops = build_all_pair_operators(m, n);
  for (std::size_t r = 0; r < ops.size(); ++r) {
    const auto& op = ops[r];
    os << "pair " << r + 1 << ": " << op.pair.p << ' ' << op.pair.q << '\n';
    for (const auto& e : op.entries) {
      os << "  " << e.row << ' ' << e.col << ' ' << (e.value > 0 ? "+1" : "-1") << '\n';
    }
  }
  return os.str();
}

inline Json pairs_json(std::size_t m, std::size_t n) {
  Json out = Json::array();
  for (const auto& op : build_all_pair_operators(m, n)) {
    Json j;
    j["p"] = op.pair.p;
    j["q"] = op.pair.q;
    j["entries"] = Json::array();
    for (const auto& e : op.entries) j["entries"].push_back({e.row, e.col, e.value});
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Separability checker for bipartite mixed states", "sepcheck"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string file;
  std::string basis = "eigen";
  SearchConfig search_cfg;
  std::size_t k_opt = 0;
  auto add_basis = [&](CLI::App* sub) {
    sub->add_option("--basis", basis, "Eigenbasis: eigen (default) or paper (bound_2x4 only)");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--k", k_opt, "Fixed ensemble size (default: schedule l, 2l, ...)");
    sub->add_option("--restarts", search_cfg.restarts, "Restarts per ensemble size");
    sub->add_option("--seed", search_cfg.seed, "Base seed");
    sub->add_option("--max-iters", search_cfg.max_iters, "Iterations per restart");
  };

  std::string gen_name;
  std::vector<std::string> gen_params;
  auto* gen = app.add_subcommand("gen", "Write a built-in state file to stdout");
  gen->add_option("name", gen_name, "State name")->required();
  gen->add_option("params", gen_params, "State parameters");

  auto* classify_cmd = app.add_subcommand("classify", "Full separability pipeline");
  classify_cmd->add_option("file", file, "State file")->required();
  add_basis(classify_cmd);
  add_search(classify_cmd);

  bool show_tau = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Per-pair lambda spectra and a values");
  spectrum_cmd->add_option("file", file, "State file")->required();
  spectrum_cmd->add_flag("--tau", show_tau, "Also print the tau matrices");
  add_basis(spectrum_cmd);

  auto* ppt_cmd = app.add_subcommand("ppt", "Partial-transpose spectrum");
  ppt_cmd->add_option("file", file, "State file")->required();

  std::size_t pm = 0, pn = 0;
  auto* pairs_cmd = app.add_subcommand("pairs", "List the pair operators of an m x n system");
  pairs_cmd->add_option("m", pm)->required();
  pairs_cmd->add_option("n", pn)->required();

  std::size_t pair_label = 0;
  auto* decompose_cmd = app.add_subcommand("decompose", "Single-pair ensemble construction");
  decompose_cmd->add_option("file", file, "State file")->required();
  decompose_cmd->add_option("--pair", pair_label, "Pair label r (1-based)")->required();
  decompose_cmd->add_option("--k", k_opt, "Ensemble size is 4k (power of two >= l)");
  add_basis(decompose_cmd);

  auto* search_cmd = app.add_subcommand("search", "Joint ensemble search only");
  search_cmd->add_option("file", file, "State file")->required();
  add_basis(search_cmd);
  add_search(search_cmd);

  auto* emit_cmd = app.add_subcommand("emit-constraints", "Export the quadratic constraint system");
  emit_cmd->add_option("file", file, "State file")->required();
  add_basis(emit_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      try {
        out << serialize_state(detail::generate(gen_name, gen_params));
      } catch (const DomainError& e) {
        throw detail::UsageError(e.what());
      }
      return 0;
    }
    if (pairs_cmd->parsed()) {
      if (pm < 2 || pn < 2) throw detail::UsageError("pairs needs m >= 2 and n >= 2");
      if (json) {
        out << detail::pairs_json(pm, pn).dump(2) << '\n';
      } else {
        out << detail::pairs_listing(pm, pn);
      }
      return 0;
    }

    const DensityMatrix rho = detail::load_state(file);
    const auto override_basis = detail::basis_for(basis, rho);
    if (k_opt != 0) search_cfg.k = k_opt;

    if (classify_cmd->parsed()) {
      ClassifyConfig cfg;
      cfg.search = search_cfg;
      cfg.basis_override = override_basis;
      const ClassificationReport rep = classify(rho, cfg);
      out << (json ? classification_to_json(rep).dump(2) + "\n" : classification_table(rep));
      return verdict_exit_code(rep.verdict);
    }

    const ScaledEigvecs x = scaled_eigvecs(rho, 1e-12, override_basis);

    if (spectrum_cmd->parsed()) {
      const auto reports = spectral_reports(x, rho.m(), rho.n());
      if (json) {
        Json j;
        j["rank"] = x.l();
        j["pairs"] = Json::array();
        for (const auto& s : reports) j["pairs"].push_back(spectral_to_json(s, show_tau));
        out << j.dump(2) << '\n';
      } else {
        out << spectrum_table(reports);
        if (show_tau) out << '\n' << tau_table(reports);
      }
      return 0;
    }
    if (ppt_cmd->parsed()) {
      const ComplexMatrix pt = partial_transpose(rho, 2);
      const RealVector w = hermitian_eig(0.5 * (pt + pt.adjoint())).eigenvalues;
      const double min_eig = ppt_min_eigenvalue(rho);
      if (json) {
        Json j;
        j["ppt_min_eigenvalue"] = min_eig;
        j["eigenvalues"] = std::vector<double>(w.data(), w.data() + w.size());
        out << j.dump(2) << '\n';
      } else {
        out << "ppt min eig    " << detail::fixed(min_eig) << '\n' << "eigenvalues   ";
        for (Eigen::Index i = 0; i < w.size(); ++i) out << ' ' << detail::fixed(w(i));
        out << '\n';
      }
      return 0;
    }
    if (decompose_cmd->parsed()) {
      std::optional<std::size_t> k;
      if (k_opt != 0) k = k_opt;
      PureEnsemble e;
      try {
        e = single_pair_decomposition(x, rho.m(), rho.n(), pair_label, k);
      } catch (const CriterionError& ex) {
        err << "sepcheck: " << ex.what() << '\n';
        return kExitEntangled;
      }
      const EnsembleCheck check =
          verify_ensemble(e, rho.matrix(), {enumerate_pairs(rho.m(), rho.n())[pair_label - 1]});
      if (json) {
        out << ensemble_to_json(e, check).dump(2) << '\n';
      } else {
        out << "members        " << e.members.size() << '\n'
            << "reconstruction " << detail::fixed(check.reconstruction_error) << '\n'
            << "pair residual  " << detail::fixed(check.max_pair_residual) << '\n';
        for (std::size_t i = 0; i < e.members.size(); ++i) {
          out << "z " << i + 1 << ':';
          for (Eigen::Index a = 0; a < e.members[i].size(); ++a) {
            out << ' ' << format_real(e.members[i](a).real()) << ','
                << format_real(e.members[i](a).imag());
          }
          out << '\n';
        }
      }
      return 0;
    }
    if (search_cmd->parsed()) {
      const SearchReport rep = minimize(x, rho.m(), rho.n(), search_cfg);
      if (json) {
        Json j = search_to_json(rep);
        if (rep.certificate) j["certificate"] = certificate_to_json(*rep.certificate);
        out << j.dump(2) << '\n';
      } else {
        out << search_table(rep);
        if (rep.certificate) out << certificate_table(*rep.certificate);
      }
      return rep.certificate ? kExitSeparable : kExitInconclusive;
    }
    if (emit_cmd->parsed()) {
      const ConstraintSystem sys = emit_constraints(x, rho.m(), rho.n());
      if (json) {
        Json j;
        j["l"] = sys.l;
        j["pairs"] = Json::array();
        for (const auto& pc : sys.pairs) {
          Json p;
          p["label"] = pc.label;
          p["p"] = pc.pair.p;
          p["q"] = pc.pair.q;
          p["terms"] = Json::array();
          for (const auto& t : pc.terms) {
            p["terms"].push_back({t.j, t.jp, t.w.real(), t.w.imag()});
          }
          j["pairs"].push_back(std::move(p));
        }
        out << j.dump(2) << '\n';
      } else {
        out << format_constraints(sys);
      }
      return 0;
    }
  } catch (const detail::UsageError& e) {
    err << "sepcheck: " << e.what() << '\n';
    return kExitUsage;
  } catch (const detail::InputError& e) {
    err << "sepcheck: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const ParseError& e) {
    err << "sepcheck: " << file << ": " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "sepcheck: " << e.what() << '\n';
    return kExitSoftware;
  }
  return kExitUsage;
}

}  // namespace sepcheck
