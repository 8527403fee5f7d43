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

// Line-oriented state files:
//
//   dims m n
//   re,im re,im ... (m n entries)     <- one line per matrix row
//   ...
//
// Numbers are written with 17 significant digits, so serialize/parse is
// exact and serialize(parse(text)) == text for canonical files.

#pragma once

#include <cerrno>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sepcheck/density.hpp"
#include "sepcheck/format.hpp"

namespace sepcheck {

inline std::string serialize_state(const DensityMatrix& rho) {
  std::string out = "dims " + std::to_string(rho.m()) + " " +
                    std::to_string(rho.n()) + "\n";
  const ComplexMatrix& mat = rho.matrix();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j) {
      if (j) out += ' ';
      out += format_real(mat(i, j).real());
      out += ',';
      out += format_real(mat(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  const std::string s(token);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

inline bool parse_size(const std::string& token, std::size_t& out) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    return false;
  }
  out = std::stoul(token);
  return true;
}

}  // namespace detail

/// Parses and validates a state file. Validation uses a 1e-8 tolerance on
/// trace and eigenvalues and 1e-10 on Hermiticity.
inline DensityMatrix parse_state(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  while (!lines.empty() &&
         lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  if (lines.empty()) throw ParseError(1, "empty state file");

  std::size_t m = 0;
  std::size_t n = 0;
  {
    std::istringstream header(lines[0]);
    std::string tag, ms, ns, extra;
    header >> tag >> ms >> ns;
    if (tag != "dims" || !detail::parse_size(ms, m) ||
        !detail::parse_size(ns, n) || (header >> extra) || m < 1 || n < 1) {
      throw ParseError(1, "expected header 'dims m n' with positive integers");
    }
  }
  const std::size_t d = m * n;
  if (lines.size() < d + 1) {
    throw ParseError(lines.size() + 1, "truncated file: expected " +
                                           std::to_string(d) + " matrix rows, found " +
                                           std::to_string(lines.size() - 1));
  }
  if (lines.size() > d + 1) {
    throw ParseError(d + 2, "unexpected content after the last matrix row");
  }

  ComplexMatrix mat(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t lineno = i + 2;
    std::istringstream row(lines[i + 1]);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j >= d) throw ParseError(lineno, "too many entries in row");
      const auto comma = token.find(',');
      double re = 0.0, im = 0.0;
      if (comma == std::string::npos ||
          !detail::parse_double(std::string_view(token).substr(0, comma), re) ||
          !detail::parse_double(std::string_view(token).substr(comma + 1), im)) {
        throw ParseError(lineno, "entry " + std::to_string(j + 1) +
                                     " is not of the form re,im: '" + token + "'");
      }
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(re, im);
      ++j;
    }
    if (j != d) {
      throw ParseError(lineno, "expected " + std::to_string(d) + " entries, found " +
                                   std::to_string(j));
    }
  }

  if ((mat - mat.adjoint()).norm() > 1e-10) {
    throw ParseError(0, "matrix is not Hermitian");
  }
  const double trace = mat.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw ParseError(0, "trace deviates from 1 by more than 1e-8 (trace = " +
                            format_real(trace) + ")");
  }
  try {
    return DensityMatrix(m, n, std::move(mat), DensityTolerance{1e-10, 1e-8, 1e-8});
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace sepcheck
