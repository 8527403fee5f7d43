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

#include <cstddef>
#include <string>

#include "sepcheck/matcore.hpp"

namespace sepcheck {

/// Validation tolerances for a density matrix.
struct DensityTolerance {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = 1e-10;
};

/// Trace-one positive-semidefinite operator on C^m (x) C^n. The first factor
/// is the m-dimensional system; basis |a b> sits at (a - 1) n + b.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t m, std::size_t n, ComplexMatrix matrix,
                DensityTolerance tol = {})
      : m_(m), n_(n), matrix_(std::move(matrix)) {
    if (m < 1 || n < 1) {
      throw DomainError("DensityMatrix: subsystem dimensions must be >= 1");
    }
    const auto d = static_cast<Eigen::Index>(m * n);
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw DomainError("DensityMatrix: matrix must be (m n) x (m n)");
    }
    if ((matrix_ - matrix_.adjoint()).norm() > tol.hermitian) {
      throw DomainError("DensityMatrix: matrix is not Hermitian");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
      throw DomainError("DensityMatrix: trace deviates from 1 (trace = " +
                        std::to_string(tr.real()) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        0.5 * (matrix_ + matrix_.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol.min_eigenvalue) {
      throw DomainError("DensityMatrix: matrix has a negative eigenvalue");
    }
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return m_ * n_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  std::size_t m_;
  std::size_t n_;
  ComplexMatrix matrix_;
};

}  // namespace sepcheck
