// Copyright 2026 The qpt authors
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

#include <algorithm>
#include <numeric>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "qpt/matrix.hpp"

namespace qpt {

inline double frobenius_norm(const CMat& a) { return a.norm(); }

struct EigenDecomposition {
  CVec values;
  CMat vectors;               // unit columns, values(k) <-> vectors.col(k)
  bool hermitian_path = false;
};

inline CMat expm(const CMat& a, cx scale = cx{1.0, 0.0}) {
  require_square(a, "expm");
  const CMat r = (scale * a).exp();
  if (!r.allFinite()) throw numerical_error("expm: result is not finite");
  return r;
}

// Deterministic ordering: descending by real part, ties by descending
// imaginary part (index as final tie-break).
inline EigenDecomposition eig(const CMat& a, bool hermitian) {
  require_square(a, "eig");
  EigenDecomposition d;
  d.hermitian_path = hermitian;
  if (hermitian) {
    require_hermitian(a, "eig");
    Eigen::SelfAdjointEigenSolver<CMat> solver(a);
    if (solver.info() != Eigen::Success)
      throw numerical_error("eig: Hermitian eigensolver did not converge");
    const auto n = a.rows();
    d.values = CVec(n);
    d.vectors = CMat(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {  // ascending -> descending
      d.values(k) = solver.eigenvalues()(n - 1 - k);
      d.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return d;
  }
  Eigen::ComplexEigenSolver<CMat> solver(a);
  if (solver.info() != Eigen::Success)
    throw numerical_error("eig: eigensolver did not converge");
  const auto n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const CVec& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     if (vals(i).real() != vals(j).real())
                       return vals(i).real() > vals(j).real();
                     return vals(i).imag() > vals(j).imag();
                   });
  d.values = CVec(n);
  d.vectors = CMat(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d.values(k) = vals(order[static_cast<std::size_t>(k)]);
    d.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return d;
}

// Principal branch. Rejects singular inputs and spectra touching the
// negative real axis instead of silently wrapping the phase.
inline CMat logm_principal(const CMat& a) {
  require_square(a, "logm_principal");
  const EigenDecomposition d = eig(a, false);
  const double rho = d.values.cwiseAbs().maxCoeff();
  if (!(rho > 0.0))
    throw numerical_error("logm_principal: matrix is singular");
  for (Eigen::Index k = 0; k < d.values.size(); ++k) {
    const cx lambda = d.values(k);
    if (std::abs(lambda) <= 1e-13 * rho)
      throw numerical_error("logm_principal: matrix is singular");
    if (lambda.real() < 0.0 && std::abs(lambda.imag()) <= 1e-10 * rho)
      throw branch_cut_error(
          "logm_principal: eigenvalue on the negative real axis");
  }
  const CMat r = a.log();
  if (!r.allFinite())
    throw numerical_error("logm_principal: result is not finite");
  return r;
}

// Nearest positive semidefinite matrix to the Hermitian part of a.
inline CMat psd_project(const CMat& a) {
  require_square(a, "psd_project");
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error("psd_project: eigensolver did not converge");
  const RVec clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.asDiagonal().toDenseMatrix().cast<cx>() *
         solver.eigenvectors().adjoint();
}

// Sum of squared negative eigenvalues of the Hermitian part.
inline double negative_eigenvalue_penalty(const CMat& a) {
  require_square(a, "negative_eigenvalue_penalty");
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error(
        "negative_eigenvalue_penalty: eigensolver did not converge");
  double p = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double mu = solver.eigenvalues()(k);
    if (mu < 0.0) p += mu * mu;
  }
  return p;
}

}  // namespace qpt
