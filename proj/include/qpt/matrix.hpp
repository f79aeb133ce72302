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

#include <unsupported/Eigen/KroneckerProduct>

#include "qpt/common.hpp"
#include "qpt/errors.hpp"

namespace qpt {

inline CMat dagger(const CMat& a) { return a.adjoint(); }

inline CMat kron(const CMat& a, const CMat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline double max_abs(const CMat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// Relative Frobenius asymmetry; tolerance is relative to the matrix scale.
inline bool is_hermitian(const CMat& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  return (a - a.adjoint()).norm() <= tol * (scale > 0.0 ? scale : 1.0);
}

inline bool is_unitary(const CMat& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) return false;
  const CMat g = a.adjoint() * a;
  return (g - CMat::Identity(a.rows(), a.cols())).norm() <=
         tol * std::sqrt(static_cast<double>(a.rows()));
}

inline void require_square(const CMat& a, const char* what) {
  if (a.rows() != a.cols())
    throw invariant_error(std::string(what) + ": matrix must be square");
}

inline void require_hermitian(const CMat& a, const char* what,
                              double tol = 1e-9) {
  require_square(a, what);
  if (!is_hermitian(a, tol))
    throw invariant_error(std::string(what) + ": matrix must be Hermitian");
}

}  // namespace qpt
