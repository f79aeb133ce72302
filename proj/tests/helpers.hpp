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

#include <random>

#include "qpt/qpt.hpp"

namespace qpt_test {

inline qpt::CMat random_complex(Eigen::Index rows, Eigen::Index cols,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  qpt::CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = qpt::cx{re, im};
    }
  return m;
}

inline qpt::CMat random_hermitian(Eigen::Index n, std::uint64_t seed) {
  const qpt::CMat a = random_complex(n, n, seed);
  return 0.5 * (a + a.adjoint());
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return (a.template cast<qpt::cx>() - b.template cast<qpt::cx>())
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace qpt_test
