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

#include <array>

#include "qpt/hadamard.hpp"

namespace qpt::reference {

// Relaxation data for the two proton spins of 2,3-dibromothiophene at
// 4.3 mG. Rate matrices are quoted to four decimals in the transition-norm
// reporting convention; T1 about 5.6 s, T2 about 2.7 s.

inline constexpr double nu1_hz = 161.63;
inline constexpr double j_hz = 5.77;

inline TwoSpinHamiltonian hamiltonian_spec() { return {nu1_hz, j_hz}; }

inline CMat hamiltonian() { return two_spin_hamiltonian(hamiltonian_spec()); }

// Transition-basis population block of the fitted relaxation matrix.
inline RMat r_t1_tra_raw() {
  RMat r(4, 4);
  r <<  0,       0,       0,       0,
        0,       0.1780, -0.0002,  0.0089,
        0,      -0.0002,  0.1784, -0.0097,
        0,       0.0089, -0.0097,  0.3061;
  return r;
}

// Same block with the weak couplings to sz1 sz2 dropped.
inline RMat r_t1_tra_sym() {
  RMat r(4, 4);
  r <<  0,       0,       0,       0,
        0,       0.1780, -0.0002,  0,
        0,      -0.0002,  0.1784,  0,
        0,       0,       0,       0.3061;
  return r;
}

// Zeeman population rate matrix, as fitted.
inline RMat r_t1_zee_raw() {
  RMat r(4, 4);
  r <<  0.3301, -0.1435, -0.1617, -0.0249,
       -0.1435,  0.3129, -0.0254, -0.1440,
       -0.1617, -0.0254,  0.3500, -0.1630,
       -0.0249, -0.1440, -0.1629,  0.3319;
  return r;
}

// Zeeman population rate matrix after centrosymmetrization.
inline RMat r_t1_zee_sym() {
  RMat r(4, 4);
  r <<  0.3310, -0.1532, -0.1528, -0.0249,
       -0.1532,  0.3315, -0.0254, -0.1528,
       -0.1528, -0.0254,  0.3315, -0.1532,
       -0.0249, -0.1528, -0.1532,  0.3310;
  return r;
}

// Entrywise coherence decay rates (superoperator diagonal), zero diagonal,
// before centrosymmetrization.
inline RMat r_t2_zee() {
  RMat r(4, 4);
  r <<  0,       0.7890,  0.7757,  1.2872,
        0.7890,  0,       0.5033,  0.7426,
        0.7757,  0.5033,  0,       0.7283,
        1.2872,  0.7426,  0.7283,  0;
  return r;
}

// Adiabatic dephasing excess after removing the nonadiabatic floor.
inline RMat r_t2_ad() {
  RMat r(4, 4);
  r <<  0,       0.4274,  0.4279,  0.9560,
        0.4274,  0,       0.1721,  0.4279,
        0.4279,  0.1721,  0,       0.4274,
        0.9560,  0.4279,  0.4274,  0;
  return r;
}

inline constexpr std::array<double, 3> adiabatic_weights{0.9560, 0.2913, 0.1721};

inline std::array<RVec, 3> adiabatic_modes() {
  const double s = 1.0 / std::sqrt(2.0);
  RVec v0(4), v1(4), v2(4);
  v0 << s, 0, 0, -s;
  v1 << 0.5, -0.5, -0.5, 0.5;
  v2 << 0, s, -s, 0;
  return {v0, v1, v2};
}

// Merged flip-family weights: spin-2 flips, spin-1 flips, double flips.
inline constexpr std::array<double, 3> merged_t1_weights{0.1532, 0.1528, 0.0252};

inline constexpr double measured_t1_s = 5.6;
inline constexpr double measured_t2_s = 2.7;

// Reported 16x16 Zeeman relaxation matrix rebuilt from the quoted blocks:
// population block from r_t1_zee_sym (diagonal re-balanced to exact rate
// conservation), coherence decay rates from centrosymmetrized r_t2_zee.
inline CMat relaxation_reported_zeeman() {
  RMat t1 = r_t1_zee_sym();
  for (Eigen::Index j = 0; j < 4; ++j) {
    double out = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k)
      if (k != j) out += t1(k, j);
    t1(j, j) = -out;
  }
  const RMat t2 = centrosymmetrize(r_t2_zee());
  CMat s = CMat::Zero(16, 16);
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index k = 0; k < 4; ++k) {
      if (j != k) s(k * 4 + j, k * 4 + j) = t2(j, k);
      s(j * 4 + j, k * 4 + k) += t1(j, k);
    }
  return s;
}

// Plain-coordinate generator in the computational basis.
inline Supergenerator generator_computational() {
  Supergenerator g;
  g.n = 4;
  g.hamiltonian_part = commutation_superoperator(hamiltonian());
  g.relaxation_part = 0.5 * relaxation_reported_zeeman();
  g.basis = BasisName::zeeman;
  return g;
}

// Same generator expressed in the transition basis.
inline Supergenerator generator_transition() {
  const Supergenerator gz = generator_computational();
  Supergenerator g;
  g.n = 4;
  g.basis = BasisName::transition;
  g.hamiltonian_part = change_superoperator_coordinates(
      gz.hamiltonian_part, zeeman_basis(4), transition_basis());
  g.relaxation_part = change_superoperator_coordinates(
      gz.relaxation_part, zeeman_basis(4), transition_basis());
  return g;
}

}  // namespace qpt::reference
