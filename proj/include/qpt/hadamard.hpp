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
#include <cmath>
#include <utility>
#include <vector>

#include "qpt/cp.hpp"

namespace qpt {

// T1/T2 analysis of a two-spin relaxation superoperator. Rate matrices in
// this module follow the transition-norm reporting convention for the Zeeman
// basis (factor 2 over the plain coordinate representation); with it the
// merged T1 weights sum directly to 1/T1.

inline RMat hadamard_transform_4() {
  RMat w(4, 4);
  w << 1, 1, 1, 1,
       1, 1, -1, -1,
       1, -1, 1, -1,
       1, -1, -1, 1;
  return 0.5 * w;
}

// Relaxation part in the reporting convention, computational coordinates.
inline CMat reporting_zeeman_matrix(const Supergenerator& g) {
  return 2.0 * relaxation_in_computational_coordinates(g);
}

// Leading 4x4 block of the transition-basis relaxation matrix: the subspace
// {I, sz1, sz2, sz1 sz2}. Real for any Hermiticity-preserving input.
inline RMat extract_t1_block(const CMat& r_tra, double imag_tol = 1e-6) {
  if (r_tra.rows() != 16 || r_tra.cols() != 16)
    throw invariant_error("extract_t1_block: expected a 16x16 matrix");
  const CMat block = r_tra.topLeftCorner(4, 4);
  const double scale = std::max(1.0, r_tra.norm());
  if (block.imag().norm() > imag_tol * scale)
    throw invariant_error("extract_t1_block: block has an imaginary residue");
  return block.real();
}

// Average with the index-reversed matrix: (r + J r J)/2, J the exchange.
inline RMat centrosymmetrize(const RMat& r) {
  if (r.rows() != r.cols())
    throw invariant_error("centrosymmetrize: matrix must be square");
  const auto n = r.rows();
  RMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = 0.5 * (r(i, j) + r(n - 1 - i, n - 1 - j));
  return out;
}

struct HadamardRelaxationMatrix {
  int n = 0;
  RMat rates;
  bool zero_diagonal = false;
};

namespace detail {

inline void require_t1_matrix(const RMat& r) {
  if (r.rows() != 4 || r.cols() != 4)
    throw invariant_error("t1 rate matrix must be 4x4");
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  if ((r - r.transpose()).cwiseAbs().maxCoeff() > 1e-3 * scale)
    throw invariant_error("t1 rate matrix must be symmetric");
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index k = 0; k < 4; ++k)
      if (j != k && r(j, k) > 1e-9 * scale)
        throw invariant_error("t1 rate matrix has a positive off-diagonal");
}

struct FlipGroup {
  std::array<std::pair<int, int>, 2> pairs;  // Zeeman index pairs
  std::array<CMat, 4> ops;                   // unit-weight merged operators
};

// Each merged set is a unitary recombination of the four elementary flips of
// its group, so equal-rate merged and unmerged systems share one dissipator.
inline std::vector<FlipGroup> flip_groups() {
  const CMat x1 = spin1(sigma_x()), y1 = spin1(sigma_y()), z1 = spin1(sigma_z());
  const CMat x2 = spin2(sigma_x()), y2 = spin2(sigma_y()), z2 = spin2(sigma_z());
  std::vector<FlipGroup> groups(3);
  groups[0].pairs = {{{0, 2}, {1, 3}}};  // spin-1 flips
  groups[0].ops = {0.5 * x1, 0.5 * y1, 0.5 * x1 * z2, 0.5 * y1 * z2};
  groups[1].pairs = {{{0, 1}, {2, 3}}};  // spin-2 flips
  groups[1].ops = {0.5 * x2, 0.5 * y2, 0.5 * z1 * x2, 0.5 * z1 * y2};
  groups[2].pairs = {{{0, 3}, {1, 2}}};  // double flips
  groups[2].ops = {0.5 * x1 * x2, 0.5 * x1 * y2, 0.5 * y1 * x2, 0.5 * y1 * y2};
  return groups;
}

}  // namespace detail

// Flip Lindblads of the Zeeman population rate matrix. Unmerged: one operator
// sqrt(-r(j,k)) |k><j| per direction of each nonzero off-diagonal. Merged:
// the three degenerate flip families are replaced by Pauli product sets whose
// per-operator weight is the family's mean rate.
inline LindbladSystem t1_lindblads(const RMat& r_t1_zee, bool merge_degenerate,
                                   double merge_spread_tol = 0.05) {
  detail::require_t1_matrix(r_t1_zee);
  const RMat r = 0.5 * (r_t1_zee + r_t1_zee.transpose());
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  LindbladSystem ls;
  ls.provenance = Provenance::hadamard_t1;
  if (!merge_degenerate) {
    for (Eigen::Index j = 0; j < 4; ++j)
      for (Eigen::Index k = j + 1; k < 4; ++k) {
        const double rate = -r(j, k);
        if (rate <= 1e-12 * scale) continue;
        for (auto [a, b] : {std::pair{k, j}, std::pair{j, k}}) {
          CMat op = CMat::Zero(4, 4);
          op(a, b) = std::sqrt(rate);
          ls.operators.push_back(std::move(op));
          ls.weights.push_back(rate);
        }
      }
    return ls;
  }
  for (const auto& group : detail::flip_groups()) {
    const double ra = -r(group.pairs[0].first, group.pairs[0].second);
    const double rb = -r(group.pairs[1].first, group.pairs[1].second);
    const double mean = 0.5 * (ra + rb);
    if (mean <= 1e-12 * scale) continue;
    if (std::abs(ra - rb) > merge_spread_tol * mean)
      throw invariant_error("t1_lindblads: rate spread exceeds merge threshold");
    for (const CMat& op : group.ops) {
      ls.operators.push_back(std::sqrt(mean) * op);
      ls.weights.push_back(mean);
    }
  }
  return ls;
}

// Mean population decay rate spread over {sz1/2, sz2/2, sz1 sz2/2}. The
// identity mode carries no dissipator and is dropped.
inline LindbladSystem nonadiabatic_t2_lindblads(const RMat& r_t1_zee) {
  detail::require_t1_matrix(r_t1_zee);
  const double mean = r_t1_zee.diagonal().mean();
  const double scale = std::max(1.0, r_t1_zee.cwiseAbs().maxCoeff());
  LindbladSystem ls;
  ls.provenance = Provenance::hadamard_t2_nonadiabatic;
  if (mean <= 1e-12 * scale) return ls;
  const double amp = std::sqrt(mean);
  const std::array<CMat, 3> ops = {spin1(sigma_z()), spin2(sigma_z()),
                                   CMat(spin1(sigma_z()) * spin2(sigma_z()))};
  for (const CMat& op : ops) {
    ls.operators.push_back(amp * 0.5 * op);
    ls.weights.push_back(mean);
  }
  return ls;
}

// Coherence decay rates generated by diagonal Lindblads:
// R(j,k) = sum_l (l_j - l_k)^2 / 2. Zero diagonal by construction.
inline HadamardRelaxationMatrix hadamard_matrix_of_diagonal_lindblads(
    const LindbladSystem& ls) {
  if (ls.operators.empty())
    throw invariant_error("hadamard_matrix_of_diagonal_lindblads: empty system");
  const auto n = ls.operators.front().rows();
  RMat rates = RMat::Zero(n, n);
  for (const CMat& op : ls.operators) {
    if (op.rows() != n || op.cols() != n)
      throw invariant_error(
          "hadamard_matrix_of_diagonal_lindblads: mixed dimensions");
    const double scale = std::max(1.0, op.norm());
    if ((op - CMat(op.diagonal().asDiagonal())).norm() > 1e-12 * scale)
      throw invariant_error(
          "hadamard_matrix_of_diagonal_lindblads: operator is not diagonal");
    if (op.diagonal().imag().norm() > 1e-9 * scale)
      throw invariant_error(
          "hadamard_matrix_of_diagonal_lindblads: operator is not real");
    const RVec l = op.diagonal().real();
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        rates(j, k) += 0.5 * (l(j) - l(k)) * (l(j) - l(k));
  }
  return {static_cast<int>(n), std::move(rates), true};
}

// Entrywise decay-rate matrix R(j,k) read off the superoperator diagonal of
// the reported Zeeman relaxation matrix, diagonal zeroed, centrosymmetrized.
inline HadamardRelaxationMatrix t2_diag_matrix(const CMat& r_zee,
                                               double imag_tol = 1e-6) {
  require_square(r_zee, "t2_diag_matrix");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(r_zee.rows()))));
  if (n * n != r_zee.rows())
    throw invariant_error("t2_diag_matrix: size is not a perfect square");
  const double scale = std::max(1.0, r_zee.norm());
  RMat rates(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const cx d = r_zee(k * n + j, k * n + j);
      if (std::abs(d.imag()) > imag_tol * scale)
        throw invariant_error("t2_diag_matrix: complex decay rate");
      rates(j, k) = d.real();
    }
  rates.diagonal().setZero();
  return {static_cast<int>(n), centrosymmetrize(rates), true};
}

// Diagonal (adiabatic) Lindblads of the dephasing excess r_t2 - r_na:
// eigenpairs of -E (r_t2 - r_na) E with E = I - ones/n. Eigenvalues are the
// weights; eigenvectors, scaled by sqrt(weight), are the operator diagonals.
inline LindbladSystem adiabatic_decomposition(
    const HadamardRelaxationMatrix& r_t2_zee,
    const HadamardRelaxationMatrix& r_t2_na, double tol = 1e-8) {
  if (r_t2_zee.n != r_t2_na.n)
    throw invariant_error("adiabatic_decomposition: dimension mismatch");
  if (!r_t2_zee.zero_diagonal || !r_t2_na.zero_diagonal)
    throw invariant_error("adiabatic_decomposition: diagonals must be zero");
  const auto n = static_cast<Eigen::Index>(r_t2_zee.n);
  const RMat ad = r_t2_zee.rates - r_t2_na.rates;
  const RMat e = RMat::Identity(n, n) -
                 RMat::Ones(n, n) / static_cast<double>(n);
  const RMat m = -e * (0.5 * (ad + ad.transpose())) * e;
  const EigenDecomposition d = eig(m.cast<cx>(), true);
  const double top = std::max(1.0, d.values.cwiseAbs().maxCoeff());
  LindbladSystem ls;
  ls.provenance = Provenance::hadamard_t2_adiabatic;
  for (Eigen::Index k = 0; k < d.values.size(); ++k) {
    const double mu = d.values(k).real();
    if (mu < -10.0 * tol * top)
      throw invariant_error(
          "adiabatic_decomposition: dephasing excess is not completely positive");
    if (mu <= tol * top) continue;
    RVec v = d.vectors.col(k).real();
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(v(i)) > 1e-8) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    ls.operators.push_back(
        CMat((std::sqrt(mu) * v).cast<cx>().asDiagonal()));
    ls.weights.push_back(mu);
  }
  return ls;
}

// Relative squared misfit of the diagonal + population model.
inline double hadamard_discrepancy(const CMat& r_zee, const RMat& r_t1,
                                   const RMat& r_t2) {
  const auto n = r_t1.rows();
  if (r_zee.rows() != n * n || r_t2.rows() != n)
    throw invariant_error("hadamard_discrepancy: dimension mismatch");
  CMat model = CMat::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      model(k * n + j, k * n + j) = r_t2(j, k);
      model(j * n + j, k * n + k) += r_t1(j, k);
    }
  const double denom = r_zee.squaredNorm();
  if (!(denom > 0.0))
    throw invariant_error("hadamard_discrepancy: zero relaxation matrix");
  return (r_zee - model).squaredNorm() / denom;
}

struct RelaxationDecomposition {
  RMat r_t1_tra;  // transition-basis population block, as extracted
  RMat r_t1_zee;  // reported Zeeman population block, symmetrized
  HadamardRelaxationMatrix r_t2_zee;
  HadamardRelaxationMatrix r_t2_na;
  HadamardRelaxationMatrix r_t2_ad;
  LindbladSystem t1;
  LindbladSystem t2_nonadiabatic;
  LindbladSystem t2_adiabatic;
  double discrepancy = 0.0;
};

// Full pipeline for a two-spin generator. The population block is transpose-
// and centrosymmetrized before rates are read off, mirroring the detailed
// balance and Hadamard structure the model asserts; `discrepancy` measures
// how much of the input the asserted structure misses.
inline RelaxationDecomposition decompose_relaxation(const Supergenerator& g,
                                                    bool merge_degenerate = true) {
  if (g.n != 4)
    throw invariant_error("decompose_relaxation: requires a two-spin system");
  validate(g);
  RelaxationDecomposition d;
  const CMat r_comp = relaxation_in_computational_coordinates(g);
  const CMat s_rep = 2.0 * r_comp;
  const CMat r_tra = change_superoperator_coordinates(
      r_comp, zeeman_basis(4), transition_basis());
  d.r_t1_tra = extract_t1_block(r_tra);

  RMat pop(4, 4);
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index k = 0; k < 4; ++k)
      pop(j, k) = s_rep(j * 4 + j, k * 4 + k).real();
  d.r_t1_zee = centrosymmetrize(0.5 * (pop + pop.transpose()));

  d.t1 = t1_lindblads(d.r_t1_zee, merge_degenerate);
  d.t2_nonadiabatic = nonadiabatic_t2_lindblads(d.r_t1_zee);
  d.r_t2_na = d.t2_nonadiabatic.operators.empty()
                  ? HadamardRelaxationMatrix{4, RMat::Zero(4, 4), true}
                  : hadamard_matrix_of_diagonal_lindblads(d.t2_nonadiabatic);
  d.r_t2_zee = t2_diag_matrix(s_rep);
  d.r_t2_ad = {4, d.r_t2_zee.rates - d.r_t2_na.rates, true};
  d.t2_adiabatic = adiabatic_decomposition(d.r_t2_zee, d.r_t2_na);
  d.discrepancy = s_rep.squaredNorm() > 0.0
                      ? hadamard_discrepancy(s_rep, d.r_t1_zee, d.r_t2_zee.rates)
                      : 0.0;
  return d;
}

}  // namespace qpt
