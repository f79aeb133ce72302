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

#include <cmath>
#include <string>
#include <vector>

#include "qpt/matrix.hpp"

namespace qpt {

// Column stacking: vec(m)[k*N + i] = m(i, k), so vec(A X B) = (B^T (x) A) vec(X).
inline CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

inline CMat unvec(const CVec& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(v.size()))));
  if (n * n != v.size())
    throw invariant_error("unvec: length is not a perfect square");
  return Eigen::Map<const CMat>(v.data(), n, n);
}

// Superoperator of rho -> [h, rho]. Hermiticity of h is a precondition;
// the result annihilates vec(I) from the left.
inline CMat commutation_superoperator(const CMat& h, double herm_tol = 1e-9) {
  require_hermitian(h, "commutation_superoperator", herm_tol);
  const CMat id = CMat::Identity(h.rows(), h.cols());
  return kron(id, h) - kron(h.transpose(), id);
}

inline CMat apply_superoperator(const CMat& s, const CMat& rho) {
  if (s.rows() != s.cols() || s.rows() != rho.size())
    throw invariant_error("apply_superoperator: dimension mismatch");
  return unvec(s * vec(rho));
}

// -- two-spin operators -------------------------------------------------

inline const CMat& sigma_x() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  return m;
}

inline const CMat& sigma_y() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 0, -im, im, 0;
    return s;
  }();
  return m;
}

inline const CMat& sigma_z() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

// Spin 1 is the left Kronecker factor: |s1 s2> with s1 the high bit.
inline CMat spin1(const CMat& op) { return kron(op, CMat::Identity(2, 2)); }
inline CMat spin2(const CMat& op) { return kron(CMat::Identity(2, 2), op); }

struct TwoSpinHamiltonian {
  double nu1_hz = 0.0;  // chemical-shift offset of spin 1
  double j_hz = 0.0;    // scalar coupling
};

// H = pi * (nu1 * sz1 + (J/2) * (sx1 sx2 + sy1 sy2 + sz1 sz2)), in rad/s.
inline CMat two_spin_hamiltonian(const TwoSpinHamiltonian& spec) {
  const CMat dot = spin1(sigma_x()) * spin2(sigma_x()) +
                   spin1(sigma_y()) * spin2(sigma_y()) +
                   spin1(sigma_z()) * spin2(sigma_z());
  return pi * (spec.nu1_hz * spin1(sigma_z()) + 0.5 * spec.j_hz * dot);
}

// -- operator bases ------------------------------------------------------

enum class BasisName { cartesian, transition, zeeman };

inline std::string to_string(BasisName b) {
  switch (b) {
    case BasisName::cartesian: return "cartesian";
    case BasisName::transition: return "transition";
    case BasisName::zeeman: return "zeeman";
  }
  throw invariant_error("to_string: unknown basis");
}

inline BasisName basis_from_string(const std::string& s) {
  if (s == "cartesian") return BasisName::cartesian;
  if (s == "transition") return BasisName::transition;
  if (s == "zeeman") return BasisName::zeeman;
  throw parse_error("unknown basis name: " + s);
}

// Elements are stored unnormalized; normalization lives in the frame below.
// superop_weight is the norm factor used by convert_superoperator when
// reporting rate matrices across bases (Hermitian product bases carry 2).
struct OperatorBasis {
  BasisName name;
  int n = 0;  // Hilbert-space dimension; n*n elements
  std::vector<CMat> elements;
  std::vector<int> coherence_orders;  // filled for the transition basis only
  double superop_weight = 1.0;
};

// Matrix units |i><k| ordered so that the coefficient vector of rho is
// exactly vec(rho).
inline OperatorBasis zeeman_basis(int n) {
  if (n < 1) throw invariant_error("zeeman_basis: dimension must be positive");
  OperatorBasis b;
  b.name = BasisName::zeeman;
  b.n = n;
  b.elements.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      CMat e = CMat::Zero(n, n);
      e(i, k) = 1.0;
      b.elements.push_back(std::move(e));
    }
  b.superop_weight = 1.0;
  return b;
}

// Hermitian two-spin basis sorted by coherence order: six zero-quantum
// elements, eight single-quantum, two double-quantum.
inline OperatorBasis transition_basis() {
  OperatorBasis b;
  b.name = BasisName::transition;
  b.n = 4;
  const CMat x1 = spin1(sigma_x()), y1 = spin1(sigma_y()), z1 = spin1(sigma_z());
  const CMat x2 = spin2(sigma_x()), y2 = spin2(sigma_y()), z2 = spin2(sigma_z());
  b.elements = {
      CMat::Identity(4, 4),
      z1,
      z2,
      z1 * z2,
      x1 * x2 + y1 * y2,
      x1 * y2 - y1 * x2,
      x1,
      y1,
      x2,
      y2,
      x1 * z2,
      y1 * z2,
      z1 * x2,
      z1 * y2,
      x1 * x2 - y1 * y2,
      x1 * y2 + y1 * x2,
  };
  b.coherence_orders = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2};
  b.superop_weight = 2.0;
  return b;
}

// All sixteen Pauli products sa (x) sb, first-spin factor major.
inline OperatorBasis cartesian_basis() {
  OperatorBasis b;
  b.name = BasisName::cartesian;
  b.n = 4;
  const std::vector<CMat> single = {CMat::Identity(2, 2), sigma_x(), sigma_y(),
                                    sigma_z()};
  for (const CMat& a : single)
    for (const CMat& c : single) b.elements.push_back(kron(a, c));
  b.superop_weight = 2.0;
  return b;
}

inline OperatorBasis make_basis(BasisName name, int n = 4) {
  switch (name) {
    case BasisName::zeeman: return zeeman_basis(n);
    case BasisName::transition:
      if (n != 4) throw invariant_error("transition basis requires n = 4");
      return transition_basis();
    case BasisName::cartesian:
      if (n != 4) throw invariant_error("cartesian basis requires n = 4");
      return cartesian_basis();
  }
  throw invariant_error("make_basis: unknown basis");
}

// Columns are the vectorized, Frobenius-normalized elements. Unitary for
// every complete trace-orthogonal basis; the Zeeman frame is the identity.
inline CMat basis_frame(const OperatorBasis& b) {
  const auto dim = static_cast<Eigen::Index>(b.n) * b.n;
  if (static_cast<Eigen::Index>(b.elements.size()) != dim)
    throw invariant_error("basis_frame: basis is incomplete");
  CMat q(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const CMat& e = b.elements[static_cast<std::size_t>(k)];
    const double norm = e.norm();
    if (norm <= 0.0) throw invariant_error("basis_frame: zero basis element");
    q.col(k) = vec(e) / norm;
  }
  if (!is_unitary(q, 1e-9))
    throw invariant_error("basis_frame: basis is not trace-orthogonal");
  return q;
}

// Unitary taking coefficient vectors in `from` to coefficient vectors in `to`.
inline CMat basis_change_matrix(const OperatorBasis& from,
                                const OperatorBasis& to) {
  if (from.n != to.n)
    throw invariant_error("basis_change_matrix: dimension mismatch");
  return basis_frame(to).adjoint() * basis_frame(from);
}

// Plain coordinate change of a superoperator; preserves dynamics exactly.
inline CMat change_superoperator_coordinates(const CMat& s,
                                             const OperatorBasis& from,
                                             const OperatorBasis& to) {
  const auto dim = static_cast<Eigen::Index>(from.n) * from.n;
  if (s.rows() != dim || s.cols() != dim)
    throw invariant_error("change_superoperator_coordinates: size mismatch");
  const CMat u = basis_change_matrix(from, to);
  return u * s * u.adjoint();
}

// Rate-matrix reporting congruence: plain coordinate change scaled by the
// basis norm weights, factor 2 for transition -> Zeeman. Round trips are
// exact. Not for propagators or Hamiltonian parts.
inline CMat convert_superoperator(const CMat& s, const OperatorBasis& from,
                                  const OperatorBasis& to) {
  return (from.superop_weight / to.superop_weight) *
         change_superoperator_coordinates(s, from, to);
}

// Row functional with tr(X) = trace_functional(b)^T * coeffs(X). A generator
// expressed in basis b preserves trace iff this row annihilates it.
inline CVec trace_functional(const OperatorBasis& b) {
  const auto dim = static_cast<Eigen::Index>(b.n) * b.n;
  CVec t(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const CMat& e = b.elements[static_cast<std::size_t>(k)];
    t(k) = e.trace() / e.norm();
  }
  return t;
}

}  // namespace qpt
