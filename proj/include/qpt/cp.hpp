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

#include "qpt/liouville.hpp"
#include "qpt/matrix_functions.hpp"

namespace qpt {

// -- Choi form ------------------------------------------------------------

enum class ChoiSource { propagator, generator };

struct ChoiMatrix {
  int n = 0;
  CMat matrix;
  ChoiSource source = ChoiSource::propagator;
};

// Index pairing C[p*N+q, r*N+s] = S[s*N+q, r*N+p]; an exact involution.
// Eigenvectors of the Choi matrix are column-stacked (Kraus or Lindblad)
// operators under the vec convention of liouville.hpp.
inline CMat choi_reshuffle(const CMat& s) {
  require_square(s, "choi_reshuffle");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(s.rows()))));
  if (n * n != s.rows())
    throw invariant_error("choi_reshuffle: size is not a perfect square");
  CMat c(s.rows(), s.cols());
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index t = 0; t < n; ++t)
          c(p * n + q, r * n + t) = s(t * n + q, r * n + p);
  return c;
}

inline ChoiMatrix choi_from_supermatrix(const CMat& s,
                                        ChoiSource source = ChoiSource::propagator) {
  ChoiMatrix c;
  c.n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  c.matrix = choi_reshuffle(s);
  c.source = source;
  return c;
}

// -- Lindblad and Kraus systems --------------------------------------------

enum class Provenance {
  spectral,
  hadamard_t1,
  hadamard_t2_nonadiabatic,
  hadamard_t2_adiabatic,
};

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::spectral: return "spectral";
    case Provenance::hadamard_t1: return "hadamard_t1";
    case Provenance::hadamard_t2_nonadiabatic: return "hadamard_t2_nonadiabatic";
    case Provenance::hadamard_t2_adiabatic: return "hadamard_t2_adiabatic";
  }
  throw invariant_error("to_string: unknown provenance");
}

// Operators carry their full scale (sqrt(rate) included); weights duplicate
// the squared Frobenius norms for reporting.
struct LindbladSystem {
  std::vector<CMat> operators;
  std::vector<double> weights;
  Provenance provenance = Provenance::spectral;
};

struct KrausDecomposition {
  std::vector<CMat> operators;
  std::vector<double> weights;  // Choi eigenvalues
};

// -- supergenerator ---------------------------------------------------------

// Full generator G = i*Hbar + Rbar acting as d/dt coeffs(rho) = -G coeffs(rho).
// Both parts are plain coordinate representations in `basis`; the doubled
// rate-reporting convention of convert_superoperator never enters here.
struct Supergenerator {
  int n = 0;
  CMat hamiltonian_part;  // Hbar, the commutation superoperator
  CMat relaxation_part;   // Rbar
  BasisName basis = BasisName::zeeman;

  CMat full_generator() const { return im * hamiltonian_part + relaxation_part; }
};

inline CVec basis_trace_row(const Supergenerator& g) {
  return trace_functional(make_basis(g.basis, g.n));
}

inline void validate(const Supergenerator& g, double trace_tol = 1e-8) {
  const auto dim = static_cast<Eigen::Index>(g.n) * g.n;
  if (g.n < 2 || g.hamiltonian_part.rows() != dim ||
      g.hamiltonian_part.cols() != dim || g.relaxation_part.rows() != dim ||
      g.relaxation_part.cols() != dim)
    throw invariant_error("supergenerator: inconsistent dimensions");
  const CVec tau = basis_trace_row(g);
  const double scale = std::max(1.0, g.relaxation_part.norm());
  const double leak = (tau.transpose() * g.full_generator()).cwiseAbs().maxCoeff();
  if (leak > trace_tol * scale)
    throw invariant_error("supergenerator: trace preservation violated");
}

inline CMat relaxation_in_computational_coordinates(const Supergenerator& g) {
  if (g.basis == BasisName::zeeman) return g.relaxation_part;
  return change_superoperator_coordinates(
      g.relaxation_part, make_basis(g.basis, g.n), zeeman_basis(g.n));
}

// -- complete positivity -----------------------------------------------------

// E C(-Rbar) E with E the projector orthogonal to vec(I)/sqrt(N), computed in
// computational coordinates. PSD iff Rbar is the dissipator of some Lindblad
// system; the kernel direction never contributes for trace-preserving input.
inline CMat projected_choi(const Supergenerator& g, double trace_tol = 1e-8) {
  const CMat r = relaxation_in_computational_coordinates(g);
  const auto dim = r.rows();
  const CVec v = vec(CMat::Identity(g.n, g.n));
  const double scale = std::max(1.0, r.norm());
  if ((v.transpose() * r).cwiseAbs().maxCoeff() > trace_tol * scale)
    throw invariant_error("projected_choi: trace preservation violated");
  const CMat e = CMat::Identity(dim, dim) -
                 (v * v.adjoint()) / static_cast<double>(g.n);
  const CMat c = choi_reshuffle(-r);
  return e * c * e;
}

inline double cp_penalty(const Supergenerator& g) {
  return negative_eigenvalue_penalty(projected_choi(g));
}

namespace detail {

// Phase and sign normalization: rotate to maximize the Hermitian part
// (tr L^2 positive real), then pin the sign on the dominant diagonal of
// L + L^dagger; nilpotent cases pin the dominant entry of L itself.
inline CMat normalize_lindblad_phase(CMat l) {
  const double scale = l.norm();
  if (scale <= 0.0) return l;
  const cx w = (l * l).trace();
  if (std::abs(w) > 1e-12 * scale * scale) {
    l *= std::exp(im * (-std::arg(w) / 2.0));
    const CMat h = l + l.adjoint();
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index d = 0; d < h.rows(); ++d)
      if (std::abs(h(d, d)) > best) {
        best = std::abs(h(d, d));
        pivot = d;
      }
    if (best > 1e-12 * scale) {
      if (h(pivot, pivot).real() < 0.0) l = -l;
      return l;
    }
    Eigen::Index pi = 0, pj = 0;
    best = -1.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j)
        if (std::abs(h(i, j)) > best) {
          best = std::abs(h(i, j));
          pi = i;
          pj = j;
        }
    const cx e = h(pi, pj);
    if (e.real() < 0.0 || (e.real() == 0.0 && e.imag() < 0.0)) l = -l;
    return l;
  }
  Eigen::Index pi = 0, pj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    for (Eigen::Index j = 0; j < l.cols(); ++j)
      if (std::abs(l(i, j)) > best) {
        best = std::abs(l(i, j));
        pi = i;
        pj = j;
      }
  l *= std::conj(l(pi, pj)) / std::abs(l(pi, pj));
  return l;
}

}  // namespace detail

// Spectral decomposition of the projected Choi matrix. Eigenvalue cut and the
// not-completely-positive threshold are both tol * max(trace, 1).
inline LindbladSystem lindblads_from_generator(const Supergenerator& g,
                                               double tol = 1e-8) {
  const CMat pc = projected_choi(g);
  const double scale = std::max(1.0, pc.norm());
  if ((pc - pc.adjoint()).norm() > 1e-8 * scale)
    throw invariant_error(
        "lindblads_from_generator: relaxation does not preserve Hermiticity");
  const EigenDecomposition d = eig(0.5 * (pc + pc.adjoint()), true);
  const double trace = std::max(pc.trace().real(), 0.0);
  const double cut = tol * std::max(trace, 1.0);
  LindbladSystem ls;
  ls.provenance = Provenance::spectral;
  for (Eigen::Index k = 0; k < d.values.size(); ++k) {
    const double lambda = d.values(k).real();
    if (lambda < -cut)
      throw invariant_error(
          "lindblads_from_generator: generator is not completely positive");
    if (lambda <= cut) continue;
    const CMat l = detail::normalize_lindblad_phase(
        unvec(std::sqrt(lambda) * d.vectors.col(k)));
    ls.operators.push_back(l);
    ls.weights.push_back(lambda);
  }
  return ls;
}

inline CMat lindblad_dissipator(const CMat& l) {
  require_square(l, "lindblad_dissipator");
  const CMat id = CMat::Identity(l.rows(), l.cols());
  const CMat ll = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ll) -
         0.5 * kron(ll.transpose(), id);
}

// Supermatrix of rho -> sum_k L rho L^dag - {L^dag L, rho}/2, computational
// coordinates. The matching relaxation part is the negative of this.
inline CMat dissipator_from_lindblads(const LindbladSystem& ls) {
  if (ls.operators.empty())
    throw invariant_error("dissipator_from_lindblads: empty system");
  const auto n = ls.operators.front().rows();
  CMat d = CMat::Zero(n * n, n * n);
  for (const CMat& l : ls.operators) {
    if (l.rows() != n || l.cols() != n)
      throw invariant_error("dissipator_from_lindblads: mixed dimensions");
    d += lindblad_dissipator(l);
  }
  return d;
}

// -- propagator-level CP structure -------------------------------------------

inline KrausDecomposition kraus_from_propagator(const CMat& p,
                                                double tol = 1e-8) {
  const CMat c = choi_reshuffle(p);
  const double scale = std::max(1.0, c.norm());
  if ((c - c.adjoint()).norm() > 1e-8 * scale)
    throw invariant_error(
        "kraus_from_propagator: propagator does not preserve Hermiticity");
  const EigenDecomposition d = eig(0.5 * (c + c.adjoint()), true);
  KrausDecomposition kd;
  for (Eigen::Index k = 0; k < d.values.size(); ++k) {
    const double lambda = d.values(k).real();
    if (lambda < -tol)
      throw invariant_error(
          "kraus_from_propagator: propagator is not completely positive");
    if (lambda <= tol) continue;
    kd.operators.push_back(unvec(std::sqrt(lambda) * d.vectors.col(k)));
    kd.weights.push_back(lambda);
  }
  return kd;
}

// Projects the Choi matrix onto the PSD cone and reshuffles back. Idempotent;
// trace preservation is not re-imposed, so the result may deviate from a
// quantum channel exactly where the input did.
inline CMat cp_filter_propagator(const CMat& p) {
  return choi_reshuffle(psd_project(choi_reshuffle(p)));
}

}  // namespace qpt
