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
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpt/cp.hpp"
#include "qpt/nelder_mead.hpp"

namespace qpt {

// -- datasets ---------------------------------------------------------------

struct StatePair {
  CMat input;
  CMat output;
};

// Snapshots of one process at several evolution times, in computational
// coordinates: either measured superpropagators or prepared/evolved state
// pairs, never both.
struct TomographyDataset {
  int n = 0;
  CMat hamiltonian;  // N x N, computational basis
  std::vector<double> times;
  std::vector<CMat> propagators;
  std::vector<std::vector<StatePair>> state_pairs;
  bool noiseless = true;
};

inline void validate(const TomographyDataset& ds, double state_tol = 1e-6) {
  if (ds.n < 2) throw invariant_error("dataset: dimension must be at least 2");
  const auto dim = static_cast<Eigen::Index>(ds.n) * ds.n;
  require_hermitian(ds.hamiltonian, "dataset hamiltonian", 1e-9);
  if (ds.hamiltonian.rows() != ds.n)
    throw invariant_error("dataset: hamiltonian dimension mismatch");
  if (ds.times.empty()) throw invariant_error("dataset: no evolution times");
  double prev = 0.0;
  for (double t : ds.times) {
    if (!(t > prev))
      throw invariant_error("dataset: times must be positive and increasing");
    prev = t;
  }
  const bool has_props = !ds.propagators.empty();
  const bool has_pairs = !ds.state_pairs.empty();
  if (has_props == has_pairs)
    throw invariant_error(
        "dataset: exactly one of propagators or state pairs is required");
  if (has_props) {
    if (ds.propagators.size() != ds.times.size())
      throw invariant_error("dataset: one propagator per time required");
    for (const CMat& p : ds.propagators)
      if (p.rows() != dim || p.cols() != dim || !p.allFinite())
        throw invariant_error("dataset: malformed propagator");
    return;
  }
  if (ds.state_pairs.size() != ds.times.size())
    throw invariant_error("dataset: one state-pair block per time required");
  for (const auto& block : ds.state_pairs) {
    if (block.empty()) throw invariant_error("dataset: empty state-pair block");
    for (const StatePair& sp : block)
      for (const CMat* rho : {&sp.input, &sp.output}) {
        if (rho->rows() != ds.n || rho->cols() != ds.n)
          throw invariant_error("dataset: state dimension mismatch");
        if (!is_hermitian(*rho, state_tol))
          throw invariant_error("dataset: state is not Hermitian");
        if (std::abs(rho->trace().real() - 1.0) > state_tol)
          throw invariant_error("dataset: state trace is not 1");
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (*rho + rho->adjoint()));
        if (es.eigenvalues().minCoeff() < -state_tol)
          throw invariant_error("dataset: state is not positive semidefinite");
      }
  }
}

inline bool has_doubling_grid(const TomographyDataset& ds,
                              double rel_tol = 1e-9) {
  for (std::size_t m = 0; m + 1 < ds.times.size(); ++m)
    if (std::abs(ds.times[m + 1] - 2.0 * ds.times[m]) > rel_tol * ds.times[m + 1])
      return false;
  return true;
}

// Least-squares superpropagator from prepared inputs and evolved outputs.
// The preparations must span operator space.
inline CMat propagator_from_state_pairs(const std::vector<StatePair>& pairs) {
  if (pairs.empty())
    throw invariant_error("propagator_from_state_pairs: no pairs");
  const auto n = pairs.front().input.rows();
  const auto dim = n * n;
  CMat x(dim, static_cast<Eigen::Index>(pairs.size()));
  CMat y(dim, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    x.col(static_cast<Eigen::Index>(k)) = vec(pairs[k].input);
    y.col(static_cast<Eigen::Index>(k)) = vec(pairs[k].output);
  }
  Eigen::ColPivHouseholderQR<CMat> qr(x.transpose());
  if (qr.rank() < dim)
    throw invariant_error(
        "propagator_from_state_pairs: preparations do not span operator space");
  return qr.solve(y.transpose()).transpose();
}

inline CMat dataset_propagator(const TomographyDataset& ds, std::size_t m) {
  if (m >= ds.times.size())
    throw invariant_error("dataset_propagator: time index out of range");
  if (!ds.propagators.empty()) return ds.propagators[m];
  return propagator_from_state_pairs(ds.state_pairs[m]);
}

// -- direct estimators --------------------------------------------------------

// Principal-branch estimate from a single snapshot. Valid only while the full
// generator spectrum stays inside the branch cut; fast precessions alias.
inline Supergenerator naive_log_estimate(const TomographyDataset& ds,
                                         std::size_t index = 0) {
  validate(ds);
  if (index >= ds.times.size())
    throw invariant_error("naive_log_estimate: time index out of range");
  const double t = ds.times[index];
  const CMat hbar = commutation_superoperator(ds.hamiltonian);
  const CMat l = logm_principal(dataset_propagator(ds, index));
  Supergenerator g;
  g.n = ds.n;
  g.hamiltonian_part = hbar;
  g.relaxation_part = (-l / t) - im * hbar;
  g.basis = BasisName::zeeman;
  return g;
}

// Richardson extrapolation on a doubling time grid. Each snapshot enters
// through the centered, Hamiltonian-recentered difference
//   F(t) = [W(t) P(t) W(t) - W(-t) P(t)^-1 W(-t)] / (2t),  W(t) = exp(i t Hbar / 2),
// which is odd in t, so the error series is even and each tableau level
// cancels one t^2 order. Exact whenever Hbar and Rbar commute.
inline Supergenerator richardson_estimate(const TomographyDataset& ds) {
  validate(ds);
  if (!has_doubling_grid(ds))
    throw invariant_error("richardson_estimate: times must form a doubling grid");
  const CMat hbar = commutation_superoperator(ds.hamiltonian);
  const std::size_t m_count = ds.times.size();
  std::vector<CMat> tableau(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double t = ds.times[m];
    const CMat p = dataset_propagator(ds, m);
    const CMat p_inv = p.inverse();
    if (!p_inv.allFinite())
      throw numerical_error("richardson_estimate: singular propagator");
    const CMat w_plus = expm(hbar, im * (t / 2.0));
    const CMat w_minus = expm(hbar, -im * (t / 2.0));
    tableau[m] = (w_plus * p * w_plus - w_minus * p_inv * w_minus) / (2.0 * t);
  }
  for (std::size_t level = 1; level < m_count; ++level) {
    const double factor = std::pow(4.0, static_cast<double>(level)) - 1.0;
    for (std::size_t m = 0; m + level < m_count; ++m)
      tableau[m] += (tableau[m] - tableau[m + 1]) / factor;
  }
  if (!tableau[0].allFinite())
    throw numerical_error("richardson_estimate: extrapolation diverged");
  Supergenerator g;
  g.n = ds.n;
  g.hamiltonian_part = hbar;
  g.relaxation_part = -tableau[0];
  g.basis = BasisName::zeeman;
  return g;
}

// Per-snapshot eigendecomposition: decay rates from eigenvalue moduli,
// rebuilt on the snapshot's own eigenvectors, averaged over times. Robust to
// phase aliasing; requires diagonalizable propagators.
inline Supergenerator eigenlog_average_estimate(const TomographyDataset& ds,
                                                double defect_tol = 1e-6) {
  validate(ds);
  const CMat hbar = commutation_superoperator(ds.hamiltonian);
  const auto dim = static_cast<Eigen::Index>(ds.n) * ds.n;
  CMat sum = CMat::Zero(dim, dim);
  for (std::size_t m = 0; m < ds.times.size(); ++m) {
    const CMat p = dataset_propagator(ds, m);
    const EigenDecomposition d = eig(p, false);
    const CMat vinv = d.vectors.inverse();
    if (!vinv.allFinite() ||
        (d.vectors * d.values.asDiagonal() * vinv - p).norm() >
            defect_tol * std::max(1.0, p.norm()))
      throw numerical_error(
          "eigenlog_average_estimate: defective propagator eigenbasis");
    CVec rates(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double mag = std::abs(d.values(k));
      if (mag <= 1e-13)
        throw numerical_error("eigenlog_average_estimate: vanishing eigenvalue");
      rates(k) = -std::log(mag) / ds.times[m];
    }
    sum += d.vectors * rates.asDiagonal() * vinv;
  }
  Supergenerator g;
  g.n = ds.n;
  g.hamiltonian_part = hbar;
  g.relaxation_part = sum / static_cast<double>(ds.times.size());
  g.basis = BasisName::zeeman;
  return g;
}

// -- constrained fit -----------------------------------------------------------

enum class FitStructure { full_symmetric, redfield_kite, none };

inline std::string to_string(FitStructure s) {
  switch (s) {
    case FitStructure::full_symmetric: return "full_symmetric";
    case FitStructure::redfield_kite: return "redfield_kite";
    case FitStructure::none: return "none";
  }
  throw invariant_error("to_string: unknown fit structure");
}

struct FitConfig {
  std::optional<double> penalty_weight;  // default: 1e3 * chi2(seed) / penalty(seed)
  int max_iterations = 20000;
  double simplex_tolerance = 1e-9;
  FitStructure structure = FitStructure::redfield_kite;
  bool detailed_balance = true;
  bool border_identity_row = true;
  std::optional<Supergenerator> seed_generator;  // default: richardson
};

struct FitReport {
  Supergenerator estimate;  // computational coordinates
  double chi_squared = 0.0;
  double penalty_at_solution = 0.0;
  int iterations = 0;
  std::string method;
  std::vector<double> residual_per_time;
  RVec parameters;  // transition-basis structure parameters
  bool converged = false;
};

// Free transition-basis matrix positions of a structure. Symmetric
// parameterizations list the upper triangle only and mirror on expansion.
inline std::vector<std::pair<int, int>> structure_positions(
    FitStructure structure, bool detailed_balance, bool border_identity_row) {
  const bool symmetric =
      structure == FitStructure::full_symmetric || detailed_balance;
  std::vector<std::vector<int>> blocks;
  if (structure == FitStructure::redfield_kite) {
    blocks = {{1, 2, 3}, {4, 5}, {6, 7, 8, 9, 10, 11, 12, 13}, {14, 15}};
  } else {
    std::vector<int> all;
    for (int i = border_identity_row ? 1 : 0; i < 16; ++i) all.push_back(i);
    blocks = {all};
  }
  std::vector<std::pair<int, int>> positions;
  for (const auto& block : blocks)
    for (int i : block)
      for (int j : block) {
        if (symmetric && j < i) continue;
        positions.emplace_back(i, j);
      }
  return positions;
}

inline bool structure_is_symmetric(const FitConfig& cfg) {
  return cfg.structure == FitStructure::full_symmetric || cfg.detailed_balance;
}

inline CMat relaxation_from_parameters(
    const RVec& p, const std::vector<std::pair<int, int>>& positions,
    bool symmetric) {
  if (p.size() != static_cast<Eigen::Index>(positions.size()))
    throw invariant_error("relaxation_from_parameters: size mismatch");
  CMat r = CMat::Zero(16, 16);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto [i, j] = positions[k];
    r(i, j) = p(static_cast<Eigen::Index>(k));
    if (symmetric && i != j) r(j, i) = p(static_cast<Eigen::Index>(k));
  }
  return r;
}

// Projection of a transition-basis relaxation matrix onto the structure
// parameters (symmetric positions average the mirrored entries).
inline RVec parameters_from_relaxation(
    const CMat& r_tra, const std::vector<std::pair<int, int>>& positions,
    bool symmetric) {
  if (r_tra.rows() != 16 || r_tra.cols() != 16)
    throw invariant_error("parameters_from_relaxation: expected 16x16");
  RVec p(static_cast<Eigen::Index>(positions.size()));
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const auto [i, j] = positions[k];
    double v = r_tra(i, j).real();
    if (symmetric && i != j) v = 0.5 * (v + r_tra(j, i).real());
    p(static_cast<Eigen::Index>(k)) = v;
  }
  return p;
}

// Simplex fit of a structured transition-basis relaxation matrix against the
// snapshots, with a projected-Choi negativity penalty enforcing complete
// positivity. chi^2 is the summed squared Frobenius misfit of the predicted
// propagators. Trace preservation holds by construction for bordered
// structures. penalty_weight = 0 disables the constraint.
inline FitReport cp_constrained_fit(const TomographyDataset& ds,
                                    const FitConfig& cfg) {
  validate(ds);
  if (ds.n != 4)
    throw invariant_error("cp_constrained_fit: requires a two-spin system");
  if (cfg.penalty_weight && *cfg.penalty_weight < 0.0)
    throw invariant_error("cp_constrained_fit: penalty weight must be >= 0");
  if (cfg.simplex_tolerance <= 0.0)
    throw invariant_error("cp_constrained_fit: tolerance must be positive");

  const CMat hbar = commutation_superoperator(ds.hamiltonian);
  const CMat u = basis_change_matrix(transition_basis(), zeeman_basis(4));
  const auto positions = structure_positions(
      cfg.structure, cfg.detailed_balance, cfg.border_identity_row);
  const bool symmetric = structure_is_symmetric(cfg);

  std::vector<CMat> targets;
  targets.reserve(ds.times.size());
  for (std::size_t m = 0; m < ds.times.size(); ++m)
    targets.push_back(dataset_propagator(ds, m));
  const bool doubling = has_doubling_grid(ds);

  const CVec v_id = vec(CMat::Identity(4, 4));
  const CMat e_proj =
      CMat::Identity(16, 16) - (v_id * v_id.adjoint()) / 4.0;

  auto relaxation_of = [&](const RVec& p) {
    return CMat(u * relaxation_from_parameters(p, positions, symmetric) *
                u.adjoint());
  };
  auto predicted = [&](const CMat& r_comp) {
    std::vector<CMat> props(ds.times.size());
    const CMat g = im * hbar + r_comp;
    if (doubling) {
      props[0] = expm(g, -ds.times[0]);
      for (std::size_t m = 1; m < props.size(); ++m)
        props[m] = props[m - 1] * props[m - 1];
    } else {
      for (std::size_t m = 0; m < props.size(); ++m)
        props[m] = expm(g, -ds.times[m]);
    }
    return props;
  };
  auto chi_squared_of = [&](const std::vector<CMat>& props) {
    double chi2 = 0.0;
    for (std::size_t m = 0; m < props.size(); ++m)
      chi2 += (props[m] - targets[m]).squaredNorm();
    return chi2;
  };
  auto penalty_of = [&](const CMat& r_comp) {
    return negative_eigenvalue_penalty(e_proj * choi_reshuffle(-r_comp) *
                                       e_proj);
  };

  const Supergenerator seed_gen = cfg.seed_generator
                                      ? *cfg.seed_generator
                                      : richardson_estimate(ds);
  const CMat seed_tra = change_superoperator_coordinates(
      relaxation_in_computational_coordinates(seed_gen), zeeman_basis(4),
      transition_basis());
  const RVec p0 = parameters_from_relaxation(seed_tra, positions, symmetric);

  double chi0, pen0;
  {
    const CMat r0 = relaxation_of(p0);
    try {
      chi0 = chi_squared_of(predicted(r0));
    } catch (const numerical_error&) {
      std::ostringstream msg;
      msg << "cp_constrained_fit: objective is not finite at the seed [";
      for (Eigen::Index k = 0; k < p0.size(); ++k)
        msg << (k ? " " : "") << p0(k);
      msg << "]";
      throw numerical_error(msg.str());
    }
    pen0 = penalty_of(r0);
  }
  const double weight = cfg.penalty_weight
                            ? *cfg.penalty_weight
                            : 1e3 * std::max(chi0, 1e-12) /
                                  std::max(pen0, 1e-12);

  auto objective = [&](const RVec& p) {
    const CMat r = relaxation_of(p);
    double chi2;
    try {
      chi2 = chi_squared_of(predicted(r));
    } catch (const numerical_error&) {
      return std::numeric_limits<double>::infinity();
    }
    return weight > 0.0 ? chi2 + weight * penalty_of(r) : chi2;
  };

  const NelderMeadResult nm =
      nelder_mead(objective, p0, cfg.max_iterations, cfg.simplex_tolerance);

  FitReport report;
  report.method = "cpfit";
  report.parameters = nm.x;
  report.iterations = nm.iterations;
  const CMat r_best = relaxation_of(nm.x);
  const std::vector<CMat> props = predicted(r_best);
  report.chi_squared = chi_squared_of(props);
  report.penalty_at_solution = penalty_of(r_best);
  report.residual_per_time.reserve(props.size());
  for (std::size_t m = 0; m < props.size(); ++m)
    report.residual_per_time.push_back((props[m] - targets[m]).norm());
  report.estimate.n = 4;
  report.estimate.hamiltonian_part = hbar;
  report.estimate.relaxation_part = r_best;
  report.estimate.basis = BasisName::zeeman;
  report.converged =
      nm.converged && (weight <= 0.0 || report.penalty_at_solution <=
                                            10.0 * cfg.simplex_tolerance);
  return report;
}

}  // namespace qpt
