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
#include <cstdint>
#include <random>
#include <vector>

#include "qpt/cp.hpp"
#include "qpt/estimators.hpp"

namespace qpt {

// -- forward simulation -------------------------------------------------------

inline CMat propagator_at(const Supergenerator& g, double t) {
  validate(g);
  if (t < 0.0) throw invariant_error("propagator_at: negative time");
  const auto dim = static_cast<Eigen::Index>(g.n) * g.n;
  if (t == 0.0) return CMat::Identity(dim, dim);
  return expm(g.full_generator(), -t);
}

inline TomographyDataset simulate_propagators(const Supergenerator& g,
                                              const CMat& hamiltonian,
                                              const std::vector<double>& times) {
  TomographyDataset ds;
  ds.n = g.n;
  ds.hamiltonian = hamiltonian;
  ds.times = times;
  ds.propagators.reserve(times.size());
  for (double t : times) ds.propagators.push_back(propagator_at(g, t));
  validate(ds);
  return ds;
}

// One prepared state per basis element: the maximally mixed state for the
// identity-like element, small Hermitian offsets from it otherwise. The
// offsets keep the preparations positive and spanning.
inline TomographyDataset simulate_state_pairs(const Supergenerator& g,
                                              const CMat& hamiltonian,
                                              const std::vector<double>& times,
                                              const OperatorBasis& basis) {
  if (basis.n != g.n)
    throw invariant_error("simulate_state_pairs: basis dimension mismatch");
  const double scale = 1.0 / static_cast<double>(g.n);
  std::vector<CMat> inputs;
  inputs.reserve(basis.elements.size());
  for (const CMat& b : basis.elements) {
    if (!is_hermitian(b, 1e-9))
      throw invariant_error(
          "simulate_state_pairs: basis elements must be Hermitian");
    CMat rho;
    if ((b - (b.trace() / static_cast<double>(g.n)) *
                 CMat::Identity(g.n, g.n))
            .norm() < 1e-12 * std::max(1.0, b.norm())) {
      rho = scale * CMat::Identity(g.n, g.n);
    } else {
      rho = scale * CMat::Identity(g.n, g.n) + 0.05 * b;
      Eigen::SelfAdjointEigenSolver<CMat> es(rho);
      if (es.eigenvalues().minCoeff() < -1e-12)
        throw invariant_error(
            "simulate_state_pairs: basis element offset breaks positivity");
    }
    inputs.push_back(rho);
  }
  TomographyDataset ds;
  ds.n = g.n;
  ds.hamiltonian = hamiltonian;
  ds.times = times;
  ds.state_pairs.reserve(times.size());
  for (double t : times) {
    const CMat p = propagator_at(g, t);
    std::vector<StatePair> block;
    block.reserve(inputs.size());
    for (const CMat& rho : inputs)
      block.push_back({rho, unvec(p * vec(rho))});
    ds.state_pairs.push_back(std::move(block));
  }
  validate(ds);
  return ds;
}

// -- noise ---------------------------------------------------------------------

enum class NoiseTarget { propagators, states };

struct NoiseSpec {
  double sigma = 0.0;  // entrywise Gaussian scale, relative to max |entry|
  std::uint64_t rng_seed = 0;
  NoiseTarget target = NoiseTarget::propagators;
};

namespace detail {

// Entrywise complex Gaussian perturbation, scaled by the matrix's largest
// entry magnitude. Draw order (real then imaginary, row-major) is part of
// the reproducibility contract.
inline void perturb(CMat& m, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = sigma * max_abs(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = gauss(rng);
      const double imag = gauss(rng);
      m(i, j) += scale * cx{re, imag};
    }
}

}  // namespace detail

// Measurement noise on a dataset. States are perturbed on outputs only and
// re-projected onto Hermitian unit trace; propagators are perturbed as-is.
inline TomographyDataset add_noise(const TomographyDataset& ds,
                                   const NoiseSpec& spec) {
  validate(ds);
  if (spec.sigma < 0.0) throw invariant_error("add_noise: negative sigma");
  TomographyDataset out = ds;
  out.noiseless = spec.sigma == 0.0 && ds.noiseless;
  if (spec.sigma == 0.0) return out;
  std::mt19937_64 rng(spec.rng_seed);
  if (spec.target == NoiseTarget::propagators) {
    if (out.propagators.empty())
      throw invariant_error("add_noise: dataset has no propagators");
    for (CMat& p : out.propagators) detail::perturb(p, spec.sigma, rng);
    return out;
  }
  if (out.state_pairs.empty())
    throw invariant_error("add_noise: dataset has no state pairs");
  for (auto& block : out.state_pairs)
    for (StatePair& sp : block) {
      detail::perturb(sp.output, spec.sigma, rng);
      sp.output = 0.5 * (sp.output + dagger(sp.output));
      sp.output += ((1.0 - sp.output.trace().real()) /
                    static_cast<double>(out.n)) *
                   CMat::Identity(out.n, out.n);
    }
  return out;
}

// -- random completely positive generators --------------------------------------

// Dissipative generator built from `count` random traceless jump operators,
// each normalized and rescaled to rate_scale. No Hamiltonian part.
inline Supergenerator random_cp_generator(int n, int count, double rate_scale,
                                          std::uint64_t rng_seed) {
  if (n < 2) throw invariant_error("random_cp_generator: dimension too small");
  if (count < 1) throw invariant_error("random_cp_generator: need operators");
  if (rate_scale <= 0.0)
    throw invariant_error("random_cp_generator: rate scale must be positive");
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n) * n;
  CMat r = CMat::Zero(dim, dim);
  for (int k = 0; k < count; ++k) {
    CMat l(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double re = gauss(rng);
        const double imag = gauss(rng);
        l(i, j) = cx{re, imag};
      }
    l -= (l.trace() / static_cast<double>(n)) * CMat::Identity(n, n);
    l *= std::sqrt(rate_scale) / l.norm();
    r -= lindblad_dissipator(l);
  }
  Supergenerator g;
  g.n = n;
  g.hamiltonian_part = CMat::Zero(dim, dim);
  g.relaxation_part = r;
  g.basis = BasisName::zeeman;
  return g;
}

}  // namespace qpt
