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

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qpt;
using qpt_test::max_abs_diff;

namespace {

Supergenerator small_test_generator() {
  std::vector<CMat> ls = {std::sqrt(0.15) * 0.5 * spin1(sigma_z()),
                          std::sqrt(0.08) * 0.5 * spin2(sigma_x())};
  CMat r = CMat::Zero(16, 16);
  for (const CMat& l : ls) r -= lindblad_dissipator(l);
  Supergenerator g;
  g.n = 4;
  g.hamiltonian_part =
      commutation_superoperator(two_spin_hamiltonian({0.7, 0.2}));
  g.relaxation_part = r;
  g.basis = BasisName::zeeman;
  return g;
}

}  // namespace

TEST_CASE("propagators compose under the semigroup law") {
  const Supergenerator g = small_test_generator();
  CHECK(max_abs_diff(propagator_at(g, 0.0), CMat::Identity(16, 16)) == 0.0);
  CHECK_THROWS_AS(propagator_at(g, -0.1), invariant_error);
  const CMat p1 = propagator_at(g, 0.35);
  const CMat p2 = propagator_at(g, 0.7);
  CHECK(max_abs_diff(CMat(p1 * p1), p2) < 1e-12);
}

TEST_CASE("simulated snapshots agree across record kinds") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  const std::vector<double> times = {0.25, 0.5};
  const TomographyDataset props = simulate_propagators(g, h, times);

  for (const OperatorBasis& basis : {cartesian_basis(), transition_basis()}) {
    const TomographyDataset pairs = simulate_state_pairs(g, h, times, basis);
    REQUIRE(pairs.state_pairs.size() == 2);
    for (std::size_t m = 0; m < times.size(); ++m) {
      const CMat p = propagator_from_state_pairs(pairs.state_pairs[m]);
      CHECK(max_abs_diff(p, props.propagators[m]) < 1e-9);
    }
  }
}

TEST_CASE("state preparation rejects non-Hermitian basis elements") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  CHECK_THROWS_AS(simulate_state_pairs(g, h, {0.25}, zeeman_basis(4)),
                  invariant_error);
}

TEST_CASE("noise is reproducible by seed") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  const TomographyDataset ds = simulate_propagators(g, h, {0.25, 0.5});

  NoiseSpec spec;
  spec.sigma = 0.01;
  spec.rng_seed = 42;
  const TomographyDataset a = add_noise(ds, spec);
  const TomographyDataset b = add_noise(ds, spec);
  spec.rng_seed = 43;
  const TomographyDataset c = add_noise(ds, spec);

  CHECK_FALSE(a.noiseless);
  for (std::size_t m = 0; m < ds.times.size(); ++m) {
    CHECK(max_abs_diff(a.propagators[m], b.propagators[m]) == 0.0);
    CHECK(max_abs_diff(a.propagators[m], c.propagators[m]) > 1e-6);
    CHECK(max_abs_diff(a.propagators[m], ds.propagators[m]) > 1e-6);
    CHECK(max_abs_diff(a.propagators[m], ds.propagators[m]) < 0.2);
  }
}

TEST_CASE("zero noise leaves a dataset untouched") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  const TomographyDataset ds = simulate_propagators(g, h, {0.25});
  const TomographyDataset out = add_noise(ds, NoiseSpec{});
  CHECK(out.noiseless);
  CHECK(max_abs_diff(out.propagators[0], ds.propagators[0]) == 0.0);
}

TEST_CASE("state noise perturbs outputs only and keeps them physical") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  const TomographyDataset ds =
      simulate_state_pairs(g, h, {0.25}, transition_basis());

  NoiseSpec spec;
  spec.sigma = 0.01;
  spec.rng_seed = 5;
  spec.target = NoiseTarget::states;
  const TomographyDataset out = add_noise(ds, spec);

  for (std::size_t k = 0; k < out.state_pairs[0].size(); ++k) {
    const StatePair& noisy = out.state_pairs[0][k];
    const StatePair& clean = ds.state_pairs[0][k];
    CHECK(max_abs_diff(noisy.input, clean.input) == 0.0);
    CHECK(max_abs_diff(noisy.output, clean.output) > 0.0);
    CHECK(is_hermitian(noisy.output, 1e-12));
    CHECK(std::abs(noisy.output.trace().real() - 1.0) < 1e-12);
  }
  CHECK_NOTHROW(validate(out));
}

TEST_CASE("noise targets must exist in the dataset") {
  const Supergenerator g = small_test_generator();
  const CMat h = two_spin_hamiltonian({0.7, 0.2});
  const TomographyDataset props = simulate_propagators(g, h, {0.25});
  NoiseSpec spec;
  spec.sigma = 0.01;
  spec.target = NoiseTarget::states;
  CHECK_THROWS_AS(add_noise(props, spec), invariant_error);
}

TEST_CASE("random generators are completely positive and trace preserving") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Supergenerator g = random_cp_generator(4, 6, 0.3, seed);
    CHECK_NOTHROW(validate(g));
    CHECK(cp_penalty(g) <= 1e-12);
    CHECK(g.relaxation_part.norm() > 0.0);
  }
}

TEST_CASE("random generators are deterministic by seed") {
  const Supergenerator a = random_cp_generator(4, 6, 0.3, 11);
  const Supergenerator b = random_cp_generator(4, 6, 0.3, 11);
  const Supergenerator c = random_cp_generator(4, 6, 0.3, 12);
  CHECK(max_abs_diff(a.relaxation_part, b.relaxation_part) == 0.0);
  CHECK(max_abs_diff(a.relaxation_part, c.relaxation_part) > 1e-6);
}

TEST_CASE("random generator arguments are validated") {
  CHECK_THROWS_AS(random_cp_generator(1, 3, 0.3, 0), invariant_error);
  CHECK_THROWS_AS(random_cp_generator(4, 0, 0.3, 0), invariant_error);
  CHECK_THROWS_AS(random_cp_generator(4, 3, 0.0, 0), invariant_error);
}
