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
using qpt_test::random_complex;
using qpt_test::random_hermitian;

TEST_CASE("vec stacks columns") {
  CMat m(2, 2);
  m << cx{1, 0}, cx{3, 0}, cx{2, 0}, cx{4, 0};
  const CVec v = vec(m);
  CHECK(v(0) == cx{1, 0});
  CHECK(v(1) == cx{2, 0});
  CHECK(v(2) == cx{3, 0});
  CHECK(v(3) == cx{4, 0});
  CHECK(max_abs_diff(unvec(v), m) == 0.0);
}

TEST_CASE("unvec rejects non-square lengths") {
  CHECK_THROWS_AS(unvec(CVec::Zero(5)), invariant_error);
}

TEST_CASE("vec of a sandwich matches its Kronecker supermatrix") {
  const CMat a = random_complex(3, 3, 11);
  const CMat x = random_complex(3, 3, 12);
  const CMat b = random_complex(3, 3, 13);
  const CVec lhs = vec(CMat(a * x * b));
  const CVec rhs = kron(b.transpose(), a) * vec(x);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("commutation superoperator applies the commutator") {
  const CMat h = random_hermitian(4, 21);
  const CMat rho = random_complex(4, 4, 22);
  const CMat lhs = apply_superoperator(commutation_superoperator(h), rho);
  const CMat rhs = h * rho - rho * h;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("commutation superoperator requires a Hermitian argument") {
  CHECK_THROWS_AS(commutation_superoperator(random_complex(3, 3, 31)),
                  invariant_error);
}

TEST_CASE("Pauli matrices satisfy their algebra") {
  CHECK(max_abs_diff(sigma_x() * sigma_y() - sigma_y() * sigma_x(),
                     2.0 * im * sigma_z()) < 1e-15);
  CHECK(max_abs_diff(sigma_x() * sigma_x(), CMat::Identity(2, 2)) < 1e-15);
  CHECK(max_abs_diff(spin1(sigma_z()) * spin2(sigma_z()),
                     spin2(sigma_z()) * spin1(sigma_z())) < 1e-15);
}

TEST_CASE("two-spin Hamiltonian has the chemical shift and J structure") {
  const double nu1 = 161.63, j = 5.77;
  const CMat h = two_spin_hamiltonian({nu1, j});
  REQUIRE(is_hermitian(h));
  CHECK(std::abs(h(0, 0) - cx{pi * (nu1 + 0.5 * j), 0}) < 1e-12);
  CHECK(std::abs(h(1, 1) - cx{pi * (nu1 - 0.5 * j), 0}) < 1e-12);
  CHECK(std::abs(h(2, 2) - cx{pi * (-nu1 - 0.5 * j), 0}) < 1e-12);
  CHECK(std::abs(h(3, 3) - cx{pi * (-nu1 + 0.5 * j), 0}) < 1e-12);
  CHECK(std::abs(h(1, 2) - cx{pi * j, 0}) < 1e-12);
  CHECK(std::abs(h(0, 3)) < 1e-15);
  CHECK(std::abs(h.trace()) < 1e-12);
}

TEST_CASE("zeeman basis coefficients are the vectorized entries") {
  const OperatorBasis b = zeeman_basis(3);
  REQUIRE(b.elements.size() == 9);
  const CMat rho = random_complex(3, 3, 41);
  const CVec v = vec(rho);
  for (std::size_t k = 0; k < b.elements.size(); ++k) {
    const cx coeff = (dagger(b.elements[k]) * rho).trace();
    CHECK(std::abs(coeff - v(static_cast<Eigen::Index>(k))) < 1e-12);
  }
}

TEST_CASE("transition basis elements are Hermitian with definite coherence order") {
  const OperatorBasis b = transition_basis();
  REQUIRE(b.elements.size() == 16);
  REQUIRE(b.coherence_orders.size() == 16);
  // Zeeman magnetizations of |00>, |01>, |10>, |11>.
  const double mag[4] = {1.0, 0.0, 0.0, -1.0};
  for (std::size_t k = 0; k < 16; ++k) {
    INFO("element " << k);
    CHECK(is_hermitian(b.elements[k], 1e-12));
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j)
        if (std::abs(b.elements[k](i, j)) > 1e-12)
          CHECK(std::abs(mag[i] - mag[j]) ==
                Catch::Approx(b.coherence_orders[k]).margin(1e-12));
  }
}

TEST_CASE("cartesian basis consists of Hermitian Pauli products") {
  const OperatorBasis b = cartesian_basis();
  REQUIRE(b.elements.size() == 16);
  for (const CMat& e : b.elements) CHECK(is_hermitian(e, 1e-12));
  CHECK(max_abs_diff(b.elements[0], CMat::Identity(4, 4)) < 1e-15);
}

TEST_CASE("basis frames are unitary for all named bases") {
  for (BasisName name :
       {BasisName::zeeman, BasisName::transition, BasisName::cartesian}) {
    const CMat q = basis_frame(make_basis(name, 4));
    CHECK(is_unitary(q, 1e-12));
  }
  CHECK(max_abs_diff(basis_frame(zeeman_basis(4)), CMat::Identity(16, 16)) <
        1e-15);
}

TEST_CASE("trace functional reads the trace in any basis") {
  const CMat rho = random_complex(4, 4, 51);
  for (BasisName name :
       {BasisName::zeeman, BasisName::transition, BasisName::cartesian}) {
    const OperatorBasis b = make_basis(name, 4);
    // coeffs = Q^dagger vec(rho), the convention basis_change_matrix uses.
    const CVec coeffs = basis_frame(b).adjoint() * vec(rho);
    const cx tr = (trace_functional(b).transpose() * coeffs)(0);
    CHECK(std::abs(tr - rho.trace()) < 1e-12);
  }
}

TEST_CASE("coordinate changes preserve spectra and invert exactly") {
  const CMat s = random_complex(16, 16, 61);
  const OperatorBasis zee = zeeman_basis(4);
  const OperatorBasis tra = transition_basis();
  const CMat s_tra = change_superoperator_coordinates(s, zee, tra);
  const CMat back = change_superoperator_coordinates(s_tra, tra, zee);
  CHECK(max_abs_diff(back, s) < 1e-12);

  const CVec ev_zee = eig(s, false).values;
  const CVec ev_tra = eig(s_tra, false).values;
  CHECK((ev_zee - ev_tra).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("converted rate matrices carry the basis normalization factor") {
  const CMat s = random_complex(16, 16, 71);
  const OperatorBasis zee = zeeman_basis(4);
  const OperatorBasis tra = transition_basis();
  const OperatorBasis car = cartesian_basis();
  // transition -> zeeman doubles; transition -> cartesian is weight-neutral.
  CHECK(max_abs_diff(convert_superoperator(s, tra, zee),
                     CMat(2.0 * change_superoperator_coordinates(s, tra, zee))) <
        1e-12);
  CHECK(max_abs_diff(convert_superoperator(s, zee, tra),
                     CMat(0.5 * change_superoperator_coordinates(s, zee, tra))) <
        1e-12);
  CHECK(max_abs_diff(convert_superoperator(s, tra, car),
                     change_superoperator_coordinates(s, tra, car)) < 1e-12);
}

TEST_CASE("basis names round-trip through strings") {
  for (BasisName name :
       {BasisName::zeeman, BasisName::transition, BasisName::cartesian})
    CHECK(basis_from_string(to_string(name)) == name);
  CHECK_THROWS_AS(basis_from_string("spherical"), parse_error);
}
