// Copyright 2026 The dxcluster Authors
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

#include <doctest.h>

#include "dxc/entanglement.hpp"
#include "dxc/protocol.hpp"
#include "helpers.hpp"

using namespace dxc;
using namespace dxc::testing;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const Complex kI{0.0, 1.0};

// |psi>_{DE-1} after one cycle, order (DE, p1).
ComplexVector one_cycle_state() { return ket({0.5, -0.5 * kI, 0.5 * kI, -0.5}); }

// |psi>_{DE-2-1}, order (DE, p2, p1).
ComplexVector two_cycle_state() {
  const double n = 1.0 / (2.0 * std::sqrt(2.0));
  return n * ket({1.0, -kI, -1.0, -kI, kI, 1.0, kI, -1.0});
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  return tensor_product(ComplexMatrix(a), ComplexMatrix(b));
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("single-qubit bases are orthonormal") {
  const std::vector<std::pair<SpinState, SpinState>> spins{
      {SpinState::PlusZ, SpinState::MinusZ},
      {SpinState::PlusX, SpinState::MinusX},
      {SpinState::PlusY, SpinState::MinusY}};
  for (auto [a, b] : spins) {
    CHECK(std::abs(spin_ket(a).squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(spin_ket(b).squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(spin_ket(a).dot(spin_ket(b))) < 1e-12);
  }
  const std::vector<std::pair<Polarization, Polarization>> pols{
      {Polarization::R, Polarization::L},
      {Polarization::H, Polarization::V},
      {Polarization::D, Polarization::B}};
  for (auto [a, b] : pols) {
    CHECK(std::abs(photon_ket(a).squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(photon_ket(b).squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(photon_ket(a).dot(photon_ket(b))) < 1e-12);
  }
}

TEST_CASE("basis amplitudes follow the fixed phase conventions") {
  CHECK(max_abs_diff(photon_ket(Polarization::H), ket({kS, kS})) < 1e-15);
  CHECK(max_abs_diff(photon_ket(Polarization::V), ket({kS * kI, -kS * kI})) < 1e-15);
  CHECK(max_abs_diff(spin_ket(SpinState::MinusX), ket({kS, -kS})) < 1e-15);
  CHECK(max_abs_diff(spin_ket(SpinState::PlusY), ket({kS, kS * kI})) < 1e-15);
  const ComplexVector d = (photon_ket(Polarization::H) + photon_ket(Polarization::V)) * kS;
  CHECK(max_abs_diff(photon_ket(Polarization::D), d) < 1e-15);
}

TEST_CASE("state names parse and print") {
  for (auto s : {SpinState::PlusZ, SpinState::MinusZ, SpinState::PlusX, SpinState::MinusX,
                 SpinState::PlusY, SpinState::MinusY}) {
    CHECK(parse_spin_state(to_string(s)) == s);
  }
  for (auto p : {Polarization::R, Polarization::L, Polarization::H, Polarization::V,
                 Polarization::D, Polarization::B}) {
    CHECK(parse_polarization(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_spin_state("+W"), Error);
  CHECK_THROWS_AS(parse_polarization("Q"), Error);
}

TEST_CASE("gate G acts as a quarter-period precession") {
  const ComplexMatrix g = gate_G();
  CHECK(max_abs_diff(g * spin_ket(SpinState::PlusZ), ket({kS, kS * kI})) < 1e-15);
  CHECK(max_abs_diff(g * spin_ket(SpinState::MinusZ), ket({kS * kI, kS})) < 1e-15);
  CHECK(max_abs_diff(g * g.adjoint(), ComplexMatrix::Identity(2, 2)) < 1e-15);
  const ComplexMatrix g4 = g * g * g * g;
  CHECK(max_abs_diff(g4, -ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("cycle isometry") {
  const ComplexMatrix v = ideal_cycle_isometry();
  REQUIRE(v.rows() == 4);
  REQUIRE(v.cols() == 2);
  CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::Identity(2, 2)) < 1e-15);

  const ComplexVector out = v * spin_ket(SpinState::MinusX);
  CHECK(max_abs_diff(out, one_cycle_state()) < 1e-15);

  // Undoing the final G leaves the bare spin-photon entangled state.
  const ComplexMatrix undo = tensor_product(gate_G().adjoint(), ComplexMatrix::Identity(2, 2));
  CHECK(max_abs_diff(undo * out, ket({kS, 0, 0, -kS})) < 1e-15);
}

TEST_CASE("cycle isometry is CNOT on a |R> photon followed by G") {
  ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const ComplexMatrix attach_r =
      tensor_product(ComplexMatrix::Identity(2, 2), ComplexMatrix(photon_ket(Polarization::R)));
  const ComplexMatrix expected =
      tensor_product(gate_G(), ComplexMatrix::Identity(2, 2)) * cnot * attach_r;
  CHECK(max_abs_diff(ideal_cycle_isometry(), expected) < 1e-15);
}

TEST_CASE("ideal_state reproduces the chain amplitudes") {
  const auto init = PureState::spin(SpinState::MinusX);
  const auto s0 = ideal_state(0, init);
  CHECK(max_abs_diff(s0.amplitudes(), spin_ket(SpinState::MinusX)) < 1e-15);
  CHECK(s0.labels() == std::vector<std::string>{"DE"});

  const auto s1 = ideal_state(1, init);
  CHECK(max_abs_diff(s1.amplitudes(), one_cycle_state()) < 1e-15);
  CHECK(s1.labels() == std::vector<std::string>{"DE", "p1"});

  const auto s2 = ideal_state(2, init);
  CHECK(max_abs_diff(s2.amplitudes(), two_cycle_state()) < 1e-15);
  CHECK(s2.labels() == std::vector<std::string>{"DE", "p2", "p1"});
}

TEST_CASE("ideal_state enforces the size cap") {
  const auto init = PureState::spin(SpinState::MinusX);
  CHECK_THROWS_AS(ideal_state(13, init), Error);
  CHECK_THROWS_AS(ideal_state(5, init, 4), Error);
  CHECK_NOTHROW(ideal_state(4, init, 4));
}

TEST_CASE("single-qubit marginals of the ideal chain are maximally mixed") {
  for (auto s : {SpinState::PlusX, SpinState::MinusX}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto psi = ideal_state(n, PureState::spin(s));
      CHECK(std::abs(psi.amplitudes().squaredNorm() - 1.0) < 1e-12);
      const auto rho = psi.density();
      for (const auto& label : rho.labels()) {
        const std::array<std::string, 1> keep{label};
        CHECK(max_abs_diff(partial_trace(rho, keep).matrix(),
                           ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("projecting the DE on +Z leaves a maximally entangled photon pair") {
  const auto psi = ideal_state(2, PureState::spin(SpinState::MinusX));
  const auto r = project_qubit(psi, "DE", spin_ket(SpinState::PlusZ));
  CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.state.labels() == std::vector<std::string>{"p2", "p1"});

  // Literal amplitudes, including the 1/(sqrt(2) i) phase.
  const ComplexVector vr_hl = kron(photon_ket(Polarization::V), photon_ket(Polarization::R)) +
                              kron(photon_ket(Polarization::H), photon_ket(Polarization::L));
  const ComplexVector expected = vr_hl / (std::sqrt(2.0) * kI);
  CHECK(max_abs_diff(r.state.amplitudes(), expected) < 1e-15);
  CHECK(overlap_fidelity(r.state.amplitudes(), expected) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(negativity(r.state.density()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("projecting the DE on -Z also leaves a maximally entangled pair") {
  const auto psi = ideal_state(2, PureState::spin(SpinState::MinusX));
  const auto r = project_qubit(psi, "DE", spin_ket(SpinState::MinusZ));
  CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(negativity(r.state.density()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("projection on a product state and incompatible projections") {
  const PureState zz(ket({1, 0, 0, 0}), {"a", "b"});
  const auto r = project_qubit(zz, "a", ket({1, 0}));
  CHECK(r.probability == 1.0);
  CHECK(max_abs_diff(r.state.amplitudes(), ket({1, 0})) < 1e-15);
  CHECK(r.state.labels() == std::vector<std::string>{"b"});

  CHECK_THROWS_WITH_AS(project_qubit(zz, "a", ket({0, 1})), doctest::Contains("incompatible projection"), Error);
  CHECK_THROWS_AS(project_qubit(zz, "c", ket({1, 0})), Error);
}

TEST_CASE("PureState requires unit norm") {
  CHECK_THROWS_AS(PureState(ket({1, 1}), {"a"}), Error);
  CHECK_THROWS_AS(PureState(ket({1, 0}), {"a", "b"}), Error);
}

}  // TEST_SUITE
