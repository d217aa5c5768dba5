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

#include <numbers>

#include "dxc/entanglement.hpp"
#include "dxc/physics_model.hpp"
#include "helpers.hpp"

using namespace dxc;
using namespace dxc::testing;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

ComplexMatrix werner(double p) {
  const ComplexVector phi = ket({kS, 0, 0, kS});
  return p * phi * phi.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
}

// Negativity from the explicit partial-transpose spectrum.
double brute_negativity(const ComplexMatrix& rho) {
  ComplexMatrix pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt);
  double n = 0.0;
  for (int i = 0; i < 4; ++i) n += (std::abs(es.eigenvalues()(i)) - es.eigenvalues()(i)) / 2.0;
  return n;
}

DensityMatrix pair_state(const ComplexMatrix& m) { return DensityMatrix(m, {"a", "b"}); }

// Best single-qubit basis on a 10-degree grid.
double grid_oracle(const BranchEvaluator& eval) {
  double best = 0.0;
  for (int t = 0; t <= 18; ++t) {
    for (int f = 0; f < 36; ++f) {
      const std::array<BlochAngles, 1> b{{{t * std::numbers::pi / 18, f * std::numbers::pi / 18}}};
      best = std::max(best, average_negativity(eval(b)));
    }
  }
  return best;
}

LEOptions fast_options() {
  LEOptions o;
  o.parallel = true;
  return o;
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("negativity of Bell and product states") {
  CHECK(negativity(pair_state(werner(1.0))) == doctest::Approx(0.5).epsilon(1e-12));
  std::mt19937_64 rng(60);
  const ComplexMatrix prod = tensor_product(random_density(rng, 2), random_density(rng, 2));
  CHECK(negativity(pair_state(prod)) < 1e-14);
}

TEST_CASE("Werner states") {
  for (double p : {0.0, 0.4, 0.5, 0.6, 1.0}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 4.0);
    CHECK(std::abs(negativity(pair_state(werner(p))) - expected) < 1e-10);
    CHECK(std::abs(brute_negativity(werner(p)) - expected) < 1e-10);
  }
  CHECK(negativity(pair_state(werner(0.5))) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("negativity is invariant under local unitaries and stays in [0, 1/2]") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = random_density(rng, 4);
    const ComplexMatrix u = tensor_product(random_unitary(rng, 2), random_unitary(rng, 2));
    const double n = negativity(pair_state(rho));
    CHECK(std::abs(negativity(pair_state(u * rho * u.adjoint())) - n) < 1e-10);
    CHECK(std::abs(n - brute_negativity(rho)) < 1e-12);
    CHECK(n >= 0.0);
    CHECK(n <= 0.5);
  }
}

TEST_CASE("negativity of an unnormalized operator is trace-normalized") {
  CHECK(negativity(ComplexMatrix(0.3 * werner(1.0))) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("state fidelity") {
  std::mt19937_64 rng(62);
  const DensityMatrix r(random_density(rng, 2), {"a"});
  CHECK(fidelity_states(r, r) == doctest::Approx(1.0).epsilon(1e-10));
  const DensityMatrix zero = DensityMatrix::from_pure(ket({1, 0}), {"a"});
  const DensityMatrix one = DensityMatrix::from_pure(ket({0, 1}), {"a"});
  CHECK(fidelity_states(zero, one) < 1e-12);
  const DensityMatrix mixed(ComplexMatrix::Identity(2, 2) / 2.0, {"a"});
  CHECK(fidelity_states(zero, mixed) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity_states(zero, pair_state(werner(1.0))), Error);
}

TEST_CASE("LE of the ideal three-qubit state between the photons") {
  const auto rho = ideal_state(2, PureState::spin(SpinState::MinusX)).density();
  const auto r = localizable_entanglement(rho, 2, 3, fast_options());
  CHECK(r.negativity == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.measured == std::vector<std::size_t>{1});
  double total = 0.0;
  for (const auto& o : r.outcome_table) total += o.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  // Measuring the DE along Z already reaches the maximum.
  const std::array<BlochAngles, 1> z{{{0.0, 0.0}}};
  CHECK(average_negativity(dense_branches(rho, 2, 3)(z)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("LE of a two-qubit state is its negativity") {
  std::mt19937_64 rng(63);
  const ComplexMatrix m = random_density(rng, 4);
  const auto r = localizable_entanglement(pair_state(m), 1, 2, fast_options());
  CHECK(r.negativity == doctest::Approx(negativity(pair_state(m))).epsilon(1e-12));
  CHECK(r.measured.empty());
}

TEST_CASE("LE of GHZ is maximal for every pair") {
  const auto ghz = DensityMatrix::from_pure(ket({kS, 0, 0, 0, 0, 0, 0, kS}), {"a", "b", "c"});
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 2}, {1, 3}, {2, 3}}) {
    const auto r = localizable_entanglement(ghz, m, n, fast_options());
    CHECK(r.negativity == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(grid_oracle(dense_branches(ghz, m, n)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("invalid LE pairs") {
  const auto rho = ideal_state(2, PureState::spin(SpinState::MinusX)).density();
  CHECK_THROWS_AS(localizable_entanglement(rho, 2, 2), Error);
  CHECK_THROWS_AS(localizable_entanglement(rho, 0, 2), Error);
  CHECK_THROWS_AS(localizable_entanglement(rho, 1, 4), Error);
}

TEST_CASE("LE on random three-qubit states beats the traced negativity and the grid") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 6; ++trial) {
    const auto rho = random_state(rng, 3);
    const auto r = localizable_entanglement(rho, 1, 3, fast_options());
    const std::array<std::string, 2> keep{"q0", "q2"};
    CHECK(r.negativity >= negativity(partial_trace(rho, keep)) - 1e-12);
    CHECK(r.negativity >= grid_oracle(dense_branches(rho, 1, 3)) - 1e-9);
    CHECK(r.negativity <= 0.5);
    CHECK(r.start_values.size() == 8);
  }
}

TEST_CASE("dense and chain branch evaluators agree") {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  const ProcessMap model = model_process_map(PhysicalParams{});
  const auto init = PureState::spin(SpinState::MinusX).density();
  for (std::size_t cycles = 2; cycles <= 7; ++cycles) {
    const auto rho = apply_chain(model, init, cycles);
    const std::size_t nq = cycles + 1;
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, nq}, {2, nq}, {1, 3}}) {
      std::vector<BlochAngles> bases(nq - 2);
      for (auto& b : bases) b = {angle(rng), 2.0 * angle(rng)};
      const double dense = average_negativity(dense_branches(rho, m, n)(bases));
      const double chain = average_negativity(chain_branches(model, init, cycles, m, n)(bases));
      CHECK(std::abs(dense - chain) < 1e-9);
    }
  }
}

TEST_CASE("LE curve of the ideal chain is flat at 1/2") {
  const auto init = PureState::spin(SpinState::MinusX).density();
  const auto curve = le_curve(ideal_process_map(), init, 5);
  REQUIRE(curve.size() == 5);
  for (const auto& p : curve) CHECK(std::abs(p.result.negativity - 0.5) < 1e-8);
}

TEST_CASE("LE curve of the model decays but persists") {
  const auto init = PureState::spin(SpinState::MinusX).density();
  const auto curve = le_curve(model_process_map(PhysicalParams{}), init, 5);
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].result.negativity > curve[2].result.negativity);
  CHECK(curve[2].result.negativity > curve[4].result.negativity);
  CHECK(curve[4].result.negativity > 0.0);
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : curve) pts.emplace_back(static_cast<double>(p.d), p.result.negativity);
  const auto fit = fit_exponential(pts);
  CHECK(fit.decaying);
  CHECK(fit.residual < 0.1 * fit.n0);
}

TEST_CASE("LE curve of the depolarizing chain vanishes") {
  const auto init = PureState::spin(SpinState::MinusX).density();
  for (const auto& p : le_curve(depolarizing_map(), init, 3)) CHECK(p.result.negativity < 1e-12);
}

TEST_CASE("LE curve cap") {
  const auto init = PureState::spin(SpinState::MinusX).density();
  CHECK_THROWS_AS(le_curve(ideal_process_map(), init, 10, 2), Error);
}

TEST_CASE("exponential fit") {
  std::vector<std::pair<double, double>> exact;
  for (int d = 1; d <= 6; ++d) exact.emplace_back(d, 0.5 * std::exp(-d / 2.0));
  const auto fit = fit_exponential(exact);
  CHECK(std::abs(fit.n0 - 0.5) < 1e-9);
  CHECK(std::abs(fit.xi - 2.0) < 1e-9);
  CHECK(fit.points_used == 6);

  std::vector<std::pair<double, double>> flat;
  for (int d = 1; d <= 5; ++d) flat.emplace_back(d, 0.5);
  const auto f = fit_exponential(flat);
  CHECK_FALSE(f.decaying);
  CHECK(f.diagnostic == "no decay");

  // Points below the floor are dropped before counting.
  const std::vector<std::pair<double, double>> sparse{{1, 0.4}, {2, 0.2}, {3, 5e-5}, {4, 1e-6}};
  CHECK_THROWS_AS(fit_exponential(sparse), Error);
}

TEST_CASE("tripartite bounds for the ideal state") {
  const auto target = ideal_state(2, PureState::spin(SpinState::MinusX));
  const auto all = pauli_expectations(target.density());
  CHECK(all.size() == 64);
  PauliExpectations measured;
  for (const auto& [k, v] : all) {
    if (is_measurable(k)) measured[k] = v;
  }
  CHECK(measured.size() == 48);
  const auto b = tripartite_fidelity_bounds(measured, target);
  CHECK(b.f_low > 0.5);
  CHECK(b.f_low <= 1.0 + 1e-12);
  CHECK(b.f_high >= 1.0 - 1e-12);
  CHECK(b.f_low_triangle <= b.f_low);

  const auto full = tripartite_fidelity_bounds(all, target);
  CHECK(std::abs(full.f_low - 1.0) < 1e-10);
  CHECK(std::abs(full.f_high - 1.0) < 1e-10);
  CHECK(full.unmeasured.empty());
}

TEST_CASE("tripartite bounds for the maximally mixed state") {
  const auto target = ideal_state(2, PureState::spin(SpinState::MinusX));
  const DensityMatrix mixed(ComplexMatrix::Identity(8, 8) / 8.0, {"DE", "p2", "p1"});
  PauliExpectations measured;
  for (const auto& [k, v] : pauli_expectations(mixed)) {
    if (is_measurable(k)) measured[k] = v;
  }
  const auto b = tripartite_fidelity_bounds(measured, target);
  CHECK(b.f_measured == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(b.f_low <= 0.125 + 1e-12);
  CHECK(b.f_high >= 0.125 - 1e-12);
}

TEST_CASE("tripartite bounds bracket the true fidelity of random states") {
  const auto target = ideal_state(2, PureState::spin(SpinState::MinusX));
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    // Mix toward the target so the bounds are not trivially wide.
    const double w = 0.1 * trial / 2.0;
    const ComplexMatrix m = (1.0 - w) * random_density(rng, 8) + w * target.density().matrix();
    const DensityMatrix rho(m, {"DE", "p2", "p1"});
    PauliExpectations measured;
    for (const auto& [k, v] : pauli_expectations(rho)) {
      if (is_measurable(k)) measured[k] = v;
    }
    const auto b = tripartite_fidelity_bounds(measured, target);
    const double f = jozsa_fidelity(m, target.density().matrix());
    CHECK(b.f_low <= f + 1e-10);
    CHECK(b.f_high >= f - 1e-10);
    CHECK(b.f_low_triangle <= b.f_low + 1e-12);
    CHECK(b.f_high_triangle >= b.f_high - 1e-12);
  }
}

TEST_CASE("tripartite bounds require every measurable expectation") {
  const auto target = ideal_state(2, PureState::spin(SpinState::MinusX));
  PauliExpectations measured;
  for (const auto& [k, v] : pauli_expectations(target.density())) {
    if (is_measurable(k)) measured[k] = v;
  }
  measured.erase("zzz");
  CHECK_THROWS_WITH_AS(tripartite_fidelity_bounds(measured, target), doctest::Contains("zzz"), Error);
}

TEST_CASE("measurable Pauli strings") {
  CHECK(is_measurable("0xy"));
  CHECK(is_measurable("zxx"));
  CHECK(is_measurable("yzz"));
  CHECK_FALSE(is_measurable("x00"));
}

}  // TEST_SUITE
