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

#include "dxc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dxc {

namespace {

const Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexVector ket(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

}  // namespace

std::string photon_label(std::size_t k) { return "p" + std::to_string(k); }

std::vector<std::string> chain_labels(std::size_t n_cycles) {
  std::vector<std::string> labels{kDELabel};
  for (std::size_t k = n_cycles; k >= 1; --k) labels.push_back(photon_label(k));
  return labels;
}

ComplexVector spin_ket(SpinState s) {
  switch (s) {
    case SpinState::PlusZ: return ket(1.0, 0.0);
    case SpinState::MinusZ: return ket(0.0, 1.0);
    case SpinState::PlusX: return ket(kInvSqrt2, kInvSqrt2);
    case SpinState::MinusX: return ket(kInvSqrt2, -kInvSqrt2);
    case SpinState::PlusY: return ket(kInvSqrt2, kI * kInvSqrt2);
    case SpinState::MinusY: return ket(kInvSqrt2, -kI * kInvSqrt2);
  }
  throw Error("spin_ket: invalid state");
}

ComplexVector photon_ket(Polarization p) {
  const ComplexVector r = ket(1.0, 0.0);
  const ComplexVector l = ket(0.0, 1.0);
  const ComplexVector h = (r + l) * kInvSqrt2;
  const ComplexVector v = kI * (r - l) * kInvSqrt2;
  switch (p) {
    case Polarization::R: return r;
    case Polarization::L: return l;
    case Polarization::H: return h;
    case Polarization::V: return v;
    case Polarization::D: return (h + v) * kInvSqrt2;
    case Polarization::B: return (h - v) * kInvSqrt2;
  }
  throw Error("photon_ket: invalid polarization");
}

std::string to_string(SpinState s) {
  switch (s) {
    case SpinState::PlusZ: return "+Z";
    case SpinState::MinusZ: return "-Z";
    case SpinState::PlusX: return "+X";
    case SpinState::MinusX: return "-X";
    case SpinState::PlusY: return "+Y";
    case SpinState::MinusY: return "-Y";
  }
  return "?";
}

std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::R: return "R";
    case Polarization::L: return "L";
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::D: return "D";
    case Polarization::B: return "B";
  }
  return "?";
}

SpinState parse_spin_state(std::string_view name) {
  for (auto s : {SpinState::PlusZ, SpinState::MinusZ, SpinState::PlusX,
                 SpinState::MinusX, SpinState::PlusY, SpinState::MinusY}) {
    if (to_string(s) == name) return s;
  }
  throw Error("unknown spin state '" + std::string(name) + "'");
}

Polarization parse_polarization(std::string_view name) {
  for (auto p : {Polarization::R, Polarization::L, Polarization::H,
                 Polarization::V, Polarization::D, Polarization::B}) {
    if (to_string(p) == name) return p;
  }
  throw Error("unknown polarization '" + std::string(name) + "'");
}

PureState::PureState(ComplexVector amplitudes, std::vector<std::string> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  if (amplitudes_.size() != (Eigen::Index{1} << labels_.size())) {
    throw Error("PureState: amplitude count does not match labels");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "PureState: norm " << amplitudes_.norm() << " is not 1";
    throw Error(os.str());
  }
}

PureState PureState::spin(SpinState s) { return PureState(spin_ket(s), {kDELabel}); }

DensityMatrix PureState::density() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint(), labels_);
}

double overlap_fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw Error("overlap_fidelity: size mismatch");
  return std::norm(a.dot(b));
}

ComplexMatrix gate_G() {
  return (ComplexMatrix::Identity(2, 2) + kI * pauli(1)) * kInvSqrt2;
}

ComplexMatrix ideal_cycle_isometry() {
  ComplexMatrix emission = ComplexMatrix::Zero(4, 2);
  emission(0, 0) = 1.0;  // |+Z> -> |+Z>|R>
  emission(3, 1) = 1.0;  // |-Z> -> |-Z>|L>
  return tensor_product(gate_G(), ComplexMatrix::Identity(2, 2)) * emission;
}

PureState ideal_state(std::size_t n_cycles, const PureState& init, std::size_t cap) {
  if (init.num_qubits() != 1) throw Error("ideal_state: init must be one qubit");
  if (n_cycles > cap) {
    std::ostringstream os;
    os << "ideal_state: " << n_cycles << " cycles exceeds cap " << cap;
    throw Error(os.str());
  }
  const ComplexMatrix v = ideal_cycle_isometry();
  ComplexVector psi = init.amplitudes();
  for (std::size_t c = 0; c < n_cycles; ++c) {
    const Eigen::Index rest = psi.size() / 2;
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const RowMajor in = Eigen::Map<const RowMajor>(psi.data(), 2, rest);
    RowMajor out = v * in;
    psi = Eigen::Map<const ComplexVector>(out.data(), out.size());
  }
  return PureState(psi, chain_labels(n_cycles));
}

ProjectionResult project_qubit(const PureState& state, std::string_view label,
                               const ComplexVector& direction) {
  auto it = std::find(state.labels().begin(), state.labels().end(), label);
  if (it == state.labels().end()) {
    throw Error("project_qubit: unknown label '" + std::string(label) + "'");
  }
  if (direction.size() != 2) throw Error("project_qubit: direction must be a qubit");
  const ComplexVector dir = direction.normalized();
  const std::size_t n = state.num_qubits();
  const std::size_t q = static_cast<std::size_t>(it - state.labels().begin());
  const std::size_t low_bits = n - 1 - q;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;

  ComplexVector out = ComplexVector::Zero(std::size_t{1} << (n - 1));
  const auto& amp = state.amplitudes();
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(amp.size()); ++idx) {
    const std::size_t b = (idx >> low_bits) & 1U;
    const std::size_t reduced = ((idx >> (low_bits + 1)) << low_bits) | (idx & low_mask);
    out(reduced) += std::conj(dir(b)) * amp(idx);
  }
  const double p = out.squaredNorm();
  if (p < 1e-14) throw Error("incompatible projection");
  std::vector<std::string> labels = state.labels();
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(q));
  return {PureState(out / std::sqrt(p), std::move(labels)), p};
}

}  // namespace dxc
