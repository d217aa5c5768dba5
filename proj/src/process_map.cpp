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

#include "dxc/process_map.hpp"

#include <cmath>
#include <sstream>

#include "dxc/protocol.hpp"

namespace dxc {

namespace {

ComplexMatrix basis_op(int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

const ComplexMatrix& pauli_pair(int alpha, int beta) {
  static const std::array<ComplexMatrix, 16> kPairs = [] {
    std::array<ComplexMatrix, 16> out;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) out[a * 4 + b] = tensor_product(pauli(a), pauli(b));
    }
    return out;
  }();
  return kPairs.at(static_cast<std::size_t>(alpha * 4 + beta));
}

ProcessMap ProcessMap::from_linear(
    const std::function<ComplexMatrix(const ComplexMatrix&)>& channel) {
  ProcessMap out;
  for (int g = 0; g < 4; ++g) {
    const ComplexMatrix image = channel(pauli(g));
    if (image.rows() != 4 || image.cols() != 4) {
      throw Error("ProcessMap::from_linear: channel must return a 4x4 operator");
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        out.at(g, a, b) = (pauli_pair(a, b) * image).trace().real() / 4.0;
      }
    }
  }
  return out;
}

ProcessMap ProcessMap::from_kraus(std::span<const ComplexMatrix> kraus) {
  return from_linear([&](const ComplexMatrix& x) {
    ComplexMatrix y = ComplexMatrix::Zero(4, 4);
    for (const auto& k : kraus) y += k * x * k.adjoint();
    return y;
  });
}

ProcessMap ProcessMap::from_choi(const ComplexMatrix& c) {
  if (c.rows() != 8 || c.cols() != 8) {
    throw Error("ProcessMap::from_choi: expected an 8x8 matrix");
  }
  return from_linear([&](const ComplexMatrix& x) {
    ComplexMatrix y = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) y += x(i, j) * c.block(4 * i, 4 * j, 4, 4);
    }
    return y;
  });
}

ComplexMatrix ProcessMap::apply_linear(const ComplexMatrix& x) const {
  const auto coeffs = pauli_decompose_complex(x);
  ComplexMatrix y = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Complex c = 0.0;
      for (int g = 0; g < 4; ++g) c += (*this)(g, a, b) * coeffs[g];
      if (c != 0.0) y += c * pauli_pair(a, b);
    }
  }
  return y;
}

double ProcessMap::tp_violation() const {
  double v = std::abs((*this)(0, 0, 0) - 0.5);
  for (int g = 1; g < 4; ++g) v = std::max(v, std::abs((*this)(g, 0, 0)));
  return v;
}

DensityMatrix apply(const ProcessMap& map, const DensityMatrix& rho) {
  if (rho.num_qubits() != 1) throw Error("apply: input must be a 1-qubit state");
  if (map.tp_violation() > kTPTol) throw Error("apply: map is not trace preserving");
  ComplexMatrix out = map.apply_linear(rho.matrix());
  const double lowest = eigh(out).values.minCoeff();
  if (lowest < -kCPTol) {
    std::ostringstream os;
    os << "map not CP on this input (eigenvalue " << lowest << ")";
    throw Error(os.str());
  }
  return DensityMatrix(std::move(out), {rho.labels()[0], photon_label(1)});
}

CycleImages cycle_images(const ProcessMap& map) {
  CycleImages images;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) images[i * 2 + j] = map.apply_linear(basis_op(i, j));
  }
  return images;
}

ComplexMatrix apply_cycle(const ProcessMap& map, const ComplexMatrix& state) {
  return apply_cycle(cycle_images(map), state);
}

ComplexMatrix apply_cycle(const CycleImages& images, const ComplexMatrix& state) {
  const Eigen::Index r = state.rows() / 2;
  if (state.rows() != state.cols() || state.rows() != 2 * r || r == 0) {
    throw Error("apply_cycle: state must be square with even dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(4 * r, 4 * r);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto block = state.block(i * r, j * r, r, r);
      const ComplexMatrix& f = images[i * 2 + j];
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          if (f(a, b) != 0.0) out.block(a * r, b * r, r, r) += f(a, b) * block;
        }
      }
    }
  }
  return out;
}

DensityMatrix apply_chain(const ProcessMap& map, const DensityMatrix& init,
                          std::size_t n, std::size_t cap) {
  if (init.num_qubits() != 1) throw Error("apply_chain: init must be a 1-qubit state");
  if (n < 1) throw Error("apply_chain: need at least one cycle");
  if (n > cap) {
    std::ostringstream os;
    os << "apply_chain: " << n << " cycles exceeds cap " << cap;
    throw Error(os.str());
  }
  if (map.tp_violation() > kTPTol) {
    throw Error("apply_chain: map is not trace preserving");
  }
  const CycleImages images = cycle_images(map);
  ComplexMatrix state = init.matrix();
  for (std::size_t c = 0; c < n; ++c) state = apply_cycle(images, state);
  return DensityMatrix(std::move(state), chain_labels(n));
}

ChoiMatrix choi(const ProcessMap& map) {
  const CycleImages images = cycle_images(map);
  ComplexMatrix c = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c.block(4 * i, 4 * j, 4, 4) = images[i * 2 + j];
  }
  return {c};
}

CptpReport is_cptp(const ProcessMap& map) {
  const double lowest = eigh(choi(map).matrix).values.minCoeff();
  return {lowest >= -kCPTol, map.tp_violation() <= kTPTol, lowest};
}

double process_fidelity(const ProcessMap& a, const ProcessMap& b) {
  if (a.tp_violation() > kTPTol || b.tp_violation() > kTPTol) {
    throw Error("process_fidelity: both maps must be trace preserving");
  }
  return jozsa_fidelity(choi(a).matrix, choi(b).matrix, kCPTol);
}

ProcessMap ideal_process_map() {
  // Closed form of from_kraus(ideal_cycle_isometry()); stored exactly so the
  // trace-preservation row is (1/2, 0, 0, 0) to the last bit.
  ProcessMap m;
  m.at(0, 0, 0) = 0.5;
  m.at(0, 2, 3) = 0.5;
  m.at(1, 1, 1) = 0.5;
  m.at(1, 3, 2) = 0.5;
  m.at(2, 1, 2) = 0.5;
  m.at(2, 3, 1) = -0.5;
  m.at(3, 0, 3) = 0.5;
  m.at(3, 2, 0) = 0.5;
  return m;
}

ProcessMap depolarizing_map() {
  ProcessMap m;
  m.at(0, 0, 0) = 0.5;
  return m;
}

}  // namespace dxc
