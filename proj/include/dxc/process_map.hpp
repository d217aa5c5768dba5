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

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>

#include "dxc/linalg.hpp"

namespace dxc {

inline constexpr double kTPTol = 1e-10;
inline constexpr double kCPTol = 1e-8;
inline constexpr std::size_t kDefaultChainCap = 10;

/// One-cycle channel from the DE qubit to the (DE, photon) pair, stored as
/// the 64 real coefficients phi[gamma][alpha][beta] of
///
///   Phi(rho) = sum_{alpha beta gamma} phi^gamma_{alpha beta} rho_gamma
///              sigma_alpha (x) sigma_beta,
///
/// where rho = sum_gamma rho_gamma sigma_gamma, sigma_alpha acts on the DE and
/// sigma_beta on the emitted photon. Pauli indices run over 0, x, y, z.
class ProcessMap {
 public:
  using Coefficients = std::array<double, 64>;

  ProcessMap() { phi_.fill(0.0); }
  explicit ProcessMap(const Coefficients& phi) : phi_(phi) {}

  static constexpr std::size_t flat_index(int gamma, int alpha, int beta) {
    return static_cast<std::size_t>(gamma * 16 + alpha * 4 + beta);
  }

  double operator()(int gamma, int alpha, int beta) const {
    return phi_[flat_index(gamma, alpha, beta)];
  }
  double& at(int gamma, int alpha, int beta) { return phi_[flat_index(gamma, alpha, beta)]; }

  const Coefficients& coefficients() const { return phi_; }

  /// Coefficients of an arbitrary linear map on 2x2 matrices,
  /// phi^gamma_{alpha beta} = Re Tr[(sigma_alpha (x) sigma_beta) Phi(sigma_gamma)] / 4.
  static ProcessMap from_linear(
      const std::function<ComplexMatrix(const ComplexMatrix&)>& channel);
  static ProcessMap from_kraus(std::span<const ComplexMatrix> kraus);
  /// Inverse of choi(); blocks are indexed by the input basis.
  static ProcessMap from_choi(const ComplexMatrix& choi);

  /// Linear extension to any 2x2 operator; returns a 4x4 (DE, photon) operator.
  ComplexMatrix apply_linear(const ComplexMatrix& x) const;

  /// Maximum deviation from the trace-preservation conditions
  /// phi^0_00 = 1/2 and phi^{x,y,z}_00 = 0.
  double tp_violation() const;

 private:
  Coefficients phi_;
};

/// sigma_alpha (x) sigma_beta, alpha on the DE factor.
const ComplexMatrix& pauli_pair(int alpha, int beta);

/// Applies one cycle to a 1-qubit DE state; output labels (DE, p1).
DensityMatrix apply(const ProcessMap& map, const DensityMatrix& rho);

/// Images Phi(|i><j|) of the four matrix units, indexed i * 2 + j.
using CycleImages = std::array<ComplexMatrix, 4>;
CycleImages cycle_images(const ProcessMap& map);

/// Applies one cycle to the DE factor (qubit 0) of an n-qubit operator,
/// inserting the new photon right after the DE. No validity checks.
ComplexMatrix apply_cycle(const ProcessMap& map, const ComplexMatrix& state);
ComplexMatrix apply_cycle(const CycleImages& images, const ComplexMatrix& state);

/// Density matrix of DE and n photons, ordered DE, p_n, ..., p_1.
DensityMatrix apply_chain(const ProcessMap& map, const DensityMatrix& init,
                          std::size_t n, std::size_t cap = kDefaultChainCap);

/// Choi matrix C = sum_ij |i><j| (x) Phi(|i><j|), 8x8 with the input factor
/// first. Trace 2 for trace-preserving maps.
struct ChoiMatrix {
  ComplexMatrix matrix;
};

ChoiMatrix choi(const ProcessMap& map);

struct CptpReport {
  bool cp;
  bool tp;
  double min_choi_eigenvalue;
};

CptpReport is_cptp(const ProcessMap& map);

/// Jozsa fidelity of the two Choi matrices.
double process_fidelity(const ProcessMap& a, const ProcessMap& b);

/// Map of the ideal unitary cycle (emission then G).
ProcessMap ideal_process_map();

/// Fully depolarizing map onto I/4: phi^0_00 = 1/2, everything else zero.
ProcessMap depolarizing_map();

}  // namespace dxc
