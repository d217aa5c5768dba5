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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dxc/linalg.hpp"

namespace dxc {

inline const std::string kDELabel = "DE";

/// Label of the k-th emitted photon (k = 1 is the oldest).
std::string photon_label(std::size_t k);

/// Labels of a chain state after n cycles: DE, p_n, ..., p_1.
std::vector<std::string> chain_labels(std::size_t n_cycles);

// Basis conventions. DE computational basis: |+Z> = |0>, |-Z> = |1>.
// Photon computational basis: |R> = |0>, |L> = |1>.
enum class SpinState { PlusZ, MinusZ, PlusX, MinusX, PlusY, MinusY };
enum class Polarization { R, L, H, V, D, B };

ComplexVector spin_ket(SpinState s);
ComplexVector photon_ket(Polarization p);

std::string to_string(SpinState s);
std::string to_string(Polarization p);
SpinState parse_spin_state(std::string_view name);
Polarization parse_polarization(std::string_view name);

/// Unit-norm state vector over ordered qubit labels.
class PureState {
 public:
  PureState(ComplexVector amplitudes, std::vector<std::string> labels);

  static PureState spin(SpinState s);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }

  DensityMatrix density() const;

 private:
  ComplexVector amplitudes_;
  std::vector<std::string> labels_;
};

/// |<a|b>|^2; equals 1 iff the states agree up to a global phase.
double overlap_fidelity(const ComplexVector& a, const ComplexVector& b);

/// The timed precession gate exp(i pi/4 sigma_x) = (I + i sigma_x) / sqrt(2).
ComplexMatrix gate_G();

/// One ideal cycle as a 4x2 isometry onto (DE, new photon): the
/// polarization-tagged emission |+-Z> -> |+-Z>|R/L> followed by G on the DE.
ComplexMatrix ideal_cycle_isometry();

inline constexpr std::size_t kDefaultStateCap = 12;

/// Pure state after n_cycles ideal cycles. Each new photon is inserted next
/// to the DE, so the ordering is DE, p_n, ..., p_1.
PureState ideal_state(std::size_t n_cycles, const PureState& init,
                      std::size_t cap = kDefaultStateCap);

struct ProjectionResult {
  PureState state;
  double probability;
};

/// Projects one qubit onto `direction` and removes it from the state.
ProjectionResult project_qubit(const PureState& state, std::string_view label,
                               const ComplexVector& direction);

}  // namespace dxc
