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
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dxc/linalg.hpp"
#include "dxc/process_map.hpp"
#include "dxc/protocol.hpp"

namespace dxc {

/// Sum of |negative eigenvalues| of the partial transpose of a 2-qubit state.
double negativity(const DensityMatrix& rho);
/// Same for a raw 4x4 operator, normalized by its trace first.
double negativity(const ComplexMatrix& rho);

/// Jozsa fidelity; throws on dimension mismatch.
double fidelity_states(const DensityMatrix& a, const DensityMatrix& b);

/// Direction of a projective qubit measurement on the Bloch sphere. Outcome 0
/// is the state along (theta, phi), outcome 1 the antipodal state.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

ComplexVector bloch_ket(const BlochAngles& a, int outcome);

/// Unnormalized post-measurement state of the two unmeasured qubits.
struct Branch {
  std::vector<int> outcomes;
  ComplexMatrix state;  // 4x4, trace = outcome probability
};

/// Produces all measurement branches for a given choice of bases.
using BranchEvaluator =
    std::function<std::vector<Branch>(std::span<const BlochAngles>)>;

struct LEOutcome {
  std::vector<int> outcomes;
  double probability;
  double negativity;
};

struct LEOptions {
  int random_starts = 5;
  std::uint64_t seed = 20160923;
  double tolerance = 1e-6;
  double grid_step_deg = 15.0;
  int max_sweeps = 30;
  bool parallel = true;
};

struct LEResult {
  std::size_t m = 0;  // 1-based positions in label order
  std::size_t n = 0;
  double negativity = 0.0;
  std::vector<std::size_t> measured;  // positions of the measured qubits
  std::vector<BlochAngles> optimal_bases;
  std::vector<LEOutcome> outcome_table;
  std::vector<double> start_values;  // best value reached from each start
  double start_spread() const;
};

/// Outcome-averaged negativity sum_s p_s N(rho_s).
double average_negativity(const std::vector<Branch>& branches);

/// Maximizes average_negativity over product projective bases. Starts: all-X,
/// all-Y, all-Z and `random_starts` random points; each start runs coordinate
/// ascent (per-qubit grid scan then simplex refinement) followed by a
/// simplex refinement over all angles.
LEResult optimize_localizable(const BranchEvaluator& evaluate,
                              std::size_t num_measured, const LEOptions& options);

/// Branches of a dense n-qubit state with qubits m and n kept (1-based).
BranchEvaluator dense_branches(const DensityMatrix& rho, std::size_t m, std::size_t n);

/// Branches of the chain state after n_cycles, built cycle by cycle: each
/// measured photon is projected as soon as it is emitted, so only the DE and
/// the kept photons are ever stored. Positions follow chain_labels():
/// position 1 is the DE, position k >= 2 is photon n_cycles + 2 - k.
BranchEvaluator chain_branches(const ProcessMap& map, const DensityMatrix& init,
                               std::size_t n_cycles, std::size_t m, std::size_t n);

LEResult localizable_entanglement(const DensityMatrix& rho, std::size_t m,
                                  std::size_t n, const LEOptions& options = {});

struct LECurvePoint {
  std::size_t d;
  LEResult result;
};

/// LE between positions m and m + d of the chain with m + d - 1 cycles.
std::vector<LECurvePoint> le_curve(const ProcessMap& map, const DensityMatrix& init,
                                   std::size_t d_max, std::size_t m = 1,
                                   const LEOptions& options = {},
                                   std::size_t cap = kDefaultChainCap);

struct ExponentialFit {
  double n0 = 0.0;
  double xi = 0.0;  // +inf when no decay is found
  double residual = 0.0;  // RMS of the fit residuals
  std::size_t points_used = 0;
  bool decaying = false;
  std::string diagnostic;
};

inline constexpr double kFitFloor = 1e-4;
inline constexpr double kNoDecayXi = 1e6;

/// Least-squares fit of N0 exp(-d / xi) in linear space. Points with
/// N <= 1e-4 are dropped; fewer than three usable points throws.
ExponentialFit fit_exponential(std::span<const std::pair<double, double>> curve);

/// Pauli expectation values keyed by strings over {0, x, y, z}, DE first.
using PauliExpectations = std::map<std::string, double>;

/// All 4^n expectations of an n-qubit state.
PauliExpectations pauli_expectations(const DensityMatrix& rho);

/// Whether a 3-qubit Pauli string can be measured (DE component 0, y or z).
bool is_measurable(const std::string& pauli_string);

struct FidelityBounds {
  double f_measured = 0.0;
  double f_low = 0.0;
  double f_high = 0.0;
  /// Bounds using only |<P>| <= 1 for every unmeasured term.
  double f_low_triangle = 0.0;
  double f_high_triangle = 0.0;
  std::vector<std::string> unmeasured;
  bool consistent = true;
};

/// Bounds on <psi|rho|psi> for a 3-qubit target given the measurable Pauli
/// expectations. Unmeasured terms are bracketed by |<P>| <= 1 and, tighter,
/// by positivity of (I +- A)(I +- B) for commuting measured A, B with AB = +-P.
FidelityBounds tripartite_fidelity_bounds(const PauliExpectations& expectations,
                                          const PureState& target);

}  // namespace dxc
