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
#include <cstdint>
#include <string>
#include <vector>

#include "dxc/linalg.hpp"
#include "dxc/process_map.hpp"
#include "dxc/protocol.hpp"

namespace dxc {

/// One projective correlation measurement: DE initialization, one photon
/// projection per cycle (first emitted photon first) and a final DE
/// projection. The DE is read out by a timed circular pulse, so only +-Z
/// (delay 3/4 T_DE) and +-Y (delay 1/2 T_DE) are available.
struct MeasurementSetting {
  SpinState init = SpinState::MinusX;
  std::vector<Polarization> photon_projections;
  SpinState de_projection = SpinState::PlusZ;
  /// Analysis-pulse delay in units of T_DE.
  double delay_fraction = 0.75;

  static MeasurementSetting make(SpinState init, std::vector<Polarization> photons,
                                 SpinState de_projection);

  std::size_t cycles() const { return photon_projections.size(); }
  void validate() const;
  std::string describe() const;
};

/// Binomial tally of one setting: `hits` clicks on the setting's projector
/// out of `shots` trials.
struct CountRecord {
  MeasurementSetting setting;
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t seed = 0;    // master seed
  std::uint64_t stream = 0;  // derived stream index

  double frequency() const {
    return shots == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(shots);
  }
};

/// One-cycle set (4 inits x {H,V,D,R} x {+Z,-Z,+Y,-Y}) followed by the
/// two-cycle set (4 inits x 16 photon pairs x 4 DE projections).
std::vector<MeasurementSetting> default_settings();

/// Tr[(Pi_DE (x) Pi_photons) apply_chain(map, init_state, cycles)].
double predict_probability(const ProcessMap& map, const MeasurementSetting& setting,
                           const DensityMatrix& init_state);

/// Same prediction through the Pauli-transfer form of the map (no density
/// matrices), used by the reconstruction.
double predict_probability_pauli(const ProcessMap& map, const MeasurementSetting& setting,
                                 const DensityMatrix& init_state);

/// Initial DE state assumed for a setting: purity-weighted mixture toward
/// the nominal initialization.
DensityMatrix setting_init_state(const MeasurementSetting& setting, double init_purity);

std::vector<CountRecord> simulate_counts(const ProcessMap& map,
                                         const std::vector<MeasurementSetting>& settings,
                                         std::uint64_t shots, std::uint64_t seed,
                                         double init_purity = 1.0);

struct ReconstructionOptions {
  double init_purity = 1.0;
  bool project_cptp = true;
  int restarts = 5;
  std::uint64_t restart_seed = 1;
  double restart_tolerance = 1e-3;
  bool parallel = true;
};

struct ReconstructionDiagnostics {
  std::size_t one_cycle_records = 0;
  std::size_t two_cycle_records = 0;
  int stage1_rank = 0;
  int jacobian_rank = 0;
  double stage1_residual = 0.0;
  double stage2_residual = 0.0;
  int stage2_status = 0;
  std::vector<double> restart_residuals;
  double restart_spread = 0.0;
  bool restart_disagreement = false;
  bool projected = false;
  double projection_distance = 0.0;  // Frobenius distance between Choi matrices
  ProcessMap stage1_map;
  ProcessMap stage2_map;
};

struct Reconstruction {
  ProcessMap map;
  ReconstructionDiagnostics diagnostics;
};

/// Stage 1: linear inversion of the one-cycle data for the 48 coefficients
/// with DE output index in {0, y, z}. Stage 2: nonlinear least squares over
/// all 64 coefficients against one- and two-cycle data, seeded with stage 1
/// plus ideal values for the 16 DE-sigma_x rows. Stage 3 (optional):
/// projection onto CP-TP maps.
Reconstruction reconstruct(const std::vector<CountRecord>& counts,
                           const ReconstructionOptions& options = {});

/// Stage-1 design matrix (one row per one-cycle setting, 64 columns in
/// ProcessMap::flat_index order).
Eigen::MatrixXd one_cycle_design(const std::vector<MeasurementSetting>& settings,
                                 double init_purity = 1.0);

/// Jacobian of all predictions with respect to the 64 coefficients.
Eigen::MatrixXd prediction_jacobian(const ProcessMap& map,
                                    const std::vector<MeasurementSetting>& settings,
                                    double init_purity = 1.0);

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

/// Nearest CP-TP map in Frobenius distance of the Choi matrices (Dykstra's
/// alternating projections between the PSD cone and the TP affine set).
ProcessMap project_cptp(const ProcessMap& map);

}  // namespace dxc
