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

#include "dxc/linalg.hpp"
#include "dxc/process_map.hpp"
#include "dxc/protocol.hpp"

namespace dxc {

/// Device parameters. All times in nanoseconds.
struct PhysicalParams {
  double t_rad = 0.33;     // BiE radiative lifetime
  double t_nonrad = 0.07;  // excited-DE spin-preserving relaxation
  double T_DE = 3.0;       // DE precession period
  double T_BiE = 5.0;      // BiE precession period
  double T2_star = 100.0;  // DE coherence time
  double T_cycle = 2.25;   // inter-pulse interval
  double init_purity = 0.78;

  /// Throws Error naming the offending field.
  void validate() const;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int initial_intervals = 8;
  int max_intervals = 20000;
};

struct ModelMapResult {
  ProcessMap map;
  /// Emission probability beyond the window, discarded by renormalization.
  double truncated_mass = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// One-cycle map averaged over the BiE emission time.
///
/// For an emission at time t after the converting pulse the cycle is
///   |+-Z> -> |+-3>, BiE precession for t, emission |+-3> -> |+-Z>|R/L>,
///   spin-preserving DE* relaxation (a pure delay of t_nonrad), then DE
///   precession for the rest of the cycle with dephasing in the +-X basis.
/// The result is weighted by the emission density exp(-t/t_rad)/t_rad and
/// renormalized over the window [0, T_cycle - t_nonrad].
ModelMapResult model_process_map_detailed(const PhysicalParams& params,
                                          const QuadratureOptions& quad = {});

ProcessMap model_process_map(const PhysicalParams& params);

/// lambda |target><target| + (1 - lambda) I/2 with fidelity init_purity.
DensityMatrix initialization_state(const PhysicalParams& params,
                                   const PureState& target);

/// Free DE evolution for a time tau: precession about x with period T_DE,
/// then pure dephasing between the +-X eigenstates with 1/e time T2_star.
class DephasingChannel {
 public:
  DephasingChannel(double tau, const PhysicalParams& params);

  ComplexMatrix operator()(const ComplexMatrix& rho) const;
  DensityMatrix operator()(const DensityMatrix& rho) const;

  const ComplexMatrix& unitary() const { return unitary_; }
  double coherence() const { return coherence_; }

 private:
  ComplexMatrix unitary_;
  double coherence_;
};

DephasingChannel dephasing_channel(double tau, const PhysicalParams& params);

/// exp(-i pi (t / period) sigma_x); identity for an infinite period.
ComplexMatrix precession(double t, double period);

}  // namespace dxc
