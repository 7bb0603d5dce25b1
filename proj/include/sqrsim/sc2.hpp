// Copyright 2026 The sqrsim Authors
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

#include "sqrsim/cd.hpp"
#include "sqrsim/numerics.hpp"
#include "sqrsim/sqr.hpp"

/// Counterdiabatic driving folded into Raman pulses on a five-level system:
/// ground |1>,|2>,|3>, excited |4> (shared with the bare scheme) and |5>.
///
/// Ground-state couplings are designed in the adiabatically eliminated space
/// and then mapped back to the five-level pulses. Conventions used throughout:
///   * h_sc2 carries -Omega~_i in row 4 (and -Omega~_4, -Omega~_5 in row 5),
///     with the conjugates in column 4/5, and -delta_i, -Delta on the diagonal;
///   * its eliminated form has (i,j) entry Omega~_i^* Omega~_j / Delta - delta_i
///     [i==j], plus Omega~_4^* Omega~_5 / Delta on (2,3);
///   * the design target is h_eff_sqr + h_eff_cd with
///     h_eff_sqr(i,j) = Omega_i Omega_j^* / (4 Delta).
namespace sqrsim::sc2 {

struct EffectiveTargets {
  double r12 = 0.0, r13 = 0.0, r23 = 0.0;
  double phi12 = 0.0, phi13 = 0.0, phi23 = 0.0;  // wrapped to (-pi, pi]
};

struct Sc2Controls {
  std::array<Complex, 5> omega{};      // Omega~_1 .. Omega~_5
  std::array<double, 3> detuning{};    // delta_1 .. delta_3
};

struct Sc2Options {
  cd::CdOptions cd;
  /// R12 floor in units of omega0^2; below it Omega~_1..3 are set to zero.
  double r_floor = 1e-12;
  bool apply_envelope = true;
};

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phi);

numerics::HermitianOperator h_eff_sqr(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate);
numerics::HermitianOperator dh_eff_sqr(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate);

/// Counterdiabatic generator of h_eff_sqr. The rank-1 effective Hamiltonian has
/// a doubly degenerate zero eigenvalue; that pair is skipped via eps_deg.
numerics::HermitianOperator h_eff_cd(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                     const cd::CdOptions& opts);

/// R_ij e^{i phi_ij} = Omega_i Omega_j^* / 4 + Delta <i|H_cd^eff|j>.
EffectiveTargets coupling_targets(const std::array<Complex, 3>& omega, const numerics::HermitianOperator& cd_eff,
                                  double delta_cap);
EffectiveTargets coupling_targets(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                  const cd::CdOptions& opts);

/// Smooth window equal to one around both pulse sequences and zero outside,
/// with edges 4 sigma from each sequence centre and steepness omega0.
double envelope(double t, const sqr::PulseConfig& cfg);

/// Solves the eliminated-space criteria for given SQR pulses and targets.
/// `f_env` scales the Omega~_3 ratio; `r_floor` is absolute.
Sc2Controls solve_controls(const std::array<Complex, 3>& omega, const EffectiveTargets& targets, double delta_cap,
                           double f_env, double r_floor);
Sc2Controls solve_controls(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const Sc2Options& opts);

numerics::HermitianOperator h_sc2(const Sc2Controls& controls, const sqr::PulseConfig& cfg);
numerics::HermitianOperator h_sc2(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                  const Sc2Options& opts);

/// Eliminated form of h_sc2 for the given controls.
numerics::HermitianOperator h_eff_sc2(const Sc2Controls& controls, const sqr::PulseConfig& cfg);

/// |wrap(phi13 - phi12 - phi23)|: how far the targets are from what a
/// three-pulse, single-excited-level synthesis could produce. Zero when any
/// R_ij is below the floor.
double feasibility_residual(const EffectiveTargets& targets, double r_floor);
double feasibility_residual(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const Sc2Options& opts);

}  // namespace sqrsim::sc2
