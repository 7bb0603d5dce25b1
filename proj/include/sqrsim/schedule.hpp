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

#include <string>
#include <vector>

#include "sqrsim/evolve.hpp"

namespace sqrsim::schedule {

/// Drive amplitudes of one scheme on a uniform time grid.
///
/// Channels: bare -> O1..O3; sc1 -> O1..O3, w1..w3; sc2 -> O1..O3 (reference
/// SQR pulses), Ot1..Ot5 and real detunings d1..d3.
struct ControlSchedule {
  evolve::Scheme scheme = evolve::Scheme::bare;
  std::vector<double> times;
  std::vector<std::string> complex_names;
  std::vector<std::vector<Complex>> complex_channels;  // [channel][sample]
  std::vector<std::string> real_names;
  std::vector<std::vector<double>> real_channels;
};

/// Uniform grid of `points` samples over [t_min, t_max].
std::vector<double> uniform_grid(double t_min, double t_max, int points);

/// Samples the controls pointwise. SC1 couplings come from sqr_cd_couplings
/// and may throw StructuralResidualError.
ControlSchedule sample(evolve::Scheme scheme, const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                       const evolve::RunOptions& opts, int points);

/// SC2 controls on `times`, with the sign of the level-4 couplings
/// (Omega~_1..3) and of the level-5 couplings (Omega~_4, Omega~_5) chosen to be
/// continuous from sample to sample. The pointwise solve halves wrapped phases,
/// so a target phase crossing +-pi flips all couplings of one excited level at
/// once; that flip is a gauge change of the excited level and leaves the
/// eliminated Hamiltonian unchanged.
std::vector<sc2::Sc2Controls> continuous_sc2_controls(const std::vector<double>& times, const sqr::GateSpec& gate,
                                                      const sqr::PulseConfig& cfg, const sc2::Sc2Options& opts);

}  // namespace sqrsim::schedule
