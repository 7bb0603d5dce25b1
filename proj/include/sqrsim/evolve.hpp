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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sqrsim/cd.hpp"
#include "sqrsim/numerics.hpp"
#include "sqrsim/sc2.hpp"
#include "sqrsim/sqr.hpp"

namespace sqrsim::evolve {

enum class Scheme { bare, sc1, sc2 };

/// 4 for bare and sc1, 5 for sc2.
int dimension(Scheme scheme);
std::string_view to_string(Scheme scheme);
/// Accepts "bare", "sc1", "sc2"; throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

class EvolutionError : public std::runtime_error {
 public:
  EvolutionError(Scheme scheme, double time, const std::string& what);
  Scheme scheme() const { return scheme_; }
  double time() const { return time_; }

 private:
  Scheme scheme_;
  double time_;
};

struct RunOptions {
  numerics::IntegratorOptions integrator;
  sc2::Sc2Options sc2;  // sc2.cd also drives the SC1 generator
  /// Recompute the counterdiabatic term / SC2 controls at every integrator
  /// stage instead of interpolating a precomputed schedule.
  bool direct = false;
  double samples_per_sigma = 20.0;
  /// Integrator step cap as a fraction of sigma.
  double max_step_per_sigma = 0.25;
};

struct EvolutionTrace {
  Scheme scheme = Scheme::bare;
  std::vector<double> times;
  std::vector<ComplexVector> states;
  std::vector<RealVector> populations;
  ComplexVector final_state;
  double fidelity = 0.0;
  double norm_drift = 0.0;
  double error_estimate = 0.0;
  long steps = 0;

  int levels() const { return static_cast<int>(final_state.size()); }
};

/// |<psi(t_max)| U_n(delta) psi0>|^2 with the target padded by zeros beyond |2>.
double fidelity(const ComplexVector& final_state, const sqr::GateSpec& gate, const sqr::QubitState& psi0);

/// Integrates the chosen scheme over [t_min, t_max] starting from psi0 on |1>,|2>.
EvolutionTrace run(Scheme scheme, const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                   const sqr::QubitState& psi0, const RunOptions& opts = {});

struct LevelSummary {
  double max_population = 0.0;
  double final_population = 0.0;
};

std::vector<LevelSummary> population_summary(const EvolutionTrace& trace);

}  // namespace sqrsim::evolve
