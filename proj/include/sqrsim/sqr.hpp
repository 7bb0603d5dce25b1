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
#include <stdexcept>
#include <string>

#include "sqrsim/numerics.hpp"

/// STIRAP-based qubit rotation on a four-level system: ground states |1>,|2>
/// (the qubit), auxiliary |3>, excited |4>. Levels are 0-based in matrices.
namespace sqrsim::sqr {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rotation U_n(delta) about n = (sin 2chi cos eta, sin 2chi sin eta, cos 2chi).
struct GateSpec {
  double chi = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  std::string label;
};

/// Angles are reduced to (-pi, pi]; the axis is a unit vector by construction.
GateSpec make_gate(double chi, double eta, double delta, std::string label = {});

/// Pulse timing and amplitudes. Sequence k is centred at -(2k+1)T/2 for
/// k = 1, 0 (i.e. -3T/2 then -T/2); t0 offsets the lobes inside a sequence.
struct PulseConfig {
  double omega0 = 250.0;
  double delta_cap = 2500.0;  // single-photon detuning of |4>
  double period = 20.0;       // T
  double offset = 1.6;        // t0
  double sigma = 2.0;
  double t_min = -40.0;
  double t_max = 0.0;

  double first_center() const { return -1.5 * period; }
  double second_center() const { return -0.5 * period; }

  /// Throws ConfigError when an invariant is broken.
  void validate() const;
};

struct QubitState {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  /// Throws ConfigError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
  static QubitState make(Complex alpha, Complex beta);
  /// Scales (alpha, beta) to unit norm.
  static QubitState normalized(Complex alpha, Complex beta);

  Eigen::Vector2cd vector() const { return {alpha, beta}; }
};

enum class Channel { omega1 = 1, omega2 = 2, omega3 = 3 };

Complex pulse_value(Channel channel, double t, const PulseConfig& cfg, const GateSpec& gate);
Complex pulse_derivative(Channel channel, double t, const PulseConfig& cfg, const GateSpec& gate);

/// (Omega1, Omega2, Omega3) at t.
std::array<Complex, 3> pulses(double t, const PulseConfig& cfg, const GateSpec& gate);
std::array<Complex, 3> pulse_derivatives(double t, const PulseConfig& cfg, const GateSpec& gate);

/// H = Delta |4><4| + 1/2 sum_i (Omega_i |i><4| + h.c.).
numerics::HermitianOperator h_sqr(double t, const PulseConfig& cfg, const GateSpec& gate);
/// dH/dt of h_sqr from the analytic lobe derivatives.
numerics::HermitianOperator dh_sqr(double t, const PulseConfig& cfg, const GateSpec& gate);

struct DarkBright {
  QubitState dark;
  QubitState bright;
};

DarkBright dark_bright(const GateSpec& gate);

/// U_n(delta) = cos(delta/2) I - i sin(delta/2) n.sigma.
Eigen::Matrix2cd rotation(const GateSpec& gate);

/// U_n(delta) psi0, without the global phase e^{-i delta/2}.
QubitState target_state(const GateSpec& gate, const QubitState& psi0);

}  // namespace sqrsim::sqr
