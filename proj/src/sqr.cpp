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

#include "sqrsim/sqr.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace sqrsim::sqr {

namespace {

using numerics::HermitianOperator;

double reduce_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

double lobe(double t, double center, double sigma) {
  const double x = (t - center) / sigma;
  return std::exp(-0.5 * x * x);
}

double lobe_derivative(double t, double center, double sigma) {
  return -(t - center) / (sigma * sigma) * lobe(t, center, sigma);
}

// Envelope shared by Omega1 and Omega2 (pump role in sequence 1, Stokes role in
// sequence 2) and the two Omega3 lobes. Omega3 carries e^{i delta} on its
// second lobe only.
template <double (*Shape)(double, double, double)>
std::array<Complex, 3> evaluate(double t, const PulseConfig& cfg, const GateSpec& gate) {
  const double c1 = cfg.first_center();
  const double c2 = cfg.second_center();
  const double s = cfg.sigma;
  const double pump = Shape(t, c1 + cfg.offset, s) + Shape(t, c2 - cfg.offset, s);
  const Complex stokes = Shape(t, c1 - cfg.offset, s) + std::polar(1.0, gate.delta) * Shape(t, c2 + cfg.offset, s);
  return {
      Complex(cfg.omega0 * std::cos(gate.chi) * pump, 0.0),
      std::polar(cfg.omega0 * std::sin(gate.chi), gate.eta) * pump,
      cfg.omega0 * stokes,
  };
}

HermitianOperator assemble(const std::array<Complex, 3>& couplings, double excited) {
  Matrix m = Matrix::Zero(4, 4);
  m(3, 3) = excited;
  for (int i = 0; i < 3; ++i) {
    m(i, 3) = 0.5 * couplings[i];
    m(3, i) = std::conj(m(i, 3));
  }
  return HermitianOperator(m);
}

}  // namespace

GateSpec make_gate(double chi, double eta, double delta, std::string label) {
  GateSpec g;
  g.chi = reduce_angle(chi);
  g.eta = reduce_angle(eta);
  g.delta = reduce_angle(delta);
  const double s2 = std::sin(2.0 * g.chi);
  g.axis = {s2 * std::cos(g.eta), s2 * std::sin(g.eta), std::cos(2.0 * g.chi)};
  g.label = std::move(label);
  return g;
}

void PulseConfig::validate() const {
  if (!(omega0 > 0.0)) throw ConfigError("omega0 must be positive");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(t_min < t_max)) throw ConfigError("t_min must be smaller than t_max");
  if (!std::isfinite(delta_cap) || !std::isfinite(period) || !std::isfinite(offset)) {
    throw ConfigError("pulse parameters must be finite");
  }
  if (!(t_min <= first_center() && second_center() <= t_max)) {
    throw ConfigError("evolution window must contain both sequence centres -3T/2 and -T/2");
  }
}

QubitState QubitState::make(Complex alpha, Complex beta) {
  const double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > 1e-12) throw ConfigError("qubit state must be normalized");
  return {alpha, beta};
}

QubitState QubitState::normalized(Complex alpha, Complex beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("qubit state must be nonzero and finite");
  return {alpha / n, beta / n};
}

std::array<Complex, 3> pulses(double t, const PulseConfig& cfg, const GateSpec& gate) {
  return evaluate<lobe>(t, cfg, gate);
}

std::array<Complex, 3> pulse_derivatives(double t, const PulseConfig& cfg, const GateSpec& gate) {
  return evaluate<lobe_derivative>(t, cfg, gate);
}

Complex pulse_value(Channel channel, double t, const PulseConfig& cfg, const GateSpec& gate) {
  return pulses(t, cfg, gate)[static_cast<int>(channel) - 1];
}

Complex pulse_derivative(Channel channel, double t, const PulseConfig& cfg, const GateSpec& gate) {
  return pulse_derivatives(t, cfg, gate)[static_cast<int>(channel) - 1];
}

HermitianOperator h_sqr(double t, const PulseConfig& cfg, const GateSpec& gate) {
  return assemble(pulses(t, cfg, gate), cfg.delta_cap);
}

HermitianOperator dh_sqr(double t, const PulseConfig& cfg, const GateSpec& gate) {
  return assemble(pulse_derivatives(t, cfg, gate), 0.0);
}

DarkBright dark_bright(const GateSpec& gate) {
  const double c = std::cos(gate.chi);
  const double s = std::sin(gate.chi);
  const Complex ph = std::polar(1.0, gate.eta);
  return {QubitState{-s, ph * c}, QubitState{c, ph * s}};
}

Eigen::Matrix2cd rotation(const GateSpec& gate) {
  const auto& n = gate.axis;
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd ns;
  ns << n[2], Complex(n[0], -n[1]), Complex(n[0], n[1]), -n[2];
  return std::cos(0.5 * gate.delta) * Eigen::Matrix2cd::Identity() - i * std::sin(0.5 * gate.delta) * ns;
}

QubitState target_state(const GateSpec& gate, const QubitState& psi0) {
  const Eigen::Vector2cd out = rotation(gate) * psi0.vector();
  return {out(0), out(1)};
}

}  // namespace sqrsim::sqr
