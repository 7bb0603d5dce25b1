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

#include "sqrsim/sc2.hpp"

#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>

namespace sqrsim::sc2 {

using numerics::HermitianOperator;

namespace {

void require_positive_detuning(const sqr::PulseConfig& cfg) {
  if (!(cfg.delta_cap > 0.0)) throw sqr::ConfigError("the Raman schemes require delta_cap > 0");
}

HermitianOperator outer_over(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b, double scale) {
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = (a[i] * std::conj(b[j]) + b[i] * std::conj(a[j])) * scale;
  }
  return HermitianOperator(m);
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Equal split of a product a^* b = r e^{i phi}: a = e^{-i phi/2} sqrt(r), b = e^{+i phi/2} sqrt(r).
std::pair<Complex, Complex> split(double r, double phi) {
  const double s = std::sqrt(r);
  return {std::polar(s, -0.5 * phi), std::polar(s, 0.5 * phi)};
}

}  // namespace

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

HermitianOperator h_eff_sqr(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate) {
  require_positive_detuning(cfg);
  const auto omega = sqr::pulses(t, cfg, gate);
  return outer_over(omega, omega, 0.125 / cfg.delta_cap);
}

HermitianOperator dh_eff_sqr(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate) {
  require_positive_detuning(cfg);
  return outer_over(sqr::pulse_derivatives(t, cfg, gate), sqr::pulses(t, cfg, gate), 0.25 / cfg.delta_cap);
}

HermitianOperator h_eff_cd(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                           const cd::CdOptions& opts) {
  return cd::cd_generator([&](double s) { return h_eff_sqr(s, cfg, gate); },
                          [&](double s) { return dh_eff_sqr(s, cfg, gate); }, t, opts);
}

EffectiveTargets coupling_targets(const std::array<Complex, 3>& omega, const HermitianOperator& cd_eff,
                                  double delta_cap) {
  auto target = [&](int i, int j) { return 0.25 * omega[i] * std::conj(omega[j]) + delta_cap * cd_eff(i, j); };
  const Complex z12 = target(0, 1), z13 = target(0, 2), z23 = target(1, 2);
  return {std::abs(z12),          std::abs(z13),          std::abs(z23),
          wrap_phase(std::arg(z12)), wrap_phase(std::arg(z13)), wrap_phase(std::arg(z23))};
}

EffectiveTargets coupling_targets(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                  const cd::CdOptions& opts) {
  require_positive_detuning(cfg);
  return coupling_targets(sqr::pulses(t, cfg, gate), h_eff_cd(t, cfg, gate, opts), cfg.delta_cap);
}

double envelope(double t, const sqr::PulseConfig& cfg) {
  const double k = cfg.omega0;
  const double w = 4.0 * cfg.sigma;
  auto window = [&](double centre) {
    const double x = t - centre;
    return logistic(k * (x + w)) * logistic(-k * (x - w));
  };
  return window(cfg.second_center()) + window(cfg.first_center());
}

Sc2Controls solve_controls(const std::array<Complex, 3>& omega, const EffectiveTargets& tg, double delta_cap,
                           double f_env, double r_floor) {
  Sc2Controls out;
  auto& o = out.omega;
  if (tg.r12 >= r_floor) {
    std::tie(o[0], o[1]) = split(tg.r12, tg.phi12);
    o[2] = std::polar(tg.r13 * f_env / std::sqrt(tg.r12), tg.phi13 - 0.5 * tg.phi12);
  }
  // What level 4 leaves of the (2,3) target goes through level 5.
  const Complex rest = std::polar(tg.r23, tg.phi23) - std::conj(o[1]) * o[2];
  if (std::abs(rest) >= r_floor) std::tie(o[3], o[4]) = split(std::abs(rest), wrap_phase(std::arg(rest)));

  const double inv = 1.0 / (4.0 * delta_cap);
  out.detuning[0] = (4.0 * std::norm(o[0]) - std::norm(omega[0])) * inv;
  out.detuning[1] = (4.0 * (std::norm(o[1]) + std::norm(o[3])) - std::norm(omega[1])) * inv;
  out.detuning[2] = (4.0 * (std::norm(o[4]) + std::norm(o[2])) - std::norm(omega[2])) * inv;
  return out;
}

Sc2Controls solve_controls(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const Sc2Options& opts) {
  require_positive_detuning(cfg);
  const auto omega = sqr::pulses(t, cfg, gate);
  const EffectiveTargets tg = coupling_targets(omega, h_eff_cd(t, cfg, gate, opts.cd), cfg.delta_cap);
  const double f = opts.apply_envelope ? envelope(t, cfg) : 1.0;
  return solve_controls(omega, tg, cfg.delta_cap, f, opts.r_floor * cfg.omega0 * cfg.omega0);
}

HermitianOperator h_sc2(const Sc2Controls& c, const sqr::PulseConfig& cfg) {
  require_positive_detuning(cfg);
  Matrix m = Matrix::Zero(5, 5);
  for (int i = 0; i < 3; ++i) m(i, i) = -c.detuning[i];
  m(3, 3) = -cfg.delta_cap;
  m(4, 4) = -cfg.delta_cap;
  for (int i = 0; i < 3; ++i) m(3, i) = -c.omega[i];
  m(4, 1) = -c.omega[3];
  m(4, 2) = -c.omega[4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 5; ++j) m(i, j) = std::conj(m(j, i));
  }
  return HermitianOperator(m);
}

HermitianOperator h_sc2(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const Sc2Options& opts) {
  return h_sc2(solve_controls(t, cfg, gate, opts), cfg);
}

HermitianOperator h_eff_sc2(const Sc2Controls& c, const sqr::PulseConfig& cfg) {
  require_positive_detuning(cfg);
  const auto& o = c.omega;
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = std::conj(o[i]) * o[j];
  }
  m(1, 1) += std::norm(o[3]);
  m(2, 2) += std::norm(o[4]);
  m(1, 2) += std::conj(o[3]) * o[4];
  m(2, 1) += std::conj(o[4]) * o[3];
  m /= cfg.delta_cap;
  for (int i = 0; i < 3; ++i) m(i, i) -= c.detuning[i];
  return HermitianOperator(m);
}

double feasibility_residual(const EffectiveTargets& tg, double r_floor) {
  if (tg.r12 < r_floor || tg.r13 < r_floor || tg.r23 < r_floor) return 0.0;
  return std::abs(wrap_phase(tg.phi13 - tg.phi12 - tg.phi23));
}

double feasibility_residual(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const Sc2Options& opts) {
  return feasibility_residual(coupling_targets(t, cfg, gate, opts.cd), opts.r_floor * cfg.omega0 * cfg.omega0);
}

}  // namespace sqrsim::sc2
