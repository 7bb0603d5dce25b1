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

#include "sqrsim/schedule.hpp"

#include <stdexcept>

namespace sqrsim::schedule {

using evolve::Scheme;

std::vector<double> uniform_grid(double t_min, double t_max, int points) {
  if (points < 2) throw std::invalid_argument("a schedule grid needs at least 2 points");
  std::vector<double> out(points);
  for (int k = 0; k < points; ++k) out[k] = t_min + (t_max - t_min) * static_cast<double>(k) / (points - 1);
  out.back() = t_max;
  return out;
}

std::vector<sc2::Sc2Controls> continuous_sc2_controls(const std::vector<double>& times, const sqr::GateSpec& gate,
                                                      const sqr::PulseConfig& cfg, const sc2::Sc2Options& opts) {
  std::vector<sc2::Sc2Controls> out;
  out.reserve(times.size());
  // Last nonzero coupling vector seen for each excited level.
  std::array<Complex, 3> ref4{};
  std::array<Complex, 2> ref5{};
  for (double t : times) {
    sc2::Sc2Controls c = sc2::solve_controls(t, cfg, gate, opts);
    auto& o = c.omega;

    Complex overlap4 = std::conj(ref4[0]) * o[0] + std::conj(ref4[1]) * o[1] + std::conj(ref4[2]) * o[2];
    if (overlap4.real() < 0.0) {
      for (int i = 0; i < 3; ++i) o[i] = -o[i];
    }
    if (std::norm(o[0]) + std::norm(o[1]) + std::norm(o[2]) > 0.0) ref4 = {o[0], o[1], o[2]};

    Complex overlap5 = std::conj(ref5[0]) * o[3] + std::conj(ref5[1]) * o[4];
    if (overlap5.real() < 0.0) {
      o[3] = -o[3];
      o[4] = -o[4];
    }
    if (std::norm(o[3]) + std::norm(o[4]) > 0.0) ref5 = {o[3], o[4]};

    out.push_back(c);
  }
  return out;
}

ControlSchedule sample(Scheme scheme, const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                       const evolve::RunOptions& opts, int points) {
  cfg.validate();
  ControlSchedule s;
  s.scheme = scheme;
  s.times = uniform_grid(cfg.t_min, cfg.t_max, points);
  const std::size_t n = s.times.size();

  s.complex_names = {"O1", "O2", "O3"};
  s.complex_channels.assign(3, std::vector<Complex>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto o = sqr::pulses(s.times[k], cfg, gate);
    for (int c = 0; c < 3; ++c) s.complex_channels[c][k] = o[c];
  }

  if (scheme == Scheme::sc1) {
    for (const char* name : {"w1", "w2", "w3"}) s.complex_names.emplace_back(name);
    s.complex_channels.resize(6, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const auto w = cd::sqr_cd_couplings(s.times[k], cfg, gate, opts.sc2.cd);
      s.complex_channels[3][k] = w.omega1;
      s.complex_channels[4][k] = w.omega2;
      s.complex_channels[5][k] = w.omega3;
    }
  } else if (scheme == Scheme::sc2) {
    for (const char* name : {"Ot1", "Ot2", "Ot3", "Ot4", "Ot5"}) s.complex_names.emplace_back(name);
    s.complex_channels.resize(8, std::vector<Complex>(n));
    s.real_names = {"d1", "d2", "d3"};
    s.real_channels.assign(3, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
      const auto c = sc2::solve_controls(s.times[k], cfg, gate, opts.sc2);
      for (int i = 0; i < 5; ++i) s.complex_channels[3 + i][k] = c.omega[i];
      for (int i = 0; i < 3; ++i) s.real_channels[i][k] = c.detuning[i];
    }
  }
  return s;
}

}  // namespace sqrsim::schedule
