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

#include "sqrsim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "sqrsim/schedule.hpp"

namespace sqrsim::evolve {

using numerics::HermitianOperator;

namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

class ComplexSpline {
 public:
  ComplexSpline(const std::vector<Complex>& v, double t0, double h) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      re[k] = v[k].real();
      im[k] = v[k].imag();
    }
    re_ = Spline(re.begin(), re.end(), t0, h);
    im_ = Spline(im.begin(), im.end(), t0, h);
  }
  Complex operator()(double t) const { return {re_(t), im_(t)}; }

 private:
  Spline re_, im_;
};

struct Grid {
  std::vector<double> times;
  double t0 = 0.0;
  double h = 0.0;

  std::size_t nearest(double t) const {
    const double k = std::round((t - t0) / h);
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(times.size() - 1)));
  }
};

Grid make_grid(const sqr::PulseConfig& cfg, const RunOptions& opts) {
  if (!(opts.samples_per_sigma > 0.0)) throw std::invalid_argument("samples_per_sigma must be positive");
  const double span = cfg.t_max - cfg.t_min;
  const int points = std::max(5, static_cast<int>(std::ceil(span / cfg.sigma * opts.samples_per_sigma)) + 1);
  Grid g;
  g.times = schedule::uniform_grid(cfg.t_min, cfg.t_max, points);
  g.t0 = cfg.t_min;
  g.h = span / (points - 1);
  return g;
}

ComplexVector embed(const sqr::QubitState& psi0, int dim) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = psi0.alpha;
  v(1) = psi0.beta;
  return v;
}

numerics::Generator sc1_generator(const sqr::GateSpec& gate, const sqr::PulseConfig& cfg, const RunOptions& opts) {
  const cd::CdOptions cdo = opts.sc2.cd;
  if (opts.direct) {
    return [=](double t) { return cd::h_sc1(t, cfg, gate, cdo); };
  }
  const Grid g = make_grid(cfg, opts);
  // Upper triangle of the counterdiabatic term, row major.
  std::vector<std::vector<Complex>> samples(10, std::vector<Complex>(g.times.size()));
  for (std::size_t k = 0; k < g.times.size(); ++k) {
    const HermitianOperator hcd = cd::sqr_cd(g.times[k], cfg, gate, cdo);
    int c = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) samples[c++][k] = hcd(i, j);
    }
  }
  auto splines = std::make_shared<std::vector<ComplexSpline>>();
  for (const auto& s : samples) splines->emplace_back(s, g.t0, g.h);

  return [=](double t) {
    Matrix m = sqr::h_sqr(t, cfg, gate).matrix();
    int c = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        const Complex z = (*splines)[c++](t);
        if (i == j) {
          m(i, i) += z.real();
        } else {
          m(i, j) += z;
          m(j, i) += std::conj(z);
        }
      }
    }
    return HermitianOperator(m);
  };
}

// Flips the sign of each excited level's couplings to agree with a reference
// taken from a gauge-continuous table.
void align_gauge(sc2::Sc2Controls& c, const sc2::Sc2Controls& ref) {
  auto& o = c.omega;
  const auto& r = ref.omega;
  const Complex ov4 = std::conj(r[0]) * o[0] + std::conj(r[1]) * o[1] + std::conj(r[2]) * o[2];
  if (ov4.real() < 0.0) {
    for (int i = 0; i < 3; ++i) o[i] = -o[i];
  }
  const Complex ov5 = std::conj(r[3]) * o[3] + std::conj(r[4]) * o[4];
  if (ov5.real() < 0.0) {
    o[3] = -o[3];
    o[4] = -o[4];
  }
}

numerics::Generator sc2_generator(const sqr::GateSpec& gate, const sqr::PulseConfig& cfg, const RunOptions& opts) {
  const Grid g = make_grid(cfg, opts);
  const sc2::Sc2Options so = opts.sc2;
  auto ref = std::make_shared<std::vector<sc2::Sc2Controls>>(
      schedule::continuous_sc2_controls(g.times, gate, cfg, so));

  if (opts.direct) {
    return [=](double t) {
      sc2::Sc2Controls c = sc2::solve_controls(t, cfg, gate, so);
      align_gauge(c, (*ref)[g.nearest(t)]);
      return sc2::h_sc2(c, cfg);
    };
  }

  // The complex targets R e^{i phi} are smooth; the controls are rebuilt from
  // them at every call so the sharp envelope edges are never interpolated.
  std::vector<std::vector<Complex>> z(3, std::vector<Complex>(g.times.size()));
  for (std::size_t k = 0; k < g.times.size(); ++k) {
    const auto tg = sc2::coupling_targets(g.times[k], cfg, gate, so.cd);
    z[0][k] = std::polar(tg.r12, tg.phi12);
    z[1][k] = std::polar(tg.r13, tg.phi13);
    z[2][k] = std::polar(tg.r23, tg.phi23);
  }
  auto splines = std::make_shared<std::vector<ComplexSpline>>();
  for (const auto& s : z) splines->emplace_back(s, g.t0, g.h);
  const double r_floor = so.r_floor * cfg.omega0 * cfg.omega0;

  return [=](double t) {
    sc2::EffectiveTargets tg;
    const Complex z12 = (*splines)[0](t), z13 = (*splines)[1](t), z23 = (*splines)[2](t);
    tg.r12 = std::abs(z12);
    tg.r13 = std::abs(z13);
    tg.r23 = std::abs(z23);
    tg.phi12 = sc2::wrap_phase(std::arg(z12));
    tg.phi13 = sc2::wrap_phase(std::arg(z13));
    tg.phi23 = sc2::wrap_phase(std::arg(z23));
    const double f = so.apply_envelope ? sc2::envelope(t, cfg) : 1.0;
    sc2::Sc2Controls c = sc2::solve_controls(sqr::pulses(t, cfg, gate), tg, cfg.delta_cap, f, r_floor);
    align_gauge(c, (*ref)[g.nearest(t)]);
    return sc2::h_sc2(c, cfg);
  };
}

}  // namespace

int dimension(Scheme scheme) { return scheme == Scheme::sc2 ? 5 : 4; }

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::bare:
      return "bare";
    case Scheme::sc1:
      return "sc1";
    case Scheme::sc2:
      return "sc2";
  }
  return "bare";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "bare") return Scheme::bare;
  if (name == "sc1") return Scheme::sc1;
  if (name == "sc2") return Scheme::sc2;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected bare, sc1 or sc2)");
}

EvolutionError::EvolutionError(Scheme scheme, double time, const std::string& what)
    : std::runtime_error(std::string(to_string(scheme)) + " evolution failed at t = " + std::to_string(time) + ": " +
                         what),
      scheme_(scheme),
      time_(time) {}

double fidelity(const ComplexVector& final_state, const sqr::GateSpec& gate, const sqr::QubitState& psi0) {
  if (final_state.size() < 2) throw std::invalid_argument("fidelity needs a state with at least two levels");
  const sqr::QubitState target = sqr::target_state(gate, psi0);
  const Complex overlap = std::conj(target.alpha) * final_state(0) + std::conj(target.beta) * final_state(1);
  return std::norm(overlap);
}

EvolutionTrace run(Scheme scheme, const sqr::GateSpec& gate, const sqr::PulseConfig& cfg,
                   const sqr::QubitState& psi0, const RunOptions& opts) {
  cfg.validate();
  opts.sc2.cd.validate();
  if (!(opts.max_step_per_sigma > 0.0)) throw std::invalid_argument("max_step_per_sigma must be positive");

  numerics::Generator gen;
  switch (scheme) {
    case Scheme::bare:
      gen = [=](double t) { return sqr::h_sqr(t, cfg, gate); };
      break;
    case Scheme::sc1:
      gen = sc1_generator(gate, cfg, opts);
      break;
    case Scheme::sc2:
      gen = sc2_generator(gate, cfg, opts);
      break;
  }

  numerics::IntegratorOptions io = opts.integrator;
  const double cap = cfg.sigma * opts.max_step_per_sigma;
  io.max_step = io.max_step > 0.0 ? std::min(io.max_step, cap) : cap;

  numerics::IntegrationResult res;
  try {
    res = numerics::integrate(gen, embed(psi0, dimension(scheme)), cfg.t_min, cfg.t_max, io);
  } catch (const numerics::IntegrationError& e) {
    throw EvolutionError(scheme, e.time(), e.what());
  }

  EvolutionTrace tr;
  tr.scheme = scheme;
  tr.times = std::move(res.times);
  tr.states = std::move(res.states);
  tr.final_state = res.final_state;
  tr.error_estimate = res.error_estimate;
  tr.steps = res.accepted_steps;
  tr.populations.reserve(tr.states.size());
  for (const auto& s : tr.states) {
    tr.populations.push_back(s.cwiseAbs2());
    tr.norm_drift = std::max(tr.norm_drift, std::abs(s.norm() - 1.0));
  }
  tr.norm_drift = std::max(tr.norm_drift, std::abs(tr.final_state.norm() - 1.0));
  tr.fidelity = fidelity(tr.final_state, gate, psi0);
  return tr;
}

std::vector<LevelSummary> population_summary(const EvolutionTrace& trace) {
  std::vector<LevelSummary> out(trace.levels());
  for (const auto& p : trace.populations) {
    for (int i = 0; i < trace.levels(); ++i) out[i].max_population = std::max(out[i].max_population, p(i));
  }
  for (int i = 0; i < trace.levels(); ++i) out[i].final_population = std::norm(trace.final_state(i));
  return out;
}

}  // namespace sqrsim::evolve
