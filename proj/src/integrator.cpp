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

// Dormand-Prince 5(4) with the continuous extension from Hairer, Norsett and
// Wanner, "Solving Ordinary Differential Equations I", routine DOPRI5.

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqrsim/numerics.hpp"

namespace sqrsim::numerics {

namespace {

constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;  // PI stabilization
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr double kUround = std::numeric_limits<double>::epsilon();

class Rhs {
 public:
  Rhs(const Generator& gen, int dim) : gen_(gen), dim_(dim) {}

  void operator()(double t, const ComplexVector& y, ComplexVector& dy) const {
    const HermitianOperator h = gen_(t);
    if (h.dim() != dim_) throw IntegrationError("generator returned a matrix of the wrong dimension", t);
    if (!h.all_finite()) throw IntegrationError("non-finite generator output", t);
    dy.noalias() = Complex(0.0, -1.0) * (h.matrix() * y);
  }

 private:
  const Generator& gen_;
  int dim_;
};

double error_norm(const ComplexVector& err, const ComplexVector& y0, const ComplexVector& y1, double rtol, double atol) {
  double acc = 0.0;
  for (int i = 0; i < err.size(); ++i) {
    const double sk = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double r = std::abs(err(i)) / sk;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

double initial_step(const Rhs& f, double t, const ComplexVector& y, const ComplexVector& f0, double direction,
                    double hmax, double rtol, double atol) {
  const int n = static_cast<int>(y.size());
  double dnf = 0.0, dny = 0.0;
  for (int i = 0; i < n; ++i) {
    const double sk = atol + rtol * std::abs(y(i));
    dnf += std::norm(f0(i)) / (sk * sk);
    dny += std::norm(y(i)) / (sk * sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  h = std::min(h, hmax);

  ComplexVector y1 = y + direction * h * f0;
  ComplexVector f1(n);
  f(t + direction * h, y1, f1);
  double der2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double sk = atol + rtol * std::abs(y(i));
    der2 += std::norm(f1(i) - f0(i)) / (sk * sk);
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 5.0);
  return std::min({100.0 * h, h1, hmax});
}

}  // namespace

IntegrationResult integrate(const Generator& generator, const ComplexVector& psi0, double t_start, double t_end,
                            const IntegratorOptions& options) {
  if (!(t_start < t_end)) throw IntegrationError("integrate requires t_start < t_end", t_start);
  if (options.output_points < 2) throw IntegrationError("integrate requires at least 2 output points", t_start);
  if (!(options.rtol > 0.0) || !(options.atol > 0.0)) throw IntegrationError("tolerances must be positive", t_start);
  if (psi0.size() < 1 || psi0.size() > kMaxDim) throw IntegrationError("state dimension out of range", t_start);

  const int n = static_cast<int>(psi0.size());
  const Rhs f(generator, n);
  const double span = t_end - t_start;
  const double hmax = options.max_step > 0.0 ? std::min(options.max_step, span) : span / 100.0;

  IntegrationResult res;
  const int npts = options.output_points;
  res.times.reserve(npts);
  res.states.reserve(npts);
  auto grid = [&](int k) { return k == npts - 1 ? t_end : t_start + span * static_cast<double>(k) / (npts - 1); };

  ComplexVector y = psi0;
  ComplexVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ystage(n), y1(n), err(n);
  ComplexVector r1(n), r2(n), r3(n), r4(n), r5(n);

  double t = t_start;
  res.times.push_back(t_start);
  res.states.push_back(y);
  int next_out = 1;

  f(t, y, k1);
  double h = options.initial_step > 0.0 ? std::min(options.initial_step, hmax)
                                        : initial_step(f, t, y, k1, 1.0, hmax, options.rtol, options.atol);
  double facold = 1e-4;
  bool last_rejected = false;

  while (t < t_end) {
    if (res.accepted_steps + res.rejected_steps >= options.max_steps) {
      throw IntegrationError("maximum number of steps exceeded", t);
    }
    if (0.1 * h <= std::abs(t) * kUround || h <= std::numeric_limits<double>::min()) {
      throw IntegrationError("step size underflow", t);
    }
    bool final_step = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    ystage = y + h * (a21 * k1);
    f(t + c2 * h, ystage, k2);
    ystage = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ystage, k3);
    ystage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ystage, k4);
    ystage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ystage, k5);
    ystage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    const double tph = final_step ? t_end : t + h;
    f(tph, ystage, k6);
    y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(tph, y1, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double e = error_norm(err, y, y1, options.rtol, options.atol);
    if (!std::isfinite(e)) throw IntegrationError("non-finite error estimate", t);
    const double fac11 = std::pow(e, 0.2 - kBeta * 0.75);

    if (e <= 1.0) {
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
      double hnew = std::min(h / fac, hmax);
      if (last_rejected) hnew = std::min(hnew, h);
      facold = std::max(e, 1e-4);

      res.error_estimate += err.norm();
      ++res.accepted_steps;
      last_rejected = false;

      if (next_out < npts && grid(next_out) <= tph) {
        r1 = y;
        r2 = y1 - y;
        r3 = h * k1 - r2;
        r4 = r2 - h * k7 - r3;
        r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        while (next_out < npts && grid(next_out) <= tph) {
          const double tk = grid(next_out);
          res.times.push_back(tk);
          if (next_out == npts - 1 && final_step) {
            res.states.push_back(y1);
          } else {
            const double th = (tk - t) / h;
            const double th1 = 1.0 - th;
            res.states.push_back(r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5))));
          }
          ++next_out;
        }
      }

      y = y1;
      k1 = k7;
      t = tph;
      h = hnew;
    } else {
      h /= std::min(1.0 / kFacMin, fac11 / kSafety);
      ++res.rejected_steps;
      last_rejected = true;
    }
  }

  res.final_state = y;
  return res;
}

}  // namespace sqrsim::numerics
