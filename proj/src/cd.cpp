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

#include "sqrsim/cd.hpp"

#include <cmath>
#include <sstream>

namespace sqrsim::cd {

using numerics::EigenDecomposition;
using numerics::HermitianOperator;

namespace {

std::string residual_message(int row, int col, Complex value, double tolerance) {
  std::ostringstream os;
  os.precision(6);
  os << "counterdiabatic term does not fit the ground-coupling ansatz: entry (" << row + 1 << "," << col + 1
     << ") = " << value << " exceeds tolerance " << tolerance;
  return os.str();
}

}  // namespace

StructuralResidualError::StructuralResidualError(int row, int col, Complex value, double tolerance)
    : CdError(residual_message(row, col, value, tolerance)), row_(row), col_(col), value_(value) {}

void CdOptions::validate() const {
  if (!(eps_deg > 0.0)) throw CdError("eps_deg must be positive");
  if (derivative == Derivative::central_difference && !(fd_step > 0.0)) {
    throw CdError("central-difference step must be positive");
  }
  if (!(residual_tol > 0.0)) throw CdError("residual_tol must be positive");
  if (excited_tol && !(*excited_tol > 0.0)) throw CdError("excited_tol must be positive");
}

HermitianOperator cd_from_spectrum(const EigenDecomposition& spectrum, const HermitianOperator& dh,
                                   const CdOptions& opts, CdReport* report) {
  const int n = spectrum.dim();
  if (dh.dim() != n) throw CdError("derivative and spectrum dimensions differ");
  if (!dh.all_finite()) throw CdError("non-finite entry in dH/dt");

  const auto& e = spectrum.eigenvalues;
  const double range = e(n - 1) - e(0);
  const double threshold = opts.eps_deg * std::max(1.0, range);

  const Matrix& v = spectrum.eigenvectors;
  const Matrix in_eigenbasis = v.adjoint() * dh.matrix() * v;
  Matrix c = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (m == k) continue;
      const double gap = e(k) - e(m);
      if (std::abs(gap) <= threshold) {
        if (report && m < k) ++report->skipped_pairs;
        continue;
      }
      if (report && m < k && std::abs(gap) <= 10.0 * threshold) report->near_degenerate_gaps.push_back(std::abs(gap));
      c(m, k) = in_eigenbasis(m, k) / gap;
    }
  }
  // c is anti-Hermitian up to rounding, so i V c V^dagger is Hermitian up to
  // rounding too; that rounding can exceed a relative tolerance when the
  // result is small through cancellation, hence the explicit projection.
  const Matrix h = Complex(0.0, 1.0) * (v * c * v.adjoint());
  return HermitianOperator((h + h.adjoint()) * 0.5);
}

HermitianOperator cd_generator(const OperatorFunction& h, const OperatorFunction& dh, double t, const CdOptions& opts,
                               CdReport* report) {
  opts.validate();
  const HermitianOperator ht = h(t);
  HermitianOperator dht = HermitianOperator::zero(ht.dim());
  if (opts.derivative == Derivative::analytic) {
    dht = dh(t);
  } else {
    const double s = opts.fd_step;
    dht = (h(t + s) - h(t - s)) * (0.5 / s);
  }
  return cd_from_spectrum(numerics::eigh(ht), dht, opts, report);
}

HermitianOperator sqr_cd(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const CdOptions& opts,
                         CdReport* report) {
  return cd_generator([&](double s) { return sqr::h_sqr(s, cfg, gate); },
                      [&](double s) { return sqr::dh_sqr(s, cfg, gate); }, t, opts, report);
}

CdCouplings sqr_cd_couplings(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const CdOptions& opts) {
  const HermitianOperator c = sqr_cd(t, cfg, gate, opts);
  const double ground_tol = opts.residual_tol * cfg.omega0;
  const double excited_tol =
      opts.excited_tol.value_or(1.0 / (std::abs(cfg.delta_cap) * cfg.sigma)) * cfg.omega0;

  for (int i = 0; i < 4; ++i) {
    if (std::abs(c(3, i)) > excited_tol) throw StructuralResidualError(3, i, c(3, i), excited_tol);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (std::abs(c(i, j).real()) > ground_tol) throw StructuralResidualError(i, j, c(i, j), ground_tol);
    }
  }
  return {c(1, 0).imag(), c(2, 0).imag(), c(2, 1).imag()};
}

HermitianOperator reconstruct(const CdCouplings& w) {
  Matrix m = Matrix::Zero(4, 4);
  const Complex i(0.0, 1.0);
  m(1, 0) = i * w.omega1;
  m(2, 0) = i * w.omega2;
  m(2, 1) = i * w.omega3;
  m(0, 1) = std::conj(m(1, 0));
  m(0, 2) = std::conj(m(2, 0));
  m(1, 2) = std::conj(m(2, 1));
  return HermitianOperator(m);
}

HermitianOperator h_sc1(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const CdOptions& opts) {
  return sqr::h_sqr(t, cfg, gate) + sqr_cd(t, cfg, gate, opts);
}

}  // namespace sqrsim::cd
