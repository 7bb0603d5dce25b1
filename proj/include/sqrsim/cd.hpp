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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqrsim/numerics.hpp"
#include "sqrsim/sqr.hpp"

/// Counterdiabatic (transitionless) driving.
namespace sqrsim::cd {

class CdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The generator at some t does not have the ground-only, purely imaginary
/// shape assumed by the three-coupling ansatz.
class StructuralResidualError : public CdError {
 public:
  StructuralResidualError(int row, int col, Complex value, double tolerance);
  int row() const { return row_; }
  int col() const { return col_; }
  Complex value() const { return value_; }

 private:
  int row_;
  int col_;
  Complex value_;
};

enum class Derivative { analytic, central_difference };

struct CdOptions {
  /// Pairs with |E_n - E_m| <= eps_deg * max(1, spectral range) are treated
  /// as degenerate and skipped.
  double eps_deg = 1e-8;
  Derivative derivative = Derivative::analytic;
  /// Central-difference step; only read when derivative == central_difference.
  double fd_step = 2e-5;
  /// Tolerance on real parts inside the ground block, in units of omega0.
  double residual_tol = 1e-6;
  /// Tolerance on the excited row/column, in units of omega0. Unset means
  /// omega0 / (delta_cap * sigma): the exact generator couples bright and
  /// excited states at the rate of the Raman mixing angle, which is of that
  /// order.
  std::optional<double> excited_tol;

  void validate() const;
};

/// Diagnostics collected while building a generator.
struct CdReport {
  /// Kept gaps that fell inside (threshold, 10 * threshold].
  std::vector<double> near_degenerate_gaps;
  int skipped_pairs = 0;
};

/// Real ground-state couplings of H_cd = i(w1|2><1| + w2|3><1| + w3|3><2|) + h.c.
struct CdCouplings {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;
};

using OperatorFunction = std::function<numerics::HermitianOperator(double)>;

/// i sum_{m != n} |m><m| dH |n><n| / (E_n - E_m) over nondegenerate pairs,
/// given the spectrum of H at one instant.
numerics::HermitianOperator cd_from_spectrum(const numerics::EigenDecomposition& spectrum,
                                             const numerics::HermitianOperator& dh, const CdOptions& opts,
                                             CdReport* report = nullptr);

/// Counterdiabatic generator of H at time t. `dh` is only called for the
/// analytic derivative mode.
numerics::HermitianOperator cd_generator(const OperatorFunction& h, const OperatorFunction& dh, double t,
                                         const CdOptions& opts, CdReport* report = nullptr);

/// cd_generator applied to h_sqr / dh_sqr.
numerics::HermitianOperator sqr_cd(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                   const CdOptions& opts, CdReport* report = nullptr);

/// Extracts (w1, w2, w3) from sqr_cd after checking it fits the ansatz.
CdCouplings sqr_cd_couplings(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate, const CdOptions& opts);

/// The 4x4 operator the ansatz assigns to a set of couplings.
numerics::HermitianOperator reconstruct(const CdCouplings& w);

/// H_SC1 = H_SQR + H_cd.
numerics::HermitianOperator h_sc1(double t, const sqr::PulseConfig& cfg, const sqr::GateSpec& gate,
                                  const CdOptions& opts);

}  // namespace sqrsim::cd
