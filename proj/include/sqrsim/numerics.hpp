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

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sqrsim {

using Complex = std::complex<double>;

/// Largest system the dense routines accept. Storage is inline up to this size,
/// so matrices and state vectors never touch the heap inside the integrator loop.
inline constexpr int kMaxDim = 8;

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

namespace numerics {

class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a matrix handed to HermitianOperator is not Hermitian.
class NonHermitianError : public NumericsError {
 public:
  NonHermitianError(int row, int col, double deviation, double tolerance);
  int row() const { return row_; }
  int col() const { return col_; }
  double deviation() const { return deviation_; }

 private:
  int row_;
  int col_;
  double deviation_;
};

/// Raised by integrate(); time() is where the integration gave up.
class IntegrationError : public NumericsError {
 public:
  IntegrationError(const std::string& what, double time);
  double time() const { return time_; }

 private:
  double time_;
};

/// Dense Hermitian matrix of dimension 1..kMaxDim.
///
/// Construction checks H(i,j) == conj(H(j,i)) to within 1e-12 of the largest
/// entry and then stores the exactly Hermitian part (H + H^dagger) / 2.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m);

  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// Largest absolute entry.
  double max_abs() const;
  /// Max |H(i,j) - conj(H(j,i))|; zero unless the storage was tampered with.
  double hermiticity_residual() const;
  bool all_finite() const { return m_.allFinite(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;

 private:
  struct Trusted {};
  HermitianOperator(const Matrix& m, Trusted) : m_(m) {}

  Matrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column k belongs to eigenvalues[k]

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  ComplexVector vector(int k) const { return eigenvectors.col(k); }
};

/// Hermitian eigendecomposition with a deterministic phase convention: the
/// largest-magnitude component of every eigenvector (lowest index on ties) is
/// real and nonnegative.
EigenDecomposition eigh(const HermitianOperator& h);

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  /// Uniform output grid including both endpoints; must be >= 2.
  int output_points = 2000;
  /// 0 selects an automatic first step.
  double initial_step = 0.0;
  /// 0 means (t_end - t_start) / 100. Pulsed generators need this bounded
  /// below the pulse width or the controller can step over a pulse entirely.
  double max_step = 0.0;
  long max_steps = 500'000'000;
};

struct IntegrationResult {
  ComplexVector final_state;
  std::vector<double> times;
  std::vector<ComplexVector> states;
  /// Sum of the accepted local error estimates (2-norm); a rough bound on the
  /// global error of final_state.
  double error_estimate = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

using Generator = std::function<HermitianOperator(double)>;

/// Solves i dpsi/dt = H(t) psi (hbar = 1) on [t_start, t_end] with an adaptive
/// Dormand-Prince 5(4) pair. The state is never renormalized.
IntegrationResult integrate(const Generator& generator, const ComplexVector& psi0, double t_start, double t_end,
                            const IntegratorOptions& options = {});

}  // namespace numerics
}  // namespace sqrsim
