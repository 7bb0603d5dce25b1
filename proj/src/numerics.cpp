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

#include "sqrsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqrsim::numerics {

namespace {

constexpr double kHermitianTol = 1e-12;

std::string non_hermitian_message(int row, int col, double deviation, double tolerance) {
  std::ostringstream os;
  os.precision(6);
  os << "matrix is not Hermitian: entry (" << row << "," << col << ") differs from conj of (" << col << "," << row
     << ") by " << deviation << " (tolerance " << tolerance << ")";
  return os.str();
}

std::string with_time(const std::string& what, double time) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t = " << time;
  return os.str();
}

}  // namespace

NonHermitianError::NonHermitianError(int row, int col, double deviation, double tolerance)
    : NumericsError(non_hermitian_message(row, col, deviation, tolerance)),
      row_(row),
      col_(col),
      deviation_(deviation) {}

IntegrationError::IntegrationError(const std::string& what, double time)
    : NumericsError(with_time(what, time)), time_(time) {}

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim) {
    throw NumericsError("HermitianOperator needs a square matrix of dimension 1.." + std::to_string(kMaxDim));
  }
  if (!m.allFinite()) {
    throw NumericsError("HermitianOperator: non-finite entry");
  }
  const double tol = kHermitianTol * m.cwiseAbs().maxCoeff();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
      if (dev > tol) throw NonHermitianError(i, j, dev, tol);
    }
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::zero(int dim) {
  if (dim < 1 || dim > kMaxDim) throw NumericsError("HermitianOperator::zero: bad dimension");
  return HermitianOperator(Matrix::Zero(dim, dim), Trusted{});
}

double HermitianOperator::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

double HermitianOperator::hermiticity_residual() const {
  return m_.size() == 0 ? 0.0 : (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw NumericsError("HermitianOperator: dimension mismatch in +");
  return HermitianOperator(m_ + other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw NumericsError("HermitianOperator: dimension mismatch in -");
  return HermitianOperator(m_ - other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(m_ * s, Trusted{}); }

EigenDecomposition eigh(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericsError("eigh: eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};

  for (int k = 0; k < out.dim(); ++k) {
    auto v = out.eigenvectors.col(k);
    int pivot = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
      // Near-ties resolve to the lowest index so that rounding noise in the
      // magnitudes does not move the pivot around.
      const double a = std::abs(v(i));
      if (a > best * (1.0 + 1e-10)) {
        best = a;
        pivot = i;
      }
    }
    if (best > 0.0) {
      const Complex phase = std::conj(v(pivot)) / best;
      v *= phase;
      v(pivot) = Complex(best, 0.0);
    }
  }
  return out;
}

}  // namespace sqrsim::numerics
