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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "sqrsim/numerics.hpp"

using namespace sqrsim;
using numerics::HermitianOperator;

namespace {

const Complex I(0.0, 1.0);

Matrix random_hermitian(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("HermitianOperator accepts Hermitian input and stores the Hermitian part") {
  Matrix m(2, 2);
  m << 1.0, Complex(2.0, 1.0), Complex(2.0, -1.0), -3.0;
  const HermitianOperator h(m);
  CHECK(h.dim() == 2);
  CHECK(h(0, 1) == Complex(2.0, 1.0));
  CHECK(h.hermiticity_residual() == 0.0);
  CHECK(h.max_abs() == doctest::Approx(3.0));
}

TEST_CASE("HermitianOperator rejects a non-Hermitian matrix and names the entry") {
  Matrix m = Matrix::Zero(3, 3);
  m(2, 1) = 1.0;
  try {
    HermitianOperator h(m);
    FAIL("expected NonHermitianError");
  } catch (const numerics::NonHermitianError& e) {
    CHECK(e.row() == 1);
    CHECK(e.col() == 2);
    CHECK(e.deviation() == doctest::Approx(1.0));
  }
}

TEST_CASE("HermitianOperator rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), numerics::NumericsError);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianOperator{m}, numerics::NumericsError);
  CHECK_THROWS_AS(HermitianOperator::zero(kMaxDim + 1), numerics::NumericsError);
}

TEST_CASE("HermitianOperator arithmetic") {
  std::mt19937_64 rng(1);
  const HermitianOperator a(random_hermitian(rng, 3));
  const HermitianOperator b(random_hermitian(rng, 3));
  CHECK(((a + b).matrix() - (a.matrix() + b.matrix())).norm() == 0.0);
  CHECK(((a - b).matrix() - (a.matrix() - b.matrix())).norm() == 0.0);
  CHECK(((a * 2.5).matrix() - a.matrix() * 2.5).norm() == 0.0);
  CHECK(HermitianOperator::zero(4).max_abs() == 0.0);
}

TEST_CASE("eigh: textbook spectra") {
  SUBCASE("identity") {
    const auto e = numerics::eigh(HermitianOperator(Matrix::Identity(2, 2)));
    CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  }
  SUBCASE("diagonal") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = -1.0;
    const auto e = numerics::eigh(HermitianOperator(m));
    CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(3.0));
    CHECK(std::abs(e.eigenvectors(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.eigenvectors(0, 1) - 1.0) < 1e-15);
  }
  SUBCASE("pauli x") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    const auto e = numerics::eigh(HermitianOperator(m));
    CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
    // Ties between equal-magnitude components go to the lowest index.
    CHECK(e.eigenvectors(0, 0).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(e.eigenvectors(0, 1).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(e.eigenvectors(1, 0).real() == doctest::Approx(-std::sqrt(0.5)));
  }
}

TEST_CASE("eigh: reconstruction, orthonormality and phase convention on random matrices") {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> dim(2, 5);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng);
    const HermitianOperator h(random_hermitian(rng, n, scale(rng)));
    const auto e = numerics::eigh(h);
    const double hnorm = h.matrix().norm();
    const Matrix& v = e.eigenvectors;
    const Matrix rec = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    worst = std::max(worst, (rec - h.matrix()).norm() / std::max(1.0, hnorm));
    REQUIRE((v.adjoint() * v - Matrix::Identity(n, n)).norm() < 1e-10);
    for (int k = 0; k < n; ++k) {
      const ComplexVector vk = e.vector(k);
      REQUIRE((h.matrix() * vk - e.eigenvalues(k) * vk).norm() <= 1e-10 * std::max(1.0, hnorm));
      if (k > 0) REQUIRE(e.eigenvalues(k - 1) <= e.eigenvalues(k));
      int pivot = 0;
      for (int i = 1; i < n; ++i) {
        if (std::abs(vk(i)) > std::abs(vk(pivot)) * (1.0 + 1e-10)) pivot = i;
      }
      REQUIRE(vk(pivot).imag() == 0.0);
      REQUIRE(vk(pivot).real() >= 0.0);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("eigh is deterministic") {
  std::mt19937_64 rng(7);
  const HermitianOperator h(random_hermitian(rng, 5));
  const auto a = numerics::eigh(h);
  const auto b = numerics::eigh(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("integrate: zero generator leaves the state unchanged") {
  ComplexVector psi = ComplexVector::Zero(3);
  psi(0) = 1.0;
  const auto r = numerics::integrate([](double) { return HermitianOperator::zero(3); }, psi, 0.0, 5.0);
  CHECK((r.final_state - psi).norm() == 0.0);
  CHECK(r.times.size() == 2000);
  CHECK(r.times.front() == 0.0);
  CHECK(r.times.back() == 5.0);
}

TEST_CASE("integrate: diagonal phase evolution") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  const HermitianOperator h(m);
  ComplexVector psi(2);
  psi << std::sqrt(0.5), std::sqrt(0.5);
  const double t = std::numbers::pi / 2;
  const auto r = numerics::integrate([&](double) { return h; }, psi, 0.0, t);
  CHECK(std::abs(r.final_state(0) - std::exp(-I * t) * std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(r.final_state(1) - std::exp(I * t) * std::sqrt(0.5)) < 1e-9);
}

TEST_CASE("integrate: resonant Rabi oscillation matches the closed form") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 0.5;
  const HermitianOperator h(m);
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  numerics::IntegratorOptions o;
  o.output_points = 101;
  const auto r = numerics::integrate([&](double) { return h; }, psi, 0.0, std::numbers::pi, o);
  CHECK(std::abs(r.final_state(0)) < 1e-8);
  CHECK(std::abs(r.final_state(1) - (-I)) < 1e-8);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const double t = r.times[k];
    REQUIRE(std::abs(r.states[k](0) - std::cos(0.5 * t)) < 1e-8);
    REQUIRE(std::abs(r.states[k](1) + I * std::sin(0.5 * t)) < 1e-8);
  }
}

TEST_CASE("integrate: detuned Rabi with a shifted start time") {
  const double omega = 1.3, det = 0.7, t0 = -2.0, t1 = 7.5;
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -0.5 * det;
  m(1, 1) = 0.5 * det;
  m(0, 1) = m(1, 0) = 0.5 * omega;
  const HermitianOperator h(m);
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  const auto r = numerics::integrate([&](double) { return h; }, psi, t0, t1);
  const double w = std::hypot(omega, det);
  const double p2 = omega * omega / (w * w) * std::pow(std::sin(0.5 * w * (t1 - t0)), 2);
  CHECK(std::norm(r.final_state(1)) == doctest::Approx(p2).epsilon(1e-8));
}

TEST_CASE("integrate: time-dependent phase matches the exact integral") {
  // H = f(t) sigma_z with f = cos t, so psi_1 = exp(-i sin t) psi_1(0).
  ComplexVector psi(2);
  psi << 0.6, 0.8;
  const auto gen = [](double t) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::cos(t);
    m(1, 1) = -std::cos(t);
    return HermitianOperator(m);
  };
  const auto r = numerics::integrate(gen, psi, 0.0, 4.0);
  CHECK(std::abs(r.final_state(0) - 0.6 * std::exp(-I * std::sin(4.0))) < 1e-9);
  CHECK(std::abs(r.final_state(1) - 0.8 * std::exp(I * std::sin(4.0))) < 1e-9);
}

TEST_CASE("integrate: norm conservation on random time-dependent generators") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial % 3;
    const HermitianOperator a(random_hermitian(rng, n, 2.0));
    const HermitianOperator b(random_hermitian(rng, n, 2.0));
    const auto gen = [&](double t) { return a + b * std::sin(3.0 * t); };
    ComplexVector psi = ComplexVector::Zero(n);
    psi(0) = 1.0;
    const auto r = numerics::integrate(gen, psi, 0.0, 10.0);
    double drift = 0.0;
    for (const auto& s : r.states) drift = std::max(drift, std::abs(s.norm() - 1.0));
    CHECK(drift <= 1e-6);
  }
}

TEST_CASE("integrate: halving the tolerances moves the Rabi result by less than the error estimate") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 0.5;
  const HermitianOperator h(m);
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  numerics::IntegratorOptions coarse;
  coarse.rtol = 1e-6;
  coarse.atol = 1e-9;
  numerics::IntegratorOptions fine = coarse;
  fine.rtol *= 0.5;
  fine.atol *= 0.5;
  const auto gen = [&](double) { return h; };
  const auto a = numerics::integrate(gen, psi, 0.0, 20.0, coarse);
  const auto b = numerics::integrate(gen, psi, 0.0, 20.0, fine);
  CHECK((a.final_state - b.final_state).norm() < a.error_estimate);
  CHECK(a.error_estimate > 0.0);
}

TEST_CASE("integrate: failures report the time") {
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  SUBCASE("non-finite generator") {
    const HermitianOperator base(Matrix::Identity(2, 2));
    const auto gen = [&](double t) {
      return t > 1.0 ? base * std::numeric_limits<double>::quiet_NaN() : base;
    };
    try {
      numerics::integrate(gen, psi, 0.0, 2.0);
      FAIL("expected IntegrationError");
    } catch (const numerics::IntegrationError& e) {
      CHECK(e.time() > 1.0);
    }
  }
  SUBCASE("step budget exhausted") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1e4;
    const HermitianOperator h(m);
    numerics::IntegratorOptions o;
    o.max_steps = 10;
    CHECK_THROWS_AS(numerics::integrate([&](double) { return h; }, psi, 0.0, 1.0, o), numerics::IntegrationError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS(numerics::integrate([](double) { return HermitianOperator::zero(3); }, psi, 0.0, 1.0));
  }
  SUBCASE("bad interval") {
    CHECK_THROWS(numerics::integrate([](double) { return HermitianOperator::zero(2); }, psi, 1.0, 0.0));
  }
}

TEST_CASE("integrate is deterministic") {
  std::mt19937_64 rng(5);
  const HermitianOperator a(random_hermitian(rng, 4));
  const HermitianOperator b(random_hermitian(rng, 4));
  const auto gen = [&](double t) { return a + b * std::cos(t); };
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0;
  const auto r1 = numerics::integrate(gen, psi, 0.0, 3.0);
  const auto r2 = numerics::integrate(gen, psi, 0.0, 3.0);
  CHECK(r1.final_state == r2.final_state);
  CHECK(r1.accepted_steps == r2.accepted_steps);
}
