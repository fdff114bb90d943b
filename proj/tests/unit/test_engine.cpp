// Copyright 2026 The lindlearn Authors
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

#include <random>

#include <gtest/gtest.h>

#include "lindlearn/engine.hpp"
#include "oracles.hpp"

namespace lindlearn {
namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(n, rng);
  return 0.5 * (a + a.adjoint());
}

std::vector<Dissipator> random_dissipators(int n, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  std::vector<Dissipator> out;
  for (int k = 0; k < count; ++k) out.push_back({random_matrix(n, rng), rate(rng)});
  return out;
}

std::vector<oracle::Channel> to_channels(const std::vector<Dissipator>& d) {
  std::vector<oracle::Channel> out;
  for (const auto& x : d) out.push_back({x.op, x.rate});
  return out;
}

TEST(Vectorize, ColumnStackingIdentity) {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = random_matrix(3, rng), x = random_matrix(3, rng), b = random_matrix(3, rng);
  const ComplexVector lhs = vectorize(ComplexMatrix(a * x * b));
  const ComplexVector rhs = kron(b.transpose(), a) * vectorize(x);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(approx_equal(unvectorize(vectorize(x)), x, 0.0));
}

TEST(Liouvillian, MatchesColumnwiseOracle) {
  std::mt19937_64 rng(2);
  for (int d : {2, 4}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const auto diss = random_dissipators(d, 3, rng);
    const Superoperator lv = build_liouvillian(d, h, diss);
    const ComplexMatrix ref = oracle::liouvillian_by_columns(h, to_channels(diss));
    EXPECT_LT((lv.matrix - ref).cwiseAbs().maxCoeff(), 1e-12) << "d=" << d;
  }
}

TEST(Liouvillian, RhsAgreesWithSuperoperator) {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = random_hermitian(4, rng);
  const auto diss = random_dissipators(4, 2, rng);
  const ComplexMatrix rho = random_matrix(4, rng);
  const ComplexVector via_lv = build_liouvillian(4, h, diss).matrix * vectorize(rho);
  EXPECT_LT((via_lv - vectorize(lindblad_rhs(h, diss, rho))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Liouvillian, RejectsBadInput) {
  const ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  std::vector<Dissipator> neg = {{ComplexMatrix::Identity(2, 2), -1.0}};
  EXPECT_THROW(build_liouvillian(2, h, neg), std::invalid_argument);
  std::vector<Dissipator> wrong = {{ComplexMatrix::Identity(3, 3), 1.0}};
  EXPECT_THROW(build_liouvillian(2, h, wrong), std::invalid_argument);
}

TEST(MatrixExp, MatchesTaylorOracle) {
  std::mt19937_64 rng(4);
  for (double scale : {0.01, 0.5, 3.0}) {
    const ComplexMatrix m = random_matrix(16, rng, scale);
    const ComplexMatrix ref = oracle::taylor_exp(m);
    const double err = (matrix_exp(m) - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
    EXPECT_LT(err, 1e-10) << "scale " << scale;
  }
}

TEST(MatrixExp, ZeroIsIdentityAndNonFiniteRejected) {
  EXPECT_TRUE(approx_equal(matrix_exp(ComplexMatrix::Zero(4, 4)), ComplexMatrix::Identity(4, 4), 0.0));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(matrix_exp(bad), std::invalid_argument);
}

TEST(Propagate, SpontaneousDecay) {
  // sigma_- = |g><e| with e = 0, g = 1.
  std::vector<Dissipator> d = {{oracle::unit(2, 1, 0), 0.7}};
  const Superoperator lv = build_liouvillian(2, ComplexMatrix::Zero(2, 2), d);
  for (double t : {0.0, 0.3, 2.0, 10.0}) {
    const DensityMatrix rho = propagate(lv, DensityMatrix::projector(2, 0), t);
    EXPECT_NEAR(rho(0, 0).real(), std::exp(-0.7 * t), 1e-12);
  }
  EXPECT_THROW(propagate(lv, DensityMatrix::projector(2, 0), -1.0), std::invalid_argument);
}

TEST(Propagate, MatchesRk4) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_hermitian(4, rng);
  const auto diss = random_dissipators(4, 3, rng);
  const Superoperator lv = build_liouvillian(4, h, diss);
  const DensityMatrix rho0 = DensityMatrix::projector(4, 3);
  const ComplexMatrix ref = oracle::rk4(h, to_channels(diss), rho0.matrix(), 1.5, 1e-3);
  EXPECT_LT((propagate(lv, rho0, 1.5).matrix() - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Propagate, GridPropagatorMatchesDirect) {
  std::mt19937_64 rng(6);
  const ComplexMatrix h = random_hermitian(2, rng);
  const auto diss = random_dissipators(2, 2, rng);
  const Superoperator lv = build_liouvillian(2, h, diss);
  const GridPropagator grid(lv, 0.05);
  ComplexVector v = vectorize(DensityMatrix::projector(2, 0));
  for (int k = 0; k < 40; ++k) grid.advance(v);
  const DensityMatrix direct = propagate(lv, DensityMatrix::projector(2, 0), 2.0);
  EXPECT_LT((unvectorize(v) - direct.matrix()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SteadyState, ResonanceFluorescencePopulation) {
  // H = omega sigma_x, decay gamma: rho_ee = s / (2 (1 + s)), s = 2 (2 omega)^2 / gamma^2.
  const double omega = 0.5, gamma = 1.0;
  ComplexMatrix h = omega * (oracle::unit(2, 0, 1) + oracle::unit(2, 1, 0));
  std::vector<Dissipator> d = {{oracle::unit(2, 1, 0), gamma}};
  const SteadyState ss = steady_state(build_liouvillian(2, h, d));
  const double s = 2.0 * (2.0 * omega) * (2.0 * omega) / (gamma * gamma);
  EXPECT_FALSE(ss.degenerate());
  EXPECT_NEAR(ss.rho(0, 0).real(), s / (2.0 * (1.0 + s)), 1e-10);
}

TEST(SteadyState, MatchesLuOracleOnRandomModels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix h = random_hermitian(4, rng);
    const auto diss = random_dissipators(4, 3, rng);
    const SteadyState ss = steady_state(build_liouvillian(4, h, diss));
    const ComplexMatrix ref = oracle::steady_state(h, to_channels(diss));
    EXPECT_LT((ss.rho.matrix() - ref).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SteadyState, DegenerateNullSpaceReported) {
  const SteadyState ss = steady_state(build_liouvillian(2, ComplexMatrix::Zero(2, 2), {}));
  EXPECT_TRUE(ss.degenerate());
  EXPECT_EQ(ss.null_dimension, 4);
  EXPECT_TRUE(approx_equal(ss.rho.matrix(), 0.5 * ComplexMatrix::Identity(2, 2), 1e-10));
}

TEST(DensityMatrix, Validation) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);  // trace 0.5
  m(1, 1) = 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);  // not Hermitian
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix{0.5 * ComplexMatrix::Identity(2, 2)});
}

}  // namespace
}  // namespace lindlearn
