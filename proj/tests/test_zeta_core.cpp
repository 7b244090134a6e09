// Copyright 2026 The jacobs-ladder Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "jacobs_ladder/zeta_core.hpp"
#include "reference_values.hpp"

namespace {

using namespace jl;

TEST(Theta, VanishesAtFirstGramPoint) {
  EXPECT_NEAR(theta(ref::kGramPoint0), 0.0, 1e-12);
  EXPECT_NEAR(oracle_theta(ref::kGramPoint0, OraclePrecision{30}), 0.0, 1e-15);
}

TEST(Theta, At100MatchesOracleAndSeries) {
  EXPECT_NEAR(oracle_theta(100.0, OraclePrecision{30}), ref::kTheta100, 1e-13);
  EXPECT_NEAR(theta_series(100.0), ref::kTheta100, 1e-9);
  EXPECT_NEAR(theta(100.0), ref::kTheta100, 1e-9);
}

TEST(Theta, LargeOrdinates) {
  EXPECT_NEAR(theta(1e4), ref::kTheta1e4, 1e-9);
  EXPECT_NEAR(theta(1e6), ref::kTheta1e6, 1e-8);
}

TEST(Theta, DerivativeMatchesLeadingTerm) {
  const double t = 1e4;
  const double d = 1e-4;
  const double slope = 0.5 * d * std::log(t / kTwoPi);
  EXPECT_LT(std::fabs((theta(t + d) - theta(t)) / slope - 1.0), 1e-3);
}

TEST(Theta, SeriesRemainderBoundHonoured) {
  for (double t : {50.0, 100.0, 1e3, 1e5}) {
    const double exact = oracle_theta(t, OraclePrecision{25});
    EXPECT_LE(std::fabs(theta_series(t) - exact), theta_series_remainder_bound(t) + 1e-15 * std::fabs(exact)) << t;
  }
}

TEST(Theta, Errors) {
  EXPECT_THROW(theta(-1.0), DomainError);
  EXPECT_THROW(theta_series(2.0, 1e-12), PrecisionLossError);
}

TEST(Theta, MonotoneAboveSeven) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(7.0, 1e6);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    EXPECT_LT(theta(a), theta(b)) << a << " " << b;
  }
  EXPECT_LT(theta(7.5), theta(8.0));
}

TEST(HardyZ, AtZeroIsZetaHalf) {
  EXPECT_NEAR(hardy_z(0.0), ref::kZetaHalf, 1e-14);
  EXPECT_NEAR(zeta_sq(0.0), ref::kZetaHalfSq, 1e-13);
}

TEST(HardyZ, FirstZero) {
  EXPECT_LT(std::fabs(hardy_z(14.1347251417)), 1e-8);
  EXPECT_LT(zeta_sq(ref::kFirstZero), 1e-15);
}

TEST(HardyZ, MatchesReferenceValues) {
  for (const auto& s : ref::kZ) {
    const double tol = s.t >= 1e4 ? 1e-8 : 1e-6;
    EXPECT_NEAR(hardy_z(s.t), s.z, tol) << "t = " << s.t;
  }
}

TEST(HardyZ, RiemannSiegelAgainstOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(100.0, 1e6);
  for (int i = 0; i < 40; ++i) {
    const double t = u(rng);
    const OracleValue v = oracle_evaluate(t, OraclePrecision{15});
    EXPECT_LT(std::fabs(hardy_z(t) - v.rotated.real()), 1e-6) << t;
    EXPECT_LT(std::fabs(v.rotated.imag()), 1e-10) << t;
  }
}

TEST(HardyZ, NegativeOrdinateRejected) {
  EXPECT_THROW(hardy_z(-0.5), DomainError);
  EXPECT_THROW(zeta_sq(-0.5), DomainError);
}

TEST(ZetaSq, IsSquareOfZAndNonNegative) {
  for (double t : {0.0, 3.0, 14.0, 49.9, 50.0, 1234.5, 98765.4321}) {
    const double z = hardy_z(t);
    EXPECT_EQ(zeta_sq(t), z * z);
    EXPECT_GE(zeta_sq(t), 0.0);
  }
}

TEST(ZetaSq, BitwiseDeterministic) {
  const double a = zeta_sq(123456.789);
  const double b = zeta_sq(123456.789);
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

TEST(CriticalPoint, Fields) {
  const CriticalPoint p = critical_point(1000.0);
  EXPECT_EQ(p.t, 1000.0);
  EXPECT_EQ(p.z, hardy_z(1000.0));
  EXPECT_EQ(p.theta, theta(1000.0));
  EXPECT_NEAR(p.z * p.z, zeta_sq(1000.0), 1e-15);
}

TEST(Oracle, ZetaHalfTwentyDigits) {
  const OracleValue v = oracle_evaluate(0.0, OraclePrecision{20});
  EXPECT_EQ(v.zeta_real_text.substr(0, 22), "-1.4603545088095868129");
  EXPECT_EQ(v.zeta.imag(), 0.0);
  EXPECT_NEAR(v.zeta.real(), ref::kZetaHalf, 1e-15);
}

TEST(Oracle, AtOne) {
  const std::complex<double> z = oracle_zeta_half(1.0, OraclePrecision{15});
  EXPECT_NEAR(z.real(), ref::kZetaHalfPlusIRe, 1e-14);
  EXPECT_NEAR(z.imag(), ref::kZetaHalfPlusIIm, 1e-14);
}

TEST(Oracle, ConsistentWithFastPathAt1e5) {
  const std::complex<double> z = oracle_zeta_half(1e5, OraclePrecision{20});
  EXPECT_NEAR(std::norm(z), zeta_sq(1e5), 1e-8);
}

TEST(Oracle, Deterministic) {
  const OracleValue a = oracle_evaluate(777.0, OraclePrecision{18});
  const OracleValue b = oracle_evaluate(777.0, OraclePrecision{18});
  EXPECT_EQ(a.zeta_real_text, b.zeta_real_text);
  EXPECT_EQ(a.zeta_imag_text, b.zeta_imag_text);
}

TEST(OraclePrecision, Bounds) {
  EXPECT_THROW((OraclePrecision{14}.validate()), std::invalid_argument);
  EXPECT_THROW((OraclePrecision{51}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((OraclePrecision{15}.validate()));
  EXPECT_THROW(oracle_evaluate(-1.0), DomainError);
}

}  // namespace
