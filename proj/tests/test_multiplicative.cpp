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
#include <json.hpp>

#include <cmath>
#include <limits>

#include "jacobs_ladder/multiplicative.hpp"
#include "test_support.hpp"

namespace {

using namespace jl;

double default_u(double T) {
  const double L = std::log(T);
  return T / (L * L);
}

VerificationRequest request(double T, int n, Formula f) {
  VerificationRequest r;
  r.T = T;
  r.U = default_u(T);
  r.n = n;
  r.formula = f;
  return r;
}

class MultiplicativeTest : public ::testing::Test {
 protected:
  CheckpointTable table = test::warm_table();
  Ladder ladder{Constants{}, table};
};

TEST(FormulaNames, ParseAndPrint) {
  for (Formula f : {Formula::exact_identity, Formula::theorem, Formula::telescope, Formula::shrink_bounds,
                    Formula::hl_law}) {
    EXPECT_EQ(parse_formula(formula_name(f)), f);
  }
  EXPECT_EQ(parse_formula("exact-identity"), Formula::exact_identity);
  EXPECT_EQ(parse_formula("hl-law"), Formula::hl_law);
  EXPECT_FALSE(parse_formula("nonsense").has_value());
}

TEST(Request, Validation) {
  const Constants k;
  VerificationRequest r = request(1e4, 1, Formula::theorem);
  EXPECT_NO_THROW(r.validate(k));
  r.T = 500.0;
  EXPECT_THROW(r.validate(k), std::invalid_argument);
  r = request(1e4, -1, Formula::theorem);
  EXPECT_THROW(r.validate(k), std::invalid_argument);
  r = request(1e4, 1, Formula::theorem);
  r.U = 2.0 * r.U;
  EXPECT_THROW(r.validate(k), std::invalid_argument);
  r.allow_wide_u = true;
  EXPECT_NO_THROW(r.validate(k));
  r.U = 0.0;
  EXPECT_THROW(r.validate(k), std::invalid_argument);
  r = request(1e4, 1, Formula::theorem);
  r.tol = 0.0;
  EXPECT_THROW(r.validate(k), std::invalid_argument);
}

TEST_F(MultiplicativeTest, NZeroTheoremIsExactlyOne) {
  const auto r = theorem_check(ladder, request(1e4, 0, Formula::theorem));
  EXPECT_EQ(r.lhs, r.rhs);
  EXPECT_EQ(r.ratio, 1.0);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.details.size(), 1u);
  EXPECT_EQ(r.details[0].k, 0);
}

TEST_F(MultiplicativeTest, NZeroSidesAgreeWithDirectMean) {
  const VerificationRequest req = request(1e4, 0, Formula::theorem);
  const double direct = integrate_z_sq(req.T, req.T + req.U, 1e-9).value / req.U;
  EXPECT_NEAR(lhs_product_integral(ladder, req), direct, 1e-8 * direct);
  EXPECT_NEAR(rhs_product_means(ladder, req), direct, 1e-8 * direct);
}

TEST_F(MultiplicativeTest, NZeroExactIdentityIsPhiIncrement) {
  const VerificationRequest req = request(1e4, 0, Formula::exact_identity);
  const auto r = exact_identity_check(ladder, req);
  ASSERT_TRUE(r.telescope.has_value());
  const double direct = (ladder.phi1(req.T + req.U, 1e-10).phi - ladder.phi1(req.T, 1e-10).phi) / req.U;
  EXPECT_NEAR(*r.telescope, direct, 1e-8 * direct);
  EXPECT_NEAR(r.ratio, 1.0, 1e-9);
  EXPECT_TRUE(r.pass);
}

TEST_F(MultiplicativeTest, ExactIdentityGrid) {
  for (double T : {1e4, 1e5}) {
    for (int n = 0; n <= 3; ++n) {
      const auto r = exact_identity_check(ladder, request(T, n, Formula::exact_identity));
      EXPECT_LE(std::fabs(r.ratio - 1.0), 1e-5) << T << " " << n;
      ASSERT_TRUE(r.telescope.has_value());
      EXPECT_LE(std::fabs(r.lhs - *r.telescope), 1e-6 * std::fabs(*r.telescope)) << T << " " << n;
      EXPECT_TRUE(r.pass) << T << " " << n;
      EXPECT_EQ(r.details.size(), static_cast<std::size_t>(n + 1));
    }
  }
}

TEST_F(MultiplicativeTest, ExactIdentityGramGapGrid) {
  for (double T : {1e4, 1e5}) {
    for (int n = 0; n <= 3; ++n) {
      VerificationRequest req = request(T, n, Formula::exact_identity);
      req.U = kTwoPi / std::log(T);
      const auto r = exact_identity_check(ladder, req);
      EXPECT_LE(std::fabs(r.ratio - 1.0), 1e-5) << T << " " << n;
    }
  }
}

TEST_F(MultiplicativeTest, MicroscopicWindowIsFinite) {
  VerificationRequest req = request(1e5, 2, Formula::theorem);
  req.U = kTwoPi / std::log(1e5);
  const double lhs = lhs_product_integral(ladder, req);
  const double rhs = rhs_product_means(ladder, req);
  EXPECT_TRUE(std::isfinite(lhs));
  EXPECT_TRUE(std::isfinite(rhs));
  EXPECT_GT(rhs, 0.0);
}

TEST_F(MultiplicativeTest, TelescopeAgreesWithExactIdentity) {
  const auto req = request(1e4, 2, Formula::telescope);
  const auto t = telescope_check(ladder, req);
  const auto e = exact_identity_check(ladder, req);
  EXPECT_TRUE(t.pass);
  EXPECT_NEAR(t.rhs, *e.telescope, 1e-12 * t.rhs);
}

TEST_F(MultiplicativeTest, TheoremWithinWindow) {
  for (int n = 1; n <= 2; ++n) {
    const auto r = theorem_check(ladder, request(1e5, n, Formula::theorem));
    EXPECT_LE(std::fabs(r.ratio - 1.0), 0.2) << n;
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.tolerance_used, 0.2);
  }
}

TEST_F(MultiplicativeTest, ProductOrderDoesNotMatter) {
  VerificationRequest req = request(1e4, 3, Formula::theorem);
  const auto forward = theorem_check(ladder, req);
  req.reverse_product = true;
  const auto backward = theorem_check(ladder, req);
  EXPECT_NEAR(forward.rhs, backward.rhs, 1e-14 * forward.rhs);
  EXPECT_NEAR(forward.lhs, backward.lhs, 1e-12 * forward.lhs);
}

TEST_F(MultiplicativeTest, FactorMeansBracketedByExtremes) {
  std::vector<FactorDetail> details;
  const auto req = request(1e4, 2, Formula::theorem);
  rhs_product_means(ladder, req, &details);
  ASSERT_EQ(details.size(), 3u);
  for (const auto& d : details) {
    EXPECT_LT(d.lo, d.hi);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double z = zeta_sq(d.lo + (d.hi - d.lo) * i / 4000.0);
      lo = std::min(lo, z);
      hi = std::max(hi, z);
    }
    EXPECT_GE(d.mean, lo);
    EXPECT_LE(d.mean, hi);
  }
  for (std::size_t k = 1; k < details.size(); ++k) EXPECT_LT(details[k].lo, details[k - 1].lo);
}

TEST_F(MultiplicativeTest, ShrinkBoundsHold) {
  for (double T : {1e5, 1e6}) {
    const auto r = shrink_bounds_check(ladder, T, default_u(T), 3);
    EXPECT_FALSE(r.inconclusive) << T;
    EXPECT_TRUE(r.pass) << T;
    EXPECT_LT(r.lhs, 1.0);
    EXPECT_EQ(r.details.size(), 4u);
  }
}

TEST_F(MultiplicativeTest, ShrinkBoundsInconclusiveForLargeN) {
  const auto r = shrink_bounds_check(ladder, 1e4, default_u(1e4), 10);
  EXPECT_TRUE(r.inconclusive);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.notes.empty());
}

TEST_F(MultiplicativeTest, HlLaw) {
  const auto r = hl_law_check(ladder, 1e5);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.ratio, 0.75);
  EXPECT_LT(r.ratio, 1.0);
}

TEST_F(MultiplicativeTest, VerifyDispatches) {
  auto req = request(1e4, 1, Formula::telescope);
  EXPECT_EQ(verify(ladder, req).formula, Formula::telescope);
  req.formula = Formula::hl_law;
  EXPECT_EQ(verify(ladder, req).formula, Formula::hl_law);
}

TEST_F(MultiplicativeTest, JsonReport) {
  const auto r = exact_identity_check(ladder, request(1e4, 1, Formula::exact_identity));
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["formula"], "exact_identity");
  EXPECT_EQ(j["n"], 1);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["ratio"].get<double>(), r.ratio);
  ASSERT_EQ(j["details"].size(), 2u);
  EXPECT_EQ(j["details"][1]["interval"][0].get<double>(), r.details[1].lo);
  EXPECT_TRUE(j.contains("telescope"));
  EXPECT_TRUE(j.contains("tolerance_used"));
}

TEST(Json, NonFiniteIsNull) {
  VerificationReport r;
  r.ratio = std::numeric_limits<double>::quiet_NaN();
  r.lhs = std::numeric_limits<double>::infinity();
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(j["ratio"].is_null());
  EXPECT_TRUE(j["lhs"].is_null());
}

}  // namespace
