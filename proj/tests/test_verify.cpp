/*
   Copyright 2026 The qosc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "qosc/verify.hpp"

namespace {

using namespace qosc;

TEST(VerifyHelpers, CommutatorResidualsAreSmall) {
    for (double q : {0.3, 0.5, 0.8, 0.95}) {
        double r[3];
        commutator_residuals(DeformationContext(q, 64, 32), false, r);
        for (double v : r) EXPECT_LT(v, 1e-12) << q;
    }
}

TEST(VerifyHelpers, CorruptedJacobiBreaksCommutators) {
    double r[3];
    commutator_residuals(DeformationContext(0.5, 64, 32), true, r);
    EXPECT_GT(std::max({r[0], r[1], r[2]}), 1e-6);
}

TEST(VerifyHelpers, LadderCommutator) {
    EXPECT_LT(ladder_commutator_residual(DeformationContext(0.5, 64, 32), 30), 1e-12);
}

TEST(VerifyHelpers, ClassicalLimitDistanceShrinks) {
    const double a = ladder_limit_distance(0.99, 10);
    const double b = ladder_limit_distance(0.999, 10);
    EXPECT_LT(b, a);
    EXPECT_LT(b, 0.05);
    EXPECT_LT(ladder_limit_distance(0.9999, 5), 0.005);
}

TEST(VerifyHelpers, SpectrumAndClosedForms) {
    const DeformationContext ctx(0.3, 40, 32);
    EXPECT_LT(spectrum_error(ctx, 6), 1e-10);
    EXPECT_LT(closed_form_residual(Kind::position, ctx), 1e-10);
    EXPECT_LT(closed_form_residual(Kind::momentum, ctx), 1e-10);
    EXPECT_LT(hermite_mode_relation_residual(ctx), 1e-10);
}

TEST(VerifyHelpers, IsometryAndDrift) {
    EXPECT_LT(isometry_residual(DeformationContext(0.5, 64, 64), 32, 5, 7), 1e-8);
    EXPECT_LT(norm_drift(DeformationContext(0.5, 80, 30), 3, 7), 1e-7);
}

TEST(VerifyProfile, TighterForSmallQ) {
    EXPECT_LE(verify_profile(0.3).orth_tol, verify_profile(0.95).orth_tol);
    EXPECT_GT(verify_profile(0.95).orth_depth, verify_profile(0.5).orth_depth);
}

class VerifyRun : public ::testing::Test {
protected:
    static VerifyReport run(bool corrupt = false, std::int64_t seed = 3) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.qs = {0.3};
        opt.corrupt_jacobi = corrupt;
        return run_verify(opt);
    }
};

TEST_F(VerifyRun, SmallQPasses) {
    const auto rep = run();
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.residual;
    EXPECT_TRUE(rep.overall());
}

TEST_F(VerifyRun, NegativeControlFails) {
    const auto rep = run(true);
    EXPECT_FALSE(rep.overall());
    bool comm_failed = false;
    for (const auto& c : rep.checks)
        if (c.name.rfind("commutator_", 0) == 0 && !c.passed) comm_failed = true;
    EXPECT_TRUE(comm_failed);
}

TEST_F(VerifyRun, CsvIsReproducible) {
    const auto a = verify_csv(run());
    const auto b = verify_csv(run());
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("# qosc verify v1 overall=pass\n", 0), 0U);
}

TEST_F(VerifyRun, JsonFields) {
    const auto j = verify_json(run());
    EXPECT_EQ(j["overall"], "pass");
    ASSERT_FALSE(j["checks"].empty());
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c.contains("name"));
        EXPECT_TRUE(c["residual"].is_number());
        EXPECT_TRUE(c["tolerance"].is_number());
    }
}

TEST(VerifyReport, EmptyIsNotAPass) {
    VerifyReport rep;
    EXPECT_FALSE(rep.overall());
}

}  // namespace
