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


#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qosc/fock.hpp"

namespace {

using qosc::cplx;
using qosc::DeformationContext;
using qosc::DenseMatrix;

const cplx kI(0.0, 1.0);

TEST(BuildQ, Structure) {
    const DeformationContext ctx(0.5, 40);
    const auto Q = qosc::build_Q(ctx);
    ASSERT_EQ(Q.dim(), 40u);
    EXPECT_TRUE(Q.hermitian);
    EXPECT_NEAR(Q.upper[0].real(), 0.70710678118654752, 1e-15);
    for (std::size_t n = 0; n < 40; ++n) EXPECT_EQ(Q.diag[n], 0.0);
    for (std::size_t n = 0; n + 1 < 40; ++n) {
        EXPECT_EQ(Q.upper[n].imag(), 0.0);
        EXPECT_EQ(Q.upper[n], Q.lower[n]);
        if (n > 0) {
            EXPECT_LT(Q.upper[n].real(), Q.upper[n - 1].real());
        }
    }
    EXPECT_LT(Q.upper[38].real(), 1e-5);
}

TEST(BuildP, GaugeRelatedToQ) {
    const DeformationContext ctx(0.8, 50);
    const auto Q = qosc::build_Q(ctx);
    const auto P = qosc::build_P(ctx);
    for (std::size_t n = 0; n + 1 < 50; ++n) {
        EXPECT_EQ(std::abs(P.upper[n]), std::abs(Q.upper[n]));
        EXPECT_EQ(P.upper[n].real(), 0.0);
        EXPECT_EQ(P.lower[n], std::conj(P.upper[n]));
    }
    const DenseMatrix d = P.dense();
    EXPECT_EQ((d - d.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    const auto eq = qosc::eigendecompose(Q).values;
    const auto ep = qosc::eigendecompose(P).values;
    for (std::size_t k = 0; k < 50; ++k) EXPECT_NEAR(eq[k], ep[k], 1e-12);
}

TEST(BuildH, Examples) {
    for (double q : {0.3, 0.9}) {
        const auto H = qosc::build_H(DeformationContext(q, 10));
        EXPECT_EQ(H.diag[0], 0.5);
        for (std::size_t n = 1; n < 10; ++n) EXPECT_EQ(H.diag[n] - H.diag[n - 1], 1.0);
    }
}

TEST(BuildFofH, Examples) {
    const auto F = qosc::build_F_of_H(DeformationContext(0.5, 30));
    EXPECT_DOUBLE_EQ(F.diag[0], 1.0);
    EXPECT_LT(std::abs(F.diag[29]), 1e-8);

    // brute force [Q,P] on 3x3 matches i F(H) in the (0,0) corner
    const DeformationContext small(0.5, 3);
    const DenseMatrix c = qosc::commutator(qosc::build_Q(small), qosc::build_P(small));
    EXPECT_NEAR(std::abs(c(0, 0) - kI * 1.0), 0.0, 1e-15);
}

TEST(Ladders, Examples) {
    const DeformationContext ctx(0.5, 30);
    const auto [a, ad] = qosc::build_ladders(ctx);
    const DenseMatrix c = qosc::commutator(a, ad);
    EXPECT_NEAR(c(0, 0).real(), 0.5, 1e-15);
    EXPECT_EQ((ad.dense() - a.dense().adjoint()).cwiseAbs().maxCoeff(), 0.0);
    for (std::size_t n = 0; n + 1 < 30; ++n) {
        const double qn = std::pow(0.5, static_cast<double>(n));
        const double expected = std::sqrt(0.5 * qn * (1.0 - 0.5 * qn) / 0.5);
        EXPECT_NEAR(ad(n + 1, n).real(), expected, 1e-15);
    }
}

TEST(Ladders, QuadratureRelation) {
    for (double q : {0.3, 0.5, 0.8, 0.95}) {
        const DeformationContext ctx(q, 40);
        const auto ad = qosc::build_ladders(ctx).raising.dense();
        const DenseMatrix rhs = 0.5 * std::sqrt(q / (1.0 - q)) * (qosc::build_Q(ctx).dense() - kI * qosc::build_P(ctx).dense());
        EXPECT_LT((ad - rhs).cwiseAbs().maxCoeff(), 1e-13) << "q=" << q;
    }
}

TEST(Ladders, CommutatorDiagonalFormula) {
    for (double q : {0.3, 0.5, 0.8, 0.999}) {
        const DeformationContext ctx(q, 30);
        const auto [a, ad] = qosc::build_ladders(ctx);
        const DenseMatrix c = qosc::commutator(a, ad);
        for (std::size_t n = 0; n + 1 < 30; ++n) {
            const double qn = std::pow(q, static_cast<double>(n));
            EXPECT_NEAR(c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real(), (1.0 + q) * qn * qn - qn, 1e-13);
        }
    }
}

TEST(Ladders, ClassicalLimit) {
    {
        const DeformationContext ctx(0.999, 16);
        const auto [a, ad] = qosc::build_ladders(ctx);
        const DenseMatrix c = qosc::commutator(a, ad);
        for (Eigen::Index n = 0; n <= 10; ++n) {
            EXPECT_LT(std::abs(c(n, n).real() - 1.0), 0.05);
            EXPECT_LT(std::abs(qosc::build_F_of_H(ctx).diag[static_cast<std::size_t>(n)]), 0.05);
        }
        EXPECT_NEAR(c(10, 10).real(), 0.96936, 1e-5);
    }
    {
        const DeformationContext ctx(0.9999, 16);
        const DenseMatrix c = qosc::commutator(qosc::build_ladders(ctx).lowering, qosc::build_ladders(ctx).raising);
        for (Eigen::Index n = 0; n <= 5; ++n) EXPECT_LT(std::abs(c(n, n).real() - 1.0), 0.005);
        EXPECT_NEAR(c(5, 5).real(), 0.99840, 1e-5);
    }
}

TEST(Commutator, RejectsMismatchedDims) {
    try {
        (void)qosc::commutator(qosc::build_Q(DeformationContext(0.5, 4)), qosc::build_Q(DeformationContext(0.5, 5)));
        FAIL();
    } catch (const qosc::error& e) {
        EXPECT_EQ(e.code(), qosc::errc::dimension_mismatch);
    }
    const auto H = qosc::build_H(DeformationContext(0.5, 8));
    EXPECT_EQ(qosc::commutator(H, H).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Commutator, OscillatorRelationsInterior) {
    for (double q : {0.3, 0.5, 0.8, 0.95}) {
        const DeformationContext ctx(q, 64);
        const auto H = qosc::build_H(ctx), Q = qosc::build_Q(ctx), P = qosc::build_P(ctx), F = qosc::build_F_of_H(ctx);
        const DenseMatrix r1 = qosc::commutator(H, Q) + kI * P.dense();
        const DenseMatrix r2 = qosc::commutator(H, P) - kI * Q.dense();
        const DenseMatrix r3 = qosc::commutator(Q, P) - kI * F.dense();
        EXPECT_LT(qosc::max_abs_leading(r1, 62), 1e-12);
        EXPECT_LT(qosc::max_abs_leading(r2, 62), 1e-12);
        EXPECT_LT(qosc::max_abs_leading(r3, 62), 1e-12);
        // the defect sits on the truncation boundary only
        EXPECT_GT(std::abs(r3(63, 63)), 0.0);
    }
}

TEST(Eigendecompose, SmallCases) {
    const auto e2 = qosc::eigendecompose(qosc::build_Q(DeformationContext(0.5, 2)));
    EXPECT_NEAR(e2.values[0], -std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(e2.values[1], std::sqrt(0.5), 1e-15);
    const auto a = qosc::build_ladders(DeformationContext(0.5, 4)).lowering;
    try {
        (void)qosc::eigendecompose(a);
        FAIL();
    } catch (const qosc::error& e) {
        EXPECT_EQ(e.code(), qosc::errc::not_hermitian);
    }
}

TEST(Eigendecompose, ResidualsAndOrthonormality) {
    for (double q : {0.3, 0.8}) {
        const DeformationContext ctx(q, 80);
        for (const auto& T : {qosc::build_Q(ctx), qosc::build_P(ctx)}) {
            const auto eig = qosc::eigendecompose(T);
            const DenseMatrix d = T.dense();
            const DenseMatrix& V = eig.vectors;
            for (Eigen::Index k = 0; k < V.cols(); ++k) {
                const double r = (d * V.col(k) - eig.values[static_cast<std::size_t>(k)] * V.col(k)).norm();
                EXPECT_LT(r, 1e-12 * T.max_abs_entry() * 10);
            }
            EXPECT_LT((V.adjoint() * V - DenseMatrix::Identity(V.cols(), V.cols())).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
        }
    }
}

TEST(Eigendecompose, EigenvectorsCarryModeRatios) {
    const double q = 0.5;
    const DeformationContext ctx(q, 60);
    const auto eig = qosc::eigendecompose(qosc::build_Q(ctx));
    for (std::size_t s = 0; s < 6; ++s) {
        const double target = std::pow(q, static_cast<double>(s));
        const auto it = std::min_element(eig.values.begin(), eig.values.end(),
                                         [&](double a, double b) { return std::abs(a - target) < std::abs(b - target); });
        const auto k = static_cast<Eigen::Index>(it - eig.values.begin());
        const auto p = qosc::lattice_modes(qosc::LatticePoint(1, s, q), 31, ctx);
        const cplx v0 = eig.vectors(0, k);
        for (std::size_t n = 0; n <= 30; ++n) {
            const double ratio = (eig.vectors(static_cast<Eigen::Index>(n), k) / v0).real();
            EXPECT_NEAR(ratio, p[n], 1e-8 * std::max(1.0, std::abs(p[n]))) << "s=" << s << " n=" << n;
        }
    }
}

TEST(Eigendecompose, NormBound) {
    for (double q : {0.3, 0.5, 0.8, 0.95, 0.99})
        for (std::size_t n : {2u, 10u, 100u}) {
            const auto v = qosc::eigendecompose(qosc::build_Q(DeformationContext(q, n))).values;
            EXPECT_LE(std::max(std::abs(v.front()), std::abs(v.back())), 1.0 + 1e-12);
        }
}

TEST(SpectrumReport, MatchesLattice) {
    {
        const DeformationContext ctx(0.5, 60, 32);
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = qosc::spectrum_report(qosc::build_Q(ctx), ctx);
        EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
        EXPECT_GE(rep.s_match, 8);
        EXPECT_LT(rep.max_error, 1e-10);
        for (const auto& m : rep.matched)
            if (m.level <= 8) {
                EXPECT_LT(m.error, 1e-10);
            }
        EXPECT_EQ(rep.eigenvalues.size(), 60u);
        EXPECT_EQ(rep.matched.size() + rep.unmatched.size(), 60u);
        const double bound = std::pow(0.5, static_cast<double>(rep.s_match));
        for (double u : rep.unmatched) EXPECT_LT(std::abs(u), bound);
        // multiset symmetric under negation
        auto sorted = rep.eigenvalues;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_NEAR(sorted[k], -sorted[sorted.size() - 1 - k], 1e-12);
    }
    {
        const DeformationContext ctx(0.8, 120, 32, 1e-15, 1e-8);
        const auto rep = qosc::spectrum_report(qosc::build_Q(ctx), ctx);
        EXPECT_GE(rep.s_match, 12);
        EXPECT_LT(rep.max_error, 1e-8);
    }
}

TEST(SpectrumReport, MatchedOrder) {
    const DeformationContext ctx(0.3, 40);
    const auto rep = qosc::spectrum_report(qosc::build_Q(ctx), ctx);
    ASSERT_GE(rep.matched.size(), 2u);
    EXPECT_EQ(rep.matched[0].sign, 1);
    EXPECT_EQ(rep.matched[0].level, 0u);
    EXPECT_EQ(rep.matched[1].sign, -1);
    EXPECT_NEAR(rep.matched[0].lambda, 1.0, 1e-12);
}

}  // namespace
