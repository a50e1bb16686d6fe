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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "qosc/hilbert.hpp"

namespace {

using qosc::cplx;
using qosc::DeformationContext;
using qosc::EvalMode;
using qosc::Kind;
using qosc::LatticeFunction;
using qosc::LatticePoint;
using qosc::WavefunctionQuery;

const cplx kI(0.0, 1.0);

double max_diff(const LatticeFunction& a, const LatticeFunction& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

// distance in the lattice norm; pointwise values deep in the window amplify rounding
double norm_diff(const LatticeFunction& a, const LatticeFunction& b, const DeformationContext& ctx) {
    auto d = a;
    for (std::size_t j = 0; j < d.size(); ++j) d.values[j] -= b.values[j];
    return std::sqrt(qosc::lattice_inner(d, d, ctx).real());
}

std::vector<cplx> unit(std::size_t n, std::size_t len) {
    std::vector<cplx> b(len);
    b[n] = 1.0;
    return b;
}

TEST(PsiEval, Examples) {
    const DeformationContext ctx(0.5);
    const LatticePoint one(1, 0, 0.5);
    for (auto mode : {EvalMode::series, EvalMode::product})
        EXPECT_NEAR(std::abs(qosc::psi_eval({one, 0.0, mode}, ctx) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(qosc::psi_eval({one, 0.5, EvalMode::product}, ctx).real(), 2.3842310290313717, 1e-14);
    EXPECT_NEAR(qosc::psi_eval({one, 0.5, EvalMode::series}, ctx).real(), 2.3842310290313717, 1e-13);
    const DeformationContext c8(0.8);
    const LatticePoint x(-1, 3, 0.8);
    EXPECT_NEAR(qosc::psi_eval({x, 0.9, EvalMode::product}, c8).real(), 0.0041320149986665089, 1e-16);
}

TEST(PsiEval, RejectsClosedDisk) {
    const DeformationContext ctx(0.5);
    for (cplx y : {cplx(1.0), cplx(0.0, -1.0), cplx(0.8, 0.8)}) {
        try {
            (void)qosc::psi_eval({LatticePoint(1, 0, 0.5), y, EvalMode::series}, ctx);
            FAIL();
        } catch (const qosc::error& e) {
            EXPECT_EQ(e.code(), qosc::errc::domain_error);
        }
        EXPECT_THROW((void)qosc::phi_eval({LatticePoint(1, 0, 0.5), y, EvalMode::product}, ctx), qosc::error);
    }
}

TEST(PsiEval, SeriesMatchesProduct) {
    for (double q : {0.3, 0.5, 0.8}) {
        const DeformationContext ctx(q);
        for (std::size_t s = 0; s <= 8; ++s)
            for (int sign : {1, -1})
                for (int k = 1; k <= 9; ++k) {
                    const double r = 0.1 * k;
                    for (cplx y : {cplx(r), cplx(-r), r * std::polar(1.0, 0.7)}) {
                        const LatticePoint pt(sign, s, q);
                        const cplx a = qosc::psi_eval({pt, y, EvalMode::series}, ctx);
                        const cplx b = qosc::psi_eval({pt, y, EvalMode::product}, ctx);
                        EXPECT_LE(std::abs(a - b), 1e-10 * std::abs(b)) << "q=" << q << " s=" << s << " y=" << y;
                    }
                }
    }
}

TEST(PsiEval, CoefficientsSatisfyEigenRelation) {
    // Q applied to the power series of psi_x equals x psi_x coefficientwise
    const double q = 0.5;
    const DeformationContext ctx(q, 40);
    const auto Q = qosc::build_Q(ctx);
    for (std::size_t s : {0u, 2u, 5u}) {
        const LatticePoint pt(-1, s, q);
        const auto b = qosc::normalized_eigenfunction(Kind::position, pt, 40, ctx);
        const auto qb = Q.apply(b);
        for (std::size_t n = 0; n + 1 < 40; ++n) EXPECT_NEAR(std::abs(qb[n] - pt.value() * b[n]), 0.0, 1e-12);
    }
}

TEST(PhiEval, Examples) {
    const DeformationContext ctx(0.5);
    const LatticePoint one(1, 0, 0.5);
    EXPECT_NEAR(std::abs(qosc::phi_eval({one, 0.0, EvalMode::series}, ctx) - 1.0), 0.0, 1e-15);
    const cplx v = qosc::phi_eval({one, 0.3, EvalMode::series}, ctx);
    EXPECT_NEAR(v.real(), 0.88041135273290362, 1e-14);
    EXPECT_NEAR(v.imag(), 0.58972224848963103, 1e-14);
    EXPECT_NEAR(std::abs(qosc::phi_eval({one, 0.3, EvalMode::product}, ctx) - v), 0.0, 1e-13);
}

TEST(PhiEval, IsPsiAtImaginaryArgument) {
    const DeformationContext ctx(0.8);
    for (std::size_t s : {0u, 1u, 4u})
        for (double r : {0.2, 0.6, 0.85}) {
            const LatticePoint pt(1, s, 0.8);
            const cplx phi = qosc::phi_eval({pt, r, EvalMode::series}, ctx);
            const cplx psi = qosc::psi_eval({pt, kI * r, EvalMode::series}, ctx);
            EXPECT_EQ(phi, psi);
        }
}

TEST(PhiEval, NumeratorCandidates) {
    // only (-y^2;q^2) reproduces the series
    for (double q : {0.3, 0.5, 0.8}) {
        const DeformationContext ctx(q);
        for (std::size_t s : {0u, 3u})
            for (double y : {0.3, 0.7}) {
                const auto r = qosc::phi_product_residuals({LatticePoint(-1, s, q), y, EvalMode::series}, ctx);
                EXPECT_LT(r.minus_y2_q2, 1e-10 * std::abs(r.series));
                EXPECT_GT(r.y2_q2, 1e-3 * std::abs(r.series));
                EXPECT_GT(r.y2_q, 1e-3 * std::abs(r.series));
            }
    }
}

TEST(NormalizedEigenfunction, Orthonormal) {
    const double q = 0.5;
    const DeformationContext ctx(q, 60);
    const auto a = qosc::normalized_eigenfunction(Kind::position, LatticePoint(1, 0, q), 60, ctx);
    const auto b = qosc::normalized_eigenfunction(Kind::position, LatticePoint(-1, 0, q), 60, ctx);
    const auto c = qosc::normalized_eigenfunction(Kind::position, LatticePoint(1, 1, q), 60, ctx);
    EXPECT_NEAR(std::abs(qosc::fock_coefficient_inner(a, a) - 1.0), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(qosc::fock_coefficient_inner(a, b)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(qosc::fock_coefficient_inner(a, c)), 0.0, 1e-8);
    const auto m = qosc::normalized_eigenfunction(Kind::momentum, LatticePoint(1, 2, q), 60, ctx);
    EXPECT_NEAR(std::abs(qosc::fock_coefficient_inner(m, m) - 1.0), 0.0, 1e-8);
}

TEST(NormalizedEigenfunction, FockInnerAgreesWithCoefficientForm) {
    const DeformationContext ctx(0.5, 30);
    const auto a = qosc::normalized_eigenfunction(Kind::position, LatticePoint(1, 2, 0.5), 30, ctx);
    const auto b = qosc::normalized_eigenfunction(Kind::position, LatticePoint(-1, 1, 0.5), 30, ctx);
    const cplx lhs = qosc::fock_inner(qosc::to_power_series(a, ctx), qosc::to_power_series(b, ctx), ctx);
    EXPECT_NEAR(std::abs(lhs - qosc::fock_coefficient_inner(a, b)), 0.0, 1e-13);
}

TEST(FockToPosition, Examples) {
    const DeformationContext ctx(0.5, 64, 40);
    const auto f0 = qosc::fock_to_position(unit(0, 1), ctx);
    for (const auto& v : f0.values) EXPECT_EQ(v, cplx(1.0));
    const auto f1 = qosc::fock_to_position(unit(1, 2), ctx);
    for (std::size_t s = 0; s < 40; ++s) EXPECT_EQ(f1.values[2 * s + 1], -f1.values[2 * s]);
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> b{h, h};
    const auto f = qosc::fock_to_position(b, ctx);
    EXPECT_NEAR(qosc::position_inner(f, f, ctx).real(), 1.0, 1e-9);
    EXPECT_THROW((void)qosc::fock_to_position(std::vector<cplx>(65), ctx), qosc::error);
}

TEST(PositionInner, Examples) {
    {
        const DeformationContext ctx(0.5, 64, 40);
        const auto p0 = qosc::fock_to_position(unit(0, 1), ctx);
        const auto p1 = qosc::fock_to_position(unit(1, 2), ctx);
        EXPECT_NEAR(qosc::position_inner(p0, p0, ctx).real(), 1.0, 1e-10);
        EXPECT_EQ(qosc::position_inner(p0, p1, ctx), cplx(0.0));
        auto m = p0;
        m.kind = Kind::momentum;
        try {
            (void)qosc::position_inner(p0, m, ctx);
            FAIL();
        } catch (const qosc::error& e) {
            EXPECT_EQ(e.code(), qosc::errc::kind_mismatch);
        }
    }
    {
        const DeformationContext ctx(0.8, 64, 80);
        const auto p5 = qosc::fock_to_position(unit(5, 6), ctx);
        EXPECT_NEAR(qosc::position_inner(p5, p5, ctx).real(), 1.0, 1e-8);
    }
}

TEST(PositionInner, Isometry) {
    const double q = 0.5;
    const DeformationContext ctx(q, 64, 64);
    std::mt19937_64 rng(2026);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        std::vector<cplx> b(32), c(32);
        for (std::size_t n = 0; n < 32; ++n) {
            b[n] = {g(rng), g(rng)};
            c[n] = {g(rng), g(rng)};
        }
        const auto fb = qosc::fock_to_position(b, ctx);
        const auto fc = qosc::fock_to_position(c, ctx);
        const cplx expected = qosc::fock_coefficient_inner(b, c);
        const double scale = std::sqrt(qosc::fock_coefficient_inner(b, b).real() * qosc::fock_coefficient_inner(c, c).real());
        EXPECT_LT(std::abs(qosc::position_inner(fb, fc, ctx) - expected), 1e-8 * scale);
        const auto mb = qosc::fock_to_momentum(b, ctx);
        const auto mc = qosc::fock_to_momentum(c, ctx);
        EXPECT_LT(std::abs(qosc::momentum_inner(mb, mc, ctx) - expected), 1e-8 * scale);
    }
}

TEST(PositionInner, HermitianPositive) {
    const DeformationContext ctx(0.5, 64, 44);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    auto f = qosc::make_lattice_function(Kind::position, ctx);
    auto h = f;
    for (std::size_t j = 0; j < f.size(); ++j) {
        f.values[j] = {g(rng), g(rng)};
        h.values[j] = {g(rng), g(rng)};
    }
    EXPECT_LT(std::abs(qosc::position_inner(f, h, ctx) - std::conj(qosc::position_inner(h, f, ctx))), 1e-14);
    EXPECT_GT(qosc::position_inner(f, f, ctx).real(), 0.0);
}

TEST(ApplyQ, Examples) {
    const double q = 0.5;
    const DeformationContext ctx(q, 64, 44);
    const auto one = qosc::fock_to_position(unit(0, 1), ctx);
    const auto x = qosc::apply_Q_position(one, ctx);
    for (std::size_t j = 0; j < x.size(); ++j) EXPECT_EQ(x.values[j], cplx(x.points[j].value()));
    const auto p1 = qosc::fock_to_position(unit(1, 2), ctx);
    EXPECT_NEAR(qosc::position_inner(x, p1, ctx).real(), std::sqrt(1.0 - q), 1e-12);
    EXPECT_NEAR(std::abs(qosc::position_inner(x, one, ctx)), 0.0, 1e-15);
    EXPECT_LT(max_diff(qosc::apply_Q_position_modes(one, ctx), x), 1e-12);
}

TEST(ApplyQ, TruncationIsReported) {
    const DeformationContext ctx(0.5, 20, 44);
    auto spike = qosc::make_lattice_function(Kind::position, ctx);
    spike.values[2 * 30] = 1.0;
    try {
        (void)qosc::apply_Q_position_modes(spike, ctx);
        FAIL();
    } catch (const qosc::error& e) {
        EXPECT_EQ(e.code(), qosc::errc::truncation);
    }
}

TEST(ApplyQ, EigenRelationOnLattice) {
    const double q = 0.5;
    const DeformationContext ctx(q, 160, 44);
    for (std::size_t s = 0; s <= 8; ++s)
        for (int sign : {1, -1}) {
            const LatticePoint pt(sign, s, q);
            const auto b = qosc::normalized_eigenfunction(Kind::position, pt, 160, ctx);
            const auto f = qosc::fock_to_position(b, ctx);
            const auto qf = qosc::apply_Q_position_modes(f, ctx);
            double scale = 0.0;
            for (const auto& v : f.values) scale = std::max(scale, std::abs(v));
            for (std::size_t j = 0; j < f.size(); ++j)
                EXPECT_LT(std::abs(qf.values[j] - pt.value() * f.values[j]), 1e-8 * scale) << "s=" << s << " j=" << j;
        }
}

TEST(ApplyP, Examples) {
    const double q = 0.5;
    const DeformationContext ctx(q, 64, 44);
    const auto p0 = qosc::fock_to_position(unit(0, 1), ctx);
    const auto pp0 = qosc::apply_P_position(p0, ctx);
    std::vector<cplx> expected_b(2);
    expected_b[1] = kI * std::sqrt(1.0 - q);
    EXPECT_LT(max_diff(pp0, qosc::fock_to_position(expected_b, ctx)), 1e-12);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    std::vector<cplx> b(10), c(10);
    for (std::size_t n = 0; n < 10; ++n) {
        b[n] = {g(rng), g(rng)};
        c[n] = {g(rng), g(rng)};
    }
    const auto f = qosc::fock_to_position(b, ctx), h = qosc::fock_to_position(c, ctx);
    const cplx lhs = qosc::position_inner(qosc::apply_P_position(f, ctx), h, ctx);
    const cplx rhs = qosc::position_inner(f, qosc::apply_P_position(h, ctx), ctx);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs)));
}

TEST(ApplyP, DifferenceFormOracle) {
    for (double q : {0.3, 0.5, 0.8}) {
        const DeformationContext ctx(q, 64, q < 0.7 ? 44 : 100);
        for (std::size_t n = 0; n <= 6; ++n) {
            const auto modes = qosc::p_difference_form_modes(n, ctx);
            ASSERT_EQ(modes.size(), n + 2);
            const auto a = qosc::jacobi_coefficients(n + 1, q);
            for (std::size_t k = 0; k < modes.size(); ++k) {
                cplx expected{};
                if (k == n + 1) expected = kI * a[n];
                if (n > 0 && k + 1 == n) expected = -kI * a[n - 1];
                EXPECT_LT(std::abs(modes[k] - expected), 1e-9) << "q=" << q << " n=" << n << " k=" << k;
            }
        }
        const auto p1 = qosc::fock_to_position(unit(1, 2), ctx);
        EXPECT_LT(max_diff(qosc::p_difference_form(1, ctx), qosc::apply_P_position(p1, ctx)), 1e-9);
    }
}

TEST(ApplyH, Examples) {
    for (double q : {0.3, 0.5}) {
        // N well below the window so the top modes are resolved
        const DeformationContext ctx(q, 40, 48);
        const auto p0 = qosc::fock_to_position(unit(0, 1), ctx);
        const auto h0 = qosc::apply_H_position(p0, ctx);
        for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(h0.values[j] - 0.5), 0.0, 1e-10);
        auto half = p0;
        for (auto& v : half.values) v *= 0.5;
        // H weights the window-truncation error of high modes by n + 1/2
        EXPECT_LT(norm_diff(h0, half, ctx), 1e-8);
        const std::vector<cplx> b{1.0, 1.0};
        const std::vector<cplx> hb{0.5, 1.5};
        EXPECT_LT(norm_diff(qosc::apply_H_position(qosc::fock_to_position(b, ctx), ctx), qosc::fock_to_position(hb, ctx), ctx), 1e-8);
    }
}

TEST(Momentum, MultiplicationAndRecurrence) {
    const double q = 0.5;
    const DeformationContext ctx(q, 40, 48);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<cplx> b(12);
    for (auto& v : b) v = {g(rng), g(rng)};
    const auto f = qosc::fock_to_momentum(b, ctx);
    EXPECT_LT(norm_diff(qosc::apply_P_momentum(f, ctx), qosc::apply_P_momentum_modes(f, ctx), ctx), 1e-10);
    // e_n maps to conj(g_n) = (-i)^n p_n
    const auto e3 = qosc::fock_to_momentum(unit(3, 4), ctx);
    for (std::size_t j = 0; j < 8; ++j)
        EXPECT_NEAR(std::abs(e3.values[j] - kI * qosc::lattice_mode(3, e3.points[j], ctx)), 0.0, 1e-15);
    // Q g_n has the real position-case coefficients
    const auto qf = qosc::apply_Q_momentum(f, ctx);
    const auto expected = qosc::fock_to_momentum(qosc::build_Q(DeformationContext(q, 13)).apply(
        [&] { auto c = b; c.push_back(0.0); return c; }()), ctx);
    EXPECT_LT(norm_diff(qf, expected, ctx), 1e-10);
    std::vector<cplx> hb(12);
    for (std::size_t n = 0; n < 12; ++n) hb[n] = (static_cast<double>(n) + 0.5) * b[n];
    EXPECT_LT(norm_diff(qosc::apply_H_momentum(f, ctx), qosc::fock_to_momentum(hb, ctx), ctx), 1e-8);
    EXPECT_THROW((void)qosc::apply_P_momentum(qosc::fock_to_position(b, ctx), ctx), qosc::error);
    EXPECT_THROW((void)qosc::apply_Q_position(f, ctx), qosc::error);
}

TEST(Momentum, PhaseMapConjugatesQIntoP) {
    // b_n -> i^n b_n carries the position-mode action of Q to the momentum-mode action of P
    const DeformationContext ctx(0.5, 24);
    const auto Q = qosc::build_Q(ctx), P = qosc::build_P(ctx);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    std::vector<cplx> b(24), ib(24);
    for (std::size_t n = 0; n < 24; ++n) {
        b[n] = {g(rng), g(rng)};
        ib[n] = qosc::i_power(n) * b[n];
    }
    const auto qb = Q.apply(b);
    const auto pib = P.apply(ib);
    for (std::size_t n = 0; n < 24; ++n) {
        // P acting on i^n b_n, then undo the phase: Q b up to the global factor
        const cplx back = pib[n] / qosc::i_power(n);
        EXPECT_LT(std::abs(back - qb[n]), 1e-13);
    }
}

TEST(Decompose, ReportsTail) {
    const DeformationContext ctx(0.5, 20, 44);
    auto f = qosc::make_lattice_function(Kind::position, ctx);
    f.values[2 * 30] = 1.0;  // a spike deep in the window needs many modes
    const auto dec = qosc::decompose(f, ctx);
    EXPECT_GT(dec.discarded_tail, 1e-3 * dec.norm_squared);
    const auto smooth = qosc::fock_to_position(unit(3, 4), ctx);
    const auto d2 = qosc::decompose(smooth, ctx);
    EXPECT_NEAR(std::abs(d2.coeffs[3] - 1.0), 0.0, 1e-12);
    EXPECT_LT(d2.discarded_tail, 1e-12);
}

}  // namespace
