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

/**
 * @file qhermite.hpp
 * @brief Discrete q-Hermite polynomials of type I and the oscillator modes.
 *
 * Two families are evaluated here:
 *
 *  - h_n(z;q), monic, from z h_n = h_{n+1} + q^{n-1}(1-q^n) h_{n-1};
 *  - p_n(x), the orthonormal coefficient polynomials, from
 *    x p_n = a_n p_{n+1} + a_{n-1} p_{n-1} with a_n = sqrt(q^n (1-q^{n+1})),
 *    p_{-1} = 0, p_0 = 1.
 *
 * They are related by p_n = (q;q)_n^{-1/2} q^{-n(n-1)/4} h_n.
 *
 * At a lattice point x = +-q^s the sequence p_n(x) is the minimal solution of
 * its recurrence: it decays like q^{n^2/4} once n passes roughly 2s, while
 * the companion solution grows at the reciprocal rate. Forward evaluation
 * there loses every digit within a few steps of the turning point, so lattice
 * values come from a backward ratio recurrence instead (`lattice_modes`).
 * Off the lattice the polynomial itself is the dominant solution and the
 * forward recurrence (`mode_poly`) is the right tool.
 */

#ifndef QOSC_QHERMITE_HPP
#define QOSC_QHERMITE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "qosc/context.hpp"
#include "qosc/error.hpp"
#include "qosc/lattice.hpp"
#include "qosc/parallel.hpp"
#include "qosc/qcore.hpp"

namespace qosc {

/// a_n = sqrt(q^n (1 - q^{n+1})): the off-diagonal of the position Jacobi matrix.
inline double jacobi_coefficient(std::size_t n, double q) {
    const double qn = std::pow(q, static_cast<double>(n));
    return std::sqrt(qn * (1.0 - qn * q));
}

inline std::vector<double> jacobi_coefficients(std::size_t count, double q) {
    std::vector<double> a(count);
    double qn = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
        a[n] = std::sqrt(qn * (1.0 - qn * q));
        qn *= q;
    }
    return a;
}

/// h_n(z;q) by forward recurrence from h_0 = 1, h_1 = z.
inline double hermite_eval(std::size_t n, double z, const DeformationContext& ctx) {
    const double q = ctx.q();
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = z;
    double qkm1 = 1.0;  // q^{k-1} at k = 1
    for (std::size_t k = 1; k < n; ++k) {
        const double qk = qkm1 * q;
        const double next = z * cur - qkm1 * (1.0 - qk) * prev;
        prev = cur;
        cur = next;
        qkm1 = qk;
    }
    return cur;
}

/// p_0(x) ... p_{count-1}(x) by forward recurrence (polynomial evaluation).
inline std::vector<double> mode_polys(std::size_t count, double x, const DeformationContext& ctx) {
    std::vector<double> p(count);
    if (count == 0) return p;
    const auto a = jacobi_coefficients(count, ctx.q());
    p[0] = 1.0;
    for (std::size_t n = 0; n + 1 < count; ++n) {
        const double lower = n > 0 ? a[n - 1] * p[n - 1] : 0.0;
        p[n + 1] = (x * p[n] - lower) / a[n];
    }
    return p;
}

/// p_n(x) for arbitrary real x via the forward recurrence.
inline double mode_poly(std::size_t n, double x, const DeformationContext& ctx) {
    return mode_polys(n + 1, x, ctx).back();
}

/// p_n from h_n through the q^{-n(n-1)/4} rescaling; only sound for small n.
inline double mode_poly_via_hermite(std::size_t n, double x, const DeformationContext& ctx) {
    const double q = ctx.q();
    const double nn = static_cast<double>(n);
    return hermite_eval(n, x, ctx) / (std::sqrt(qpoch(q, n, q)) * std::pow(q, nn * (nn - 1.0) / 4.0));
}

/**
 * p_0 ... p_{count-1} at a lattice point x = +-q^s.
 *
 * Below the turning index K (largest n with a_{n-1} + a_n >= |x|) the
 * recurrence oscillates and the forward polynomial recurrence is stable.
 * Past K the lattice values are the minimal solution and decay; they come
 * from Miller's algorithm, running x y_n = a_n y_{n+1} + a_{n-1} y_{n-1}
 * downward from an index M with a_M < eps |x|, and are scaled to meet the
 * forward values at K - 1 and K. The forward part keeps the polynomial
 * values exact at the rounded x; the minimal solution alone is off by about
 * eps / c_s there, which is visible once c_s is small (q near 1).
 */
inline std::vector<double> lattice_modes(const LatticePoint& pt, std::size_t count, const DeformationContext& ctx) {
    std::vector<double> p(count);
    if (count == 0) return p;
    const double q = ctx.q();
    const double x = pt.value();
    if (x == 0.0) throw error(errc::domain_error, "lattice point underflowed to zero");

    std::size_t top = count;
    const double floor = ctx.tail_tol() * std::abs(x);
    while (jacobi_coefficient(top, q) >= floor) ++top;
    top += 16;
    const auto a = jacobi_coefficients(top + 1, q);

    std::size_t turn = 0;
    for (std::size_t n = 1; n <= top; ++n)
        if (a[n - 1] + a[n] >= std::abs(x)) turn = n;
    if (turn >= count) turn = count - 1;

    // forward through the oscillatory part
    p[0] = 1.0;
    for (std::size_t n = 0; n < turn; ++n) {
        const double lower = n > 0 ? a[n - 1] * p[n - 1] : 0.0;
        p[n + 1] = (x * p[n] - lower) / a[n];
    }
    if (turn + 1 == count && turn > 0) return p;

    // minimal solution from above, rescaled to stay finite
    constexpr double kBig = 1e200;
    std::vector<double> y(top + 2, 0.0);
    y[top] = 1.0;
    for (std::size_t n = top; n >= 1; --n) {
        y[n - 1] = (x * y[n] - a[n] * y[n + 1]) / a[n - 1];
        if (std::abs(y[n - 1]) > kBig)
            for (std::size_t k = n - 1; k <= top; ++k) y[k] /= kBig;
    }
    const std::size_t lo = turn > 0 ? turn - 1 : 0;
    const double unit = std::max(std::abs(y[lo]), std::abs(y[turn]));
    if (unit == 0.0 || !std::isfinite(unit)) throw error(errc::non_convergent, "backward recurrence lost the lattice mode");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = lo; k <= turn; ++k) {
        num += p[k] * (y[k] / unit);
        den += (y[k] / unit) * (y[k] / unit);
    }
    const double scale = num / den / unit;
    for (std::size_t n = turn + 1; n < count; ++n) p[n] = scale * y[n];
    return p;
}

inline double lattice_mode(std::size_t n, const LatticePoint& pt, const DeformationContext& ctx) {
    return lattice_modes(pt, n + 1, ctx)[n];
}

/// (q^2 x^2; q^2)_inf at x = +-q^s, i.e. (q^{2s+2}; q^2)_inf.
inline double lattice_weight(const LatticePoint& pt, const DeformationContext& ctx) {
    const double q = ctx.q();
    const double x2q2 = pt.value() * pt.value() * q * q;
    return qpinf(x2q2, q * q, ctx.tail_tol());
}

/// 2 (q;q)_inf (-q;q)_inf^2, the level-independent part of the lattice measure.
inline double measure_normalizer(const DeformationContext& ctx) {
    const double q = ctx.q();
    const double eps = ctx.tail_tol();
    const double m = qpinf(-q, q, eps);
    return 2.0 * qpinf(q, q, eps) * m * m;
}

/// c_s = q^s (q^{2s+2};q^2)_inf / (2 (q;q)_inf (-q;q)_inf^2).
inline double norm_c(std::size_t s, const DeformationContext& ctx) {
    const double q = ctx.q();
    return LatticePoint(1, s, q).value() * lattice_weight(LatticePoint(1, s, q), ctx) / measure_normalizer(ctx);
}

/// c_0 ... c_{depth-1} from c_{s+1} = c_s q / (1 - q^{2s+2}); independent of `norm_c`.
inline std::vector<double> norm_c_table(std::size_t depth, const DeformationContext& ctx) {
    std::vector<double> c(depth);
    if (depth == 0) return c;
    const double q = ctx.q();
    c[0] = lattice_weight(LatticePoint(1, 0, q), ctx) / measure_normalizer(ctx);
    double q2s2 = q * q;  // q^{2s+2}
    for (std::size_t s = 0; s + 1 < depth; ++s) {
        c[s + 1] = c[s] * q / (1.0 - q2s2);
        q2s2 *= q * q;
    }
    return c;
}

/// Orthonormal mode value sqrt(c_s) p_n(+-q^s).
inline double normalized_hermite(std::size_t n, const LatticePoint& pt, const DeformationContext& ctx) {
    if (n >= ctx.fock_dim()) throw error(errc::index_out_of_range, "normalized_hermite degree must be below fock_dim");
    return std::sqrt(norm_c(pt.level(), ctx)) * lattice_mode(n, pt, ctx);
}

/// h_n at a lattice point, recovered from the stable lattice p_n.
inline double lattice_hermite(std::size_t n, const LatticePoint& pt, const DeformationContext& ctx) {
    const double q = ctx.q();
    const double nn = static_cast<double>(n);
    return lattice_mode(n, pt, ctx) * std::sqrt(qpoch(q, n, q)) * std::pow(q, nn * (nn - 1.0) / 4.0);
}

namespace detail {
// Both signs of one level share a weight; pairing them first lets odd products cancel exactly.
template <class Term>
double paired_lattice_sum(std::size_t depth, double q, Term&& term) {
    double sum = 0.0;
    for (std::size_t s = 0; s < depth; ++s) {
        const LatticePoint plus(1, s, q);
        const LatticePoint minus(-1, s, q);
        sum += term(plus, minus, s);
    }
    return sum;
}
}  // namespace detail

/**
 * |LHS - RHS| of the summed orthogonality relation
 *   sum_s (q^{2s+2};q^2)_inf q^s (h_k h_m (q^s) + h_k h_m (-q^s))
 *     = 2 delta_km (q;q)_inf (-q;q)_inf^2 (q;q)_m q^{m(m-1)/2},
 * truncated to the ctx lattice depth.
 */
inline double orthogonality_residual(std::size_t k, std::size_t m, const DeformationContext& ctx) {
    const double q = ctx.q();
    const double lhs = detail::paired_lattice_sum(ctx.lattice_depth(), q,
        [&](const LatticePoint& plus, const LatticePoint& minus, std::size_t) {
            const double w = lattice_weight(plus, ctx) * plus.value();
            return w * (lattice_hermite(k, plus, ctx) * lattice_hermite(m, plus, ctx) +
                        lattice_hermite(k, minus, ctx) * lattice_hermite(m, minus, ctx));
        });
    double rhs = 0.0;
    if (k == m) {
        const double mm = static_cast<double>(m);
        rhs = measure_normalizer(ctx) * qpoch(q, m, q) * std::pow(q, mm * (mm - 1.0) / 2.0);
    }
    return std::abs(lhs - rhs);
}

/// The same relation divided through by its right-hand normalization: |sum c_s p_k p_m - delta_km|.
inline double normalized_orthogonality_residual(std::size_t k, std::size_t m, const DeformationContext& ctx) {
    const double q = ctx.q();
    const std::size_t count = std::max(k, m) + 1;
    const auto c = norm_c_table(ctx.lattice_depth(), ctx);
    const double lhs = detail::paired_lattice_sum(ctx.lattice_depth(), q,
        [&](const LatticePoint& plus, const LatticePoint& minus, std::size_t s) {
            const auto pp = lattice_modes(plus, count, ctx);
            const auto pm = lattice_modes(minus, count, ctx);
            return c[s] * (pp[k] * pp[m] + pm[k] * pm[m]);
        });
    return std::abs(lhs - (k == m ? 1.0 : 0.0));
}

/// |sum_{n<N} h~_n(x) h~_n(x') - delta_{x,x'}|: row orthonormality of the mode matrix.
inline double dual_orthogonality_residual(const LatticePoint& x, const LatticePoint& xp, const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const auto px = lattice_modes(x, n, ctx);
    const auto pxp = lattice_modes(xp, n, ctx);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += px[k] * pxp[k];
    sum *= std::sqrt(norm_c(x.level(), ctx) * norm_c(xp.level(), ctx));
    return std::abs(sum - (x == xp ? 1.0 : 0.0));
}

/// Values of p_n (position) or g_n = i^n p_n (momentum) over the lattice window.
struct ModeTable {
    Kind kind = Kind::position;
    std::size_t degrees = 0;
    std::vector<LatticePoint> points;
    std::vector<cplx> values;  // row-major: degree n, then window column j

    [[nodiscard]] const cplx& value(std::size_t n, std::size_t j) const { return values[n * points.size() + j]; }
    cplx& value(std::size_t n, std::size_t j) { return values[n * points.size() + j]; }
};

/// i^n without trigonometric rounding.
inline cplx i_power(std::size_t n) noexcept {
    switch (n % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Degrees 0 ... degrees-1 over the ctx window; the default uses fock_dim.
inline ModeTable build_mode_table(Kind kind, const DeformationContext& ctx, std::size_t degrees) {
    ModeTable table;
    table.kind = kind;
    table.degrees = degrees;
    table.points = lattice_window(ctx);
    table.values.assign(table.degrees * table.points.size(), cplx{});
    detail::parallel_for(table.points.size(), [&](std::size_t j) {
        const auto p = lattice_modes(table.points[j], table.degrees, ctx);
        for (std::size_t n = 0; n < table.degrees; ++n)
            table.value(n, j) = kind == Kind::position ? cplx(p[n], 0.0) : i_power(n) * p[n];
    });
    return table;
}

inline ModeTable build_mode_table(Kind kind, const DeformationContext& ctx) {
    return build_mode_table(kind, ctx, ctx.fock_dim());
}

/// max over k, m <= k_max of `normalized_orthogonality_residual`, sharing one pass over the window.
inline double max_normalized_orthogonality_residual(std::size_t k_max, const DeformationContext& ctx) {
    const std::size_t count = k_max + 1;
    const std::size_t depth = ctx.lattice_depth();
    const auto c = norm_c_table(depth, ctx);
    std::vector<std::vector<double>> modes(2 * depth);
    const auto window = lattice_window(ctx);
    detail::parallel_for(window.size(), [&](std::size_t j) { modes[j] = lattice_modes(window[j], count, ctx); });
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k)
        for (std::size_t m = k; m < count; ++m) {
            double sum = 0.0;
            for (std::size_t s = 0; s < depth; ++s)
                sum += c[s] * (modes[2 * s][k] * modes[2 * s][m] + modes[2 * s + 1][k] * modes[2 * s + 1][m]);
            worst = std::max(worst, std::abs(sum - (k == m ? 1.0 : 0.0)));
        }
    return worst;
}

/// max of `dual_orthogonality_residual` over all window pairs with levels below `levels`.
inline double max_dual_orthogonality_residual(std::size_t levels, const DeformationContext& ctx) {
    const auto table = build_mode_table(Kind::position, ctx);
    const auto c = norm_c_table(ctx.lattice_depth(), ctx);
    const std::size_t m = std::min(2 * levels, table.points.size());
    std::vector<double> scaled(m * table.degrees);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = std::sqrt(c[table.points[j].level()]);
        for (std::size_t n = 0; n < table.degrees; ++n) scaled[j * table.degrees + n] = r * table.value(n, j).real();
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            double sum = 0.0;
            for (std::size_t n = 0; n < table.degrees; ++n) sum += scaled[a * table.degrees + n] * scaled[b * table.degrees + n];
            worst = std::max(worst, std::abs(sum - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace qosc

#endif  // QOSC_QHERMITE_HPP
