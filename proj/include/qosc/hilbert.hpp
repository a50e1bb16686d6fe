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
 * @file hilbert.hpp
 * @brief Position and momentum eigenfunctions and the lattice realizations.
 *
 * Eigenfunctions psi_x(y), phi_p(y) are evaluated in the auxiliary variable y
 * (open unit disk), either by their power series or by infinite products.
 * Fock coefficient vectors b_n map isometrically onto functions on the
 * lattice window, f(x) = sum_n b_n p_n(x) (position) or
 * f(p) = sum_n b_n conj(g_n(p)) = <e, phi_p> (momentum). Operators act on lattice functions through this mode
 * expansion; Q on position functions and P on momentum functions are plain
 * multiplication.
 */

#ifndef QOSC_HILBERT_HPP
#define QOSC_HILBERT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qosc/context.hpp"
#include "qosc/error.hpp"
#include "qosc/fock.hpp"
#include "qosc/lattice.hpp"
#include "qosc/qcore.hpp"
#include "qosc/qhermite.hpp"

namespace qosc {

// ---------------------------------------------------------------------------
// Wavefunctions in the auxiliary variable

enum class EvalMode { series, product };

struct WavefunctionQuery {
    LatticePoint point;
    cplx y;
    EvalMode mode = EvalMode::series;
};

namespace detail {

inline void require_open_disk(const cplx& y) {
    if (!(std::abs(y) < 1.0)) throw error(errc::domain_error, "wavefunction variable must satisfy |y| < 1");
}

// sum_n h_n(x) y^n / (q;q)_n, written as sum_n p_n(x) c_n y^n with lattice-stable p_n.
// Terms can peak near 1/(q;q)_inf before the |y|^n decay wins, so the length
// doubles until the last 16 terms are below tail_tol relative to the sum.
inline cplx eigen_series(const LatticePoint& pt, const cplx& y, const DeformationContext& ctx,
                         double* magnitude = nullptr) {
    const double r = std::abs(y);
    if (magnitude) *magnitude = 1.0;
    if (r == 0.0) return {1.0, 0.0};
    constexpr std::size_t kCap = 1u << 16;
    auto terms = static_cast<std::size_t>(std::ceil(std::log(ctx.tail_tol()) / std::log(r))) + 16;
    while (true) {
        const auto p = lattice_modes(pt, terms, ctx);
        const auto c = fock_coefficients(terms, ctx.q());
        cplx sum{};
        cplx yn(1.0, 0.0);
        double tail = 0.0;
        double abs_sum = 0.0;
        for (std::size_t n = 0; n < terms; ++n) {
            const cplx term = p[n] * c[n] * yn;
            sum += term;
            abs_sum += std::abs(term);
            if (n + 16 >= terms) tail = std::max(tail, std::abs(term));
            yn *= y;
        }
        if (tail <= ctx.tail_tol() * std::abs(sum)) {
            if (magnitude) *magnitude = abs_sum;
            return sum;
        }
        if (terms >= kCap) throw error(errc::non_convergent, "eigenfunction series did not settle");
        terms = std::min(2 * terms, kCap);
    }
}

}  // namespace detail

/**
 * psi_x(y) for x on the lattice.
 *
 * Series: sum_n h_n(x;q) y^n / (q;q)_n until |y|^n drops below tail_tol.
 * Product: (y^2;q^2)_inf / (xy;q)_inf.
 */
inline cplx psi_eval(const WavefunctionQuery& qry, const DeformationContext& ctx) {
    detail::require_open_disk(qry.y);
    if (qry.mode == EvalMode::series) return detail::eigen_series(qry.point, qry.y, ctx);
    const double q = ctx.q();
    const double eps = ctx.tail_tol();
    return qpinf(qry.y * qry.y, q * q, eps) / qpinf(qry.point.value() * qry.y, q, eps);
}

/**
 * phi_p(y) = sum_n (iy)^n h_n(p;q) / (q;q)_n.
 *
 * The product mode returns (-y^2;q^2)_inf / (iyp;q)_inf, which is the
 * position product at y -> iy; `phi_product_residuals` compares the
 * alternative numerators against the series.
 */
inline cplx phi_eval(const WavefunctionQuery& qry, const DeformationContext& ctx) {
    detail::require_open_disk(qry.y);
    const cplx iy = cplx(0.0, 1.0) * qry.y;
    if (qry.mode == EvalMode::series) return detail::eigen_series(qry.point, iy, ctx);
    const double q = ctx.q();
    const double eps = ctx.tail_tol();
    return qpinf(-qry.y * qry.y, q * q, eps) / qpinf(iy * qry.point.value(), q, eps);
}

/**
 * sum_n |term_n| of the psi (or phi) series. Where it exceeds |psi| by many
 * orders the series loses that many digits to cancellation.
 */
inline double series_magnitude(Kind kind, const WavefunctionQuery& qry, const DeformationContext& ctx) {
    detail::require_open_disk(qry.y);
    double m = 0.0;
    detail::eigen_series(qry.point, kind == Kind::position ? qry.y : cplx(0.0, 1.0) * qry.y, ctx, &m);
    return m;
}

struct PhiProductResiduals {
    cplx series;
    double minus_y2_q2;  // numerator (-y^2; q^2)_inf
    double y2_q2;        // numerator (y^2; q^2)_inf
    double y2_q;         // numerator (y^2; q)_inf
};

inline PhiProductResiduals phi_product_residuals(const WavefunctionQuery& qry, const DeformationContext& ctx) {
    detail::require_open_disk(qry.y);
    const double q = ctx.q();
    const double eps = ctx.tail_tol();
    const cplx y = qry.y;
    const cplx series = detail::eigen_series(qry.point, cplx(0.0, 1.0) * y, ctx);
    const cplx den = qpinf(cplx(0.0, 1.0) * y * qry.point.value(), q, eps);
    return {series,
            std::abs(series - qpinf(-y * y, q * q, eps) / den),
            std::abs(series - qpinf(y * y, q * q, eps) / den),
            std::abs(series - qpinf(y * y, q, eps) / den)};
}

/**
 * Fock coefficients of the normalized eigenfunction Psi_x (position) or
 * Phi_p (momentum) at a lattice point: sqrt(c_s) p_n or sqrt(c_s) i^n p_n.
 */
inline std::vector<cplx> normalized_eigenfunction(Kind kind, const LatticePoint& pt, std::size_t n_max,
                                                  const DeformationContext& ctx) {
    const auto p = lattice_modes(pt, n_max, ctx);
    const double scale = std::sqrt(norm_c(pt.level(), ctx));
    std::vector<cplx> b(n_max);
    for (std::size_t n = 0; n < n_max; ++n)
        b[n] = (kind == Kind::position ? cplx(1.0, 0.0) : i_power(n)) * (scale * p[n]);
    return b;
}

/// sum_n b_n conj(b'_n): the Fock scalar product written in the orthonormal e_n basis.
inline cplx fock_coefficient_inner(std::span<const cplx> b1, std::span<const cplx> b2) {
    const std::size_t n = std::min(b1.size(), b2.size());
    cplx s{};
    for (std::size_t k = 0; k < n; ++k) s += b1[k] * std::conj(b2[k]);
    return s;
}

/// Power-series coefficients a_n = b_n c_n of sum_n b_n e_n(y).
inline CoefficientVector to_power_series(std::span<const cplx> b, const DeformationContext& ctx) {
    const auto c = fock_coefficients(b.size(), ctx.q());
    CoefficientVector out(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) out[n] = b[n] * c[n];
    return out;
}

// ---------------------------------------------------------------------------
// Lattice functions

/**
 * A function on the 2S-point lattice window, position or momentum.
 *
 * `rescaled` marks functions that carry the factor sqrt((x^2 q^2;q^2)_inf);
 * those use `standard_inner`, the others `lattice_inner`.
 */
struct LatticeFunction {
    Kind kind = Kind::position;
    bool rescaled = false;
    double q = 0.0;
    std::vector<LatticePoint> points;
    std::vector<cplx> values;
    std::vector<bool> low_confidence;  // per point; empty when not assessed

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

inline LatticeFunction make_lattice_function(Kind kind, const DeformationContext& ctx) {
    LatticeFunction f;
    f.kind = kind;
    f.q = ctx.q();
    f.points = lattice_window(ctx);
    f.values.assign(f.points.size(), cplx{});
    return f;
}

namespace detail {

inline void require_window(const LatticeFunction& f, const DeformationContext& ctx) {
    if (f.q != ctx.q() || f.points.size() != 2 * ctx.lattice_depth() || f.values.size() != f.points.size())
        throw error(errc::dimension_mismatch, "lattice function does not live on the context window");
}

inline void require_pair(const LatticeFunction& a, const LatticeFunction& b) {
    if (a.kind != b.kind) throw error(errc::kind_mismatch, "scalar product of position and momentum functions");
    if (a.rescaled != b.rescaled) throw error(errc::kind_mismatch, "scalar product mixes rescaled and plain functions");
    if (a.values.size() != b.values.size()) throw error(errc::dimension_mismatch, "lattice functions of different windows");
}

// 1 / ((q^2;q^2)_inf (-1;q)_inf)
inline double lattice_prefactor(const DeformationContext& ctx) {
    const double q = ctx.q();
    const double eps = ctx.tail_tol();
    return 1.0 / (qpinf(q * q, q * q, eps) * qpinf(-1.0, q, eps));
}

}  // namespace detail

/**
 * Scalar product on L2 over the lattice window:
 *   1/((q^2;q^2)(-1;q)) sum_s (q^{2s+2};q^2)_inf q^s (f1 f2*(q^s) + f1 f2*(-q^s)).
 * Both signs of a level are combined before accumulation.
 */
inline cplx lattice_inner(const LatticeFunction& f1, const LatticeFunction& f2, const DeformationContext& ctx) {
    detail::require_pair(f1, f2);
    detail::require_window(f1, ctx);
    if (f1.rescaled) throw error(errc::kind_mismatch, "rescaled functions use standard_inner");
    cplx sum{};
    for (std::size_t s = 0; s < ctx.lattice_depth(); ++s) {
        const LatticePoint& plus = f1.points[2 * s];
        const double w = lattice_weight(plus, ctx) * plus.value();
        sum += w * (f1.values[2 * s] * std::conj(f2.values[2 * s]) +
                    f1.values[2 * s + 1] * std::conj(f2.values[2 * s + 1]));
    }
    return sum * detail::lattice_prefactor(ctx);
}

inline cplx position_inner(const LatticeFunction& f1, const LatticeFunction& f2, const DeformationContext& ctx) {
    if (f1.kind != Kind::position || f2.kind != Kind::position)
        throw error(errc::kind_mismatch, "position_inner needs position functions");
    return lattice_inner(f1, f2, ctx);
}

inline cplx momentum_inner(const LatticeFunction& f1, const LatticeFunction& f2, const DeformationContext& ctx) {
    if (f1.kind != Kind::momentum || f2.kind != Kind::momentum)
        throw error(errc::kind_mismatch, "momentum_inner needs momentum functions");
    return lattice_inner(f1, f2, ctx);
}

/**
 * f = sum_n b_n p_n (position) or sum_n b_n conj(g_n) (momentum) on the window;
 * b may be shorter than N.
 *
 * The momentum image of e_n is <e_n, phi_p> = conj(g_n(p)) = (-i)^n p_n(p)
 * because the Fock product conjugates its second slot. With that image P is
 * multiplication by p and acts on the basis as i a_n, -i a_{n-1}.
 */
inline LatticeFunction fock_to_lattice(Kind kind, std::span<const cplx> b, const DeformationContext& ctx) {
    if (b.size() > ctx.fock_dim()) throw error(errc::index_out_of_range, "coefficient vector longer than fock_dim");
    auto f = make_lattice_function(kind, ctx);
    detail::parallel_for(f.points.size(), [&](std::size_t j) {
        const auto p = lattice_modes(f.points[j], b.size(), ctx);
        cplx acc{};
        for (std::size_t n = 0; n < b.size(); ++n)
            acc += b[n] * (kind == Kind::position ? cplx(p[n], 0.0) : std::conj(i_power(n)) * p[n]);
        f.values[j] = acc;
    });
    return f;
}

inline LatticeFunction fock_to_position(std::span<const cplx> b, const DeformationContext& ctx) {
    return fock_to_lattice(Kind::position, b, ctx);
}

inline LatticeFunction fock_to_momentum(std::span<const cplx> b, const DeformationContext& ctx) {
    return fock_to_lattice(Kind::momentum, b, ctx);
}

struct ModeDecomposition {
    std::vector<cplx> coeffs;  // b_n, n < N
    double norm_squared = 0.0;
    double discarded_tail = 0.0;  // |norm^2 - sum |b_n|^2|
};

/// b_n = <f, mode_n> over the window, with the part of the norm not captured by n < N.
inline ModeDecomposition decompose(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_window(f, ctx);
    if (f.rescaled) throw error(errc::kind_mismatch, "decompose expects a function without the absorbed weight");
    const std::size_t n_modes = ctx.fock_dim();
    const auto table = build_mode_table(f.kind, ctx);
    const double pref = detail::lattice_prefactor(ctx);

    std::vector<double> weight(f.points.size());
    for (std::size_t j = 0; j < f.points.size(); ++j)
        weight[j] = pref * lattice_weight(f.points[j], ctx) * std::abs(f.points[j].value());

    ModeDecomposition out;
    out.coeffs.resize(n_modes);
    double captured = 0.0;
    for (std::size_t n = 0; n < n_modes; ++n) {
        cplx acc{};
        for (std::size_t s = 0; s < ctx.lattice_depth(); ++s) {
            const std::size_t jp = 2 * s;
            const std::size_t jm = 2 * s + 1;
            // momentum basis functions are conj(g_n), so their conjugates are the table entries
            const cplx bp = f.kind == Kind::position ? std::conj(table.value(n, jp)) : table.value(n, jp);
            const cplx bm = f.kind == Kind::position ? std::conj(table.value(n, jm)) : table.value(n, jm);
            acc += weight[jp] * (f.values[jp] * bp + f.values[jm] * bm);
        }
        out.coeffs[n] = acc;
        captured += std::norm(acc);
    }
    out.norm_squared = lattice_inner(f, f, ctx).real();
    out.discarded_tail = std::abs(out.norm_squared - captured);
    return out;
}

namespace detail {

inline LatticeFunction act_in_mode_space(const LatticeFunction& f, const TridiagonalOperator& op,
                                         const DeformationContext& ctx) {
    const auto dec = decompose(f, ctx);
    if (dec.discarded_tail >= ctx.match_tol() * std::max(1.0, dec.norm_squared))
        throw error(errc::truncation, "mode tail exceeds match_tol; raise fock_dim or lattice_depth");
    const auto moved = op.apply(dec.coeffs);
    return fock_to_lattice(f.kind, moved, ctx);
}

inline LatticeFunction multiply_by_coordinate(const LatticeFunction& f) {
    LatticeFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] *= out.points[j].value();
    return out;
}

inline void require_kind(const LatticeFunction& f, Kind k) {
    if (f.kind != k) throw error(errc::kind_mismatch, std::string("operation expects a ") + to_string(k) + " function");
}

}  // namespace detail

/// Q on L2(X): multiplication by x.
inline LatticeFunction apply_Q_position(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::position);
    detail::require_window(f, ctx);
    return detail::multiply_by_coordinate(f);
}

/// Q on L2(X) through its tridiagonal action on the p_n expansion; agrees with multiplication.
inline LatticeFunction apply_Q_position_modes(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::position);
    return detail::act_in_mode_space(f, build_Q(ctx), ctx);
}

/// P p_n = i a_n p_{n+1} - i a_{n-1} p_{n-1}, applied to the mode expansion of f.
inline LatticeFunction apply_P_position(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::position);
    return detail::act_in_mode_space(f, build_P(ctx), ctx);
}

/// H p_n = (n + 1/2) p_n.
inline LatticeFunction apply_H_position(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::position);
    return detail::act_in_mode_space(f, build_H(ctx), ctx);
}

/// P on L2(P): multiplication by p.
inline LatticeFunction apply_P_momentum(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::momentum);
    detail::require_window(f, ctx);
    return detail::multiply_by_coordinate(f);
}

inline LatticeFunction apply_P_momentum_modes(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::momentum);
    return detail::act_in_mode_space(f, build_P(ctx), ctx);
}

/// Q on the momentum basis: a_n and a_{n-1} couplings, as for p_n.
inline LatticeFunction apply_Q_momentum(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::momentum);
    return detail::act_in_mode_space(f, build_Q(ctx), ctx);
}

inline LatticeFunction apply_H_momentum(const LatticeFunction& f, const DeformationContext& ctx) {
    detail::require_kind(f, Kind::momentum);
    return detail::act_in_mode_space(f, build_H(ctx), ctx);
}

// ---------------------------------------------------------------------------
// q-difference form of P, used as an independent check on single modes

namespace detail {

// Monomial coefficients of p_0 ... p_n in x.
inline std::vector<std::vector<double>> mode_monomials(std::size_t n, const DeformationContext& ctx) {
    const auto a = jacobi_coefficients(n + 1, ctx.q());
    std::vector<std::vector<double>> p(n + 1);
    p[0] = {1.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> next(k + 2, 0.0);
        for (std::size_t j = 0; j <= k; ++j) next[j + 1] += p[k][j];
        if (k > 0)
            for (std::size_t j = 0; j < p[k - 1].size(); ++j) next[j] -= a[k - 1] * p[k - 1][j];
        for (auto& v : next) v /= a[k];
        p[k + 1] = std::move(next);
    }
    return p;
}

}  // namespace detail

/**
 * P p_n from P = -i(1-q) q^{H-1/2} (D_q + (q^2 W)^{-1} D_{1/q} W), W = (q^2x^2;q^2)_inf,
 * evaluated on the monomial coefficients of p_n.
 *
 * W(x/q)/W(x) = 1 - x^2 turns the second term into the polynomial
 * (p(x) - (1-x^2) p(x/q)) / ((1 - 1/q) x q^2). The bracket is expanded in
 * p_k and q^{H-1/2} applied as q^k per mode. Returns the mode coefficients of
 * P p_n (length n + 2). Monomial coefficients grow like q^{-k^2/4}, so keep n small.
 */
inline std::vector<cplx> p_difference_form_modes(std::size_t n, const DeformationContext& ctx) {
    const double q = ctx.q();
    const auto mono = detail::mode_monomials(n + 1, ctx);
    const auto& pn = mono[n];
    std::vector<double> bracket(n + 2, 0.0);
    double qk = q;
    for (std::size_t k = 1; k <= n; ++k) {
        bracket[k - 1] += pn[k] * (1.0 - qk) / (1.0 - q);
        qk *= q;
    }
    // numerator p(x) - (1 - x^2) p(x/q), whose constant term cancels
    std::vector<double> num(n + 3, 0.0);
    double qinv = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double scaled = pn[k] * qinv;
        num[k] += pn[k] - scaled;
        num[k + 2] += scaled;
        qinv /= q;
    }
    for (std::size_t k = 1; k < num.size(); ++k) bracket[k - 1] += num[k] / ((1.0 - 1.0 / q) * q * q);

    std::vector<cplx> modes(n + 2);
    for (std::size_t k = n + 2; k-- > 0;) {
        const double coeff = bracket[k] / mono[k][k];
        for (std::size_t j = 0; j <= k; ++j) bracket[j] -= coeff * mono[k][j];
        modes[k] = cplx(0.0, -(1.0 - q)) * (coeff * std::pow(q, static_cast<double>(k)));
    }
    return modes;
}

/// Lattice values of P p_n from the q-difference form.
inline LatticeFunction p_difference_form(std::size_t n, const DeformationContext& ctx) {
    const auto modes = p_difference_form_modes(n, ctx);
    return fock_to_position(modes, ctx);
}

}  // namespace qosc

#endif  // QOSC_HILBERT_HPP
