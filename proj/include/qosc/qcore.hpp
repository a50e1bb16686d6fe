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
 * @file qcore.hpp
 * @brief q-arithmetic primitives.
 *
 * Box q-numbers, finite and infinite q-Pochhammer symbols, and the scale and
 * q-difference operators acting on power series in the auxiliary variable y,
 * stored as coefficient vectors. The Fock monomials e_n(y) = c_n y^n and the
 * coefficient form of their scalar product also live here.
 */

#ifndef QOSC_QCORE_HPP
#define QOSC_QCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "qosc/context.hpp"
#include "qosc/error.hpp"

namespace qosc {

using cplx = std::complex<double>;

namespace detail {
template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
}  // namespace detail

/// [a]_q = (1 - q^a) / (1 - q).
inline double q_number(double a, const DeformationContext& ctx) {
    const double q = ctx.q();
    return (1.0 - std::pow(q, a)) / (1.0 - q);
}

/// Finite q-Pochhammer symbol (a;q)_n = prod_{k<n} (1 - a q^k); (a;q)_0 = 1.
template <class Scalar>
Scalar qpoch(Scalar a, std::size_t n, double q) {
    Scalar result(1);
    double qk = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        result *= Scalar(1) - a * qk;
        qk *= q;
    }
    return result;
}

template <class Scalar>
Scalar qpoch(Scalar a, std::size_t n, const DeformationContext& ctx) {
    return qpoch(a, n, ctx.q());
}

template <class Scalar>
struct InfiniteProduct {
    Scalar value;
    std::size_t terms_used;  // number of factors multiplied in
};

/**
 * Infinite q-Pochhammer symbol (a;q)_inf.
 *
 * Stops at the first k with |a q^k| < eps (1 - q) / 2, which bounds the
 * relative size of the dropped tail by eps / 2 for any q.
 *
 * Arguments with |a| > 1, or real a >= 1, produce non-positive or growing
 * factors and are rejected unless `allow_large` is set.
 */
template <class Scalar>
InfiniteProduct<Scalar> qpoch_inf(Scalar a, double q, double eps, bool allow_large = false) {
    constexpr std::size_t hard_cap = 1'000'000;
    if (!allow_large) {
        bool bad = std::abs(a) > 1.0;
        if constexpr (!detail::is_complex<Scalar>::value) bad = bad || a >= Scalar(1);
        if (bad) throw error(errc::domain_error, "qpoch_inf argument outside |a| <= 1 (pass allow_large to override)");
    }
    const double stop = eps * (1.0 - q) / 2.0;
    Scalar result(1);
    double qk = 1.0;
    std::size_t k = 0;
    for (; k < hard_cap; ++k) {
        const Scalar factor = a * qk;
        if (std::abs(factor) < stop) return {result, k};
        result *= Scalar(1) - factor;
        qk *= q;
    }
    throw error(errc::non_convergent, "qpoch_inf did not reach the tail tolerance within 1e6 factors");
}

template <class Scalar>
InfiniteProduct<Scalar> qpoch_inf(Scalar a, const DeformationContext& ctx, bool allow_large = false) {
    return qpoch_inf(a, ctx.q(), ctx.tail_tol(), allow_large);
}

/// Value-only shorthand used throughout the library.
template <class Scalar>
Scalar qpinf(Scalar a, double q, double eps) {
    return qpoch_inf(a, q, eps).value;
}

/// Power series sum_n a_n y^n truncated to finitely many coefficients.
struct CoefficientVector {
    std::vector<cplx> coeffs;

    CoefficientVector() = default;
    explicit CoefficientVector(std::size_t n) : coeffs(n) {}
    explicit CoefficientVector(std::vector<cplx> c) : coeffs(std::move(c)) {}
    CoefficientVector(std::initializer_list<cplx> c) : coeffs(c) {}

    [[nodiscard]] std::size_t size() const noexcept { return coeffs.size(); }
    cplx& operator[](std::size_t n) { return coeffs[n]; }
    const cplx& operator[](std::size_t n) const { return coeffs[n]; }

    /// Coefficient n, reading zero past the stored length.
    [[nodiscard]] cplx at_or_zero(std::size_t n) const { return n < coeffs.size() ? coeffs[n] : cplx{}; }
};

/// (T_a f)(y) = f(a y): coefficient n is multiplied by a^n.
inline CoefficientVector scale_op(const CoefficientVector& f, double a) {
    CoefficientVector out(f.size());
    double an = 1.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        out[n] = f[n] * an;
        an *= a;
    }
    return out;
}

/// q-derivative (f(y) - f(qy)) / ((1 - q) y); on monomials D_q y^n = [n]_q y^(n-1).
inline CoefficientVector q_diff(const CoefficientVector& f, const DeformationContext& ctx) {
    if (f.size() <= 1) return CoefficientVector(f.size());
    const double q = ctx.q();
    CoefficientVector out(f.size() - 1);
    double qn = q;  // q^n for n = 1
    for (std::size_t n = 1; n < f.size(); ++n) {
        out[n - 1] = f[n] * ((1.0 - qn) / (1.0 - q));
        qn *= q;
    }
    return out;
}

/// Multiplication by y.
inline CoefficientVector shift_up(const CoefficientVector& f) {
    CoefficientVector out(f.size() + 1);
    for (std::size_t n = 0; n < f.size(); ++n) out[n + 1] = f[n];
    return out;
}

/**
 * Normalization constants c_n = q^{n(n-1)/4} / (q;q)_n^{1/2} for n < count,
 * via c_{n+1} = c_n q^{n/2} / (1 - q^{n+1})^{1/2}.
 */
inline std::vector<double> fock_coefficients(std::size_t count, double q) {
    std::vector<double> c(count);
    if (count == 0) return c;
    c[0] = 1.0;
    double qn = 1.0;  // q^n
    for (std::size_t n = 0; n + 1 < count; ++n) {
        c[n + 1] = c[n] * std::sqrt(qn) / std::sqrt(1.0 - qn * q);
        qn *= q;
    }
    return c;
}

/// c_n straight from the closed form; the cross-check for `fock_coefficients`.
inline double fock_coefficient_direct(std::size_t n, double q) {
    const double nn = static_cast<double>(n);
    return std::pow(q, nn * (nn - 1.0) / 4.0) / std::sqrt(qpoch(q, n, q));
}

/// e_n(y) = c_n y^n as a coefficient vector of length n + 1.
inline CoefficientVector fock_monomial(std::size_t n, const DeformationContext& ctx) {
    if (n >= ctx.fock_dim()) throw error(errc::index_out_of_range, "fock_monomial degree must be below fock_dim");
    CoefficientVector out(n + 1);
    out[n] = fock_coefficients(n + 1, ctx.q())[n];
    return out;
}

/// <f1, f2> = sum_n a_n conj(a'_n) / c_n^2; conjugate-linear in the second slot.
inline cplx fock_inner(const CoefficientVector& f1, const CoefficientVector& f2, const DeformationContext& ctx) {
    if (f1.size() > ctx.fock_dim() || f2.size() > ctx.fock_dim())
        throw error(errc::index_out_of_range, "fock_inner operand longer than fock_dim");
    const std::size_t n = std::min(f1.size(), f2.size());
    const auto c = fock_coefficients(n, ctx.q());
    cplx sum{};
    for (std::size_t k = 0; k < n; ++k) sum += f1[k] * std::conj(f2[k]) / (c[k] * c[k]);
    return sum;
}

// Realization of the algebra generators on power series in y.

/// I_- = [q(1-q)]^{1/2} D_q.
inline CoefficientVector lowering_op(const CoefficientVector& f, const DeformationContext& ctx) {
    const double q = ctx.q();
    auto out = q_diff(f, ctx);
    const double k = std::sqrt(q * (1.0 - q));
    for (auto& a : out.coeffs) a *= k;
    return out;
}

/// I_+ = (q/(1-q))^{1/2} y T_q.
inline CoefficientVector raising_op(const CoefficientVector& f, const DeformationContext& ctx) {
    const double q = ctx.q();
    auto out = shift_up(scale_op(f, q));
    const double k = std::sqrt(q / (1.0 - q));
    for (auto& a : out.coeffs) a *= k;
    return out;
}

/// q^{I_0} = T_q.
inline CoefficientVector weight_op(const CoefficientVector& f, const DeformationContext& ctx) {
    return scale_op(f, ctx.q());
}

}  // namespace qosc

#endif  // QOSC_QCORE_HPP
