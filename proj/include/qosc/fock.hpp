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
 * @file fock.hpp
 * @brief Truncated Fock-basis matrices of the oscillator observables.
 *
 * Every generator is tridiagonal in the number basis e_0 ... e_{N-1}. The
 * truncation is a plain projection; identities that involve products of two
 * operators therefore fail in the last row and column and are checked on the
 * leading block only.
 */

#ifndef QOSC_FOCK_HPP
#define QOSC_FOCK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qosc/context.hpp"
#include "qosc/error.hpp"
#include "qosc/lattice.hpp"
#include "qosc/qcore.hpp"
#include "qosc/qhermite.hpp"

namespace qosc {

using DenseMatrix = Eigen::MatrixXcd;

/**
 * N x N tridiagonal matrix: real diagonal, complex couplings.
 *
 * upper[n] is T(n, n+1) and lower[n] is T(n+1, n). Hermitian instances are
 * only produced by `make_hermitian`, which derives `lower` from `upper`.
 */
struct TridiagonalOperator {
    std::string name;
    std::vector<double> diag;
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    bool hermitian = false;

    [[nodiscard]] std::size_t dim() const noexcept { return diag.size(); }

    [[nodiscard]] cplx operator()(std::size_t i, std::size_t j) const {
        if (i == j) return diag[i];
        if (j == i + 1) return upper[i];
        if (i == j + 1) return lower[j];
        return {};
    }

    [[nodiscard]] DenseMatrix dense() const {
        const auto n = static_cast<Eigen::Index>(dim());
        DenseMatrix m = DenseMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            m(i, i + 1) = upper[static_cast<std::size_t>(i)];
            m(i + 1, i) = lower[static_cast<std::size_t>(i)];
        }
        return m;
    }

    /// Matrix-vector product on Fock coefficients; the input length must equal dim().
    [[nodiscard]] std::vector<cplx> apply(std::span<const cplx> v) const {
        if (v.size() != dim()) throw error(errc::dimension_mismatch, "operator/vector size mismatch");
        const std::size_t n = dim();
        std::vector<cplx> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = diag[i] * v[i];
            if (i + 1 < n) acc += upper[i] * v[i + 1];
            if (i > 0) acc += lower[i - 1] * v[i - 1];
            out[i] = acc;
        }
        return out;
    }

    /// Largest |T(i,j)|; a cheap stand-in for the norm in residual scaling.
    [[nodiscard]] double max_abs_entry() const {
        double m = 0.0;
        for (double d : diag) m = std::max(m, std::abs(d));
        for (const auto& u : upper) m = std::max(m, std::abs(u));
        for (const auto& l : lower) m = std::max(m, std::abs(l));
        return m;
    }
};

inline TridiagonalOperator make_hermitian(std::string name, std::vector<double> diag, std::vector<cplx> upper) {
    if (diag.empty() || upper.size() + 1 != diag.size())
        throw error(errc::dimension_mismatch, "tridiagonal needs N diagonal and N-1 off-diagonal entries");
    TridiagonalOperator t;
    t.name = std::move(name);
    t.diag = std::move(diag);
    t.lower.resize(upper.size());
    std::transform(upper.begin(), upper.end(), t.lower.begin(), [](const cplx& u) { return std::conj(u); });
    t.upper = std::move(upper);
    t.hermitian = true;
    return t;
}

inline TridiagonalOperator make_general(std::string name, std::vector<double> diag, std::vector<cplx> upper,
                                        std::vector<cplx> lower) {
    if (diag.empty() || upper.size() + 1 != diag.size() || lower.size() != upper.size())
        throw error(errc::dimension_mismatch, "tridiagonal needs N diagonal and N-1 off-diagonal entries");
    return TridiagonalOperator{std::move(name), std::move(diag), std::move(upper), std::move(lower), false};
}

/// Q e_n = a_n e_{n+1} + a_{n-1} e_{n-1}.
inline TridiagonalOperator build_Q(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const auto a = jacobi_coefficients(n - 1, ctx.q());
    return make_hermitian("Q", std::vector<double>(n, 0.0), std::vector<cplx>(a.begin(), a.end()));
}

/// P e_n = i (a_n e_{n+1} - a_{n-1} e_{n-1}).
inline TridiagonalOperator build_P(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const auto a = jacobi_coefficients(n - 1, ctx.q());
    std::vector<cplx> upper(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) upper[k] = cplx(0.0, -a[k]);
    return make_hermitian("P", std::vector<double>(n, 0.0), std::move(upper));
}

/// H e_n = (n + 1/2) e_n.
inline TridiagonalOperator build_H(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<double>(k) + 0.5;
    return make_hermitian("H", std::move(d), std::vector<cplx>(n - 1));
}

/// F(H) e_n = 2 (1 - 1/q) (q^n - (1+q) q^{2n}) e_n, so that [Q,P] = i F(H).
inline TridiagonalOperator build_F_of_H(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const double q = ctx.q();
    std::vector<double> d(n);
    double qn = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        d[k] = 2.0 * (1.0 - 1.0 / q) * (qn - (1.0 + q) * qn * qn);
        qn *= q;
    }
    return make_hermitian("F(H)", std::move(d), std::vector<cplx>(n - 1));
}

/// I_0 e_n = n e_n.
inline TridiagonalOperator build_I0(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<double>(k);
    return make_hermitian("I0", std::move(d), std::vector<cplx>(n - 1));
}

namespace detail {
// sqrt(q^{m+1} [m+1]_q): the I_+ matrix element e_m -> e_{m+1}.
inline std::vector<double> ladder_elements(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const double q = ctx.q();
    std::vector<double> r(n - 1);
    double qm1 = q;  // q^{m+1}
    for (std::size_t m = 0; m + 1 < n; ++m) {
        r[m] = std::sqrt(qm1 * (1.0 - qm1) / (1.0 - q));
        qm1 *= q;
    }
    return r;
}
}  // namespace detail

/// I_1 = I_+ + I_-.
inline TridiagonalOperator build_I1(const DeformationContext& ctx) {
    const auto r = detail::ladder_elements(ctx);
    return make_hermitian("I1", std::vector<double>(ctx.fock_dim(), 0.0), std::vector<cplx>(r.begin(), r.end()));
}

/// I_2 = i (I_+ - I_-).
inline TridiagonalOperator build_I2(const DeformationContext& ctx) {
    const auto r = detail::ladder_elements(ctx);
    std::vector<cplx> upper(r.size());
    for (std::size_t m = 0; m < r.size(); ++m) upper[m] = cplx(0.0, -r[m]);
    return make_hermitian("I2", std::vector<double>(ctx.fock_dim(), 0.0), std::move(upper));
}

struct LadderPair {
    TridiagonalOperator lowering;  // a_q = I_-
    TridiagonalOperator raising;   // a_q^+ = I_+
};

/// a_q e_n = sqrt(q^n [n]_q) e_{n-1}, a_q^+ e_n = sqrt(q^{n+1} [n+1]_q) e_{n+1}.
inline LadderPair build_ladders(const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const auto r = detail::ladder_elements(ctx);
    std::vector<cplx> elems(r.begin(), r.end());
    std::vector<cplx> zeros(n - 1);
    return {make_general("a_q", std::vector<double>(n, 0.0), elems, zeros),
            make_general("a_q^+", std::vector<double>(n, 0.0), zeros, elems)};
}

inline DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw error(errc::dimension_mismatch, "commutator needs square matrices of equal size");
    return a * b - b * a;
}

/// [A, B] = AB - BA as a dense matrix (pentadiagonal for two tridiagonals).
inline DenseMatrix commutator(const TridiagonalOperator& a, const TridiagonalOperator& b) {
    if (a.dim() != b.dim()) throw error(errc::dimension_mismatch, "commutator operands differ in dimension");
    return commutator(a.dense(), b.dense());
}

/// max |M(i,j)| over the leading block x block corner.
inline double max_abs_leading(const DenseMatrix& m, std::size_t block) {
    const auto b = std::min<Eigen::Index>(static_cast<Eigen::Index>(block), std::min(m.rows(), m.cols()));
    if (b <= 0) return 0.0;
    return m.topLeftCorner(b, b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Eigensolver

struct Eigensystem {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column k belongs to values[k]
};

namespace detail {

/**
 * Implicit-shift QL on a real symmetric tridiagonal matrix.
 *
 * d holds the diagonal, e the subdiagonal in e[0..n-2]. On return d holds the
 * eigenvalues and z (initialised to the identity) the eigenvectors as columns.
 */
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, Eigen::MatrixXd& z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    const std::size_t max_iter = 30 * n + 60;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > max_iter) throw error(errc::no_convergence, "tridiagonal QL exceeded its iteration cap");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (Eigen::Index k = 0; k < z.rows(); ++k) {
                        f = z(k, static_cast<Eigen::Index>(i + 1));
                        z(k, static_cast<Eigen::Index>(i + 1)) = s * z(k, static_cast<Eigen::Index>(i)) + c * f;
                        z(k, static_cast<Eigen::Index>(i)) = c * z(k, static_cast<Eigen::Index>(i)) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/**
 * Eigenvalues (ascending) and orthonormal eigenvectors of a hermitian
 * tridiagonal operator.
 *
 * Complex couplings are first rotated away by a diagonal phase change of
 * basis d_{n+1} = d_n conj(u_n)/|u_n|, which for P is e~_n = i^n e_n; the
 * resulting real symmetric matrix goes through implicit-shift QL.
 */
inline Eigensystem eigendecompose(const TridiagonalOperator& t) {
    if (!t.hermitian) throw error(errc::not_hermitian, "eigendecompose requires a hermitian operator");
    const std::size_t n = t.dim();
    std::vector<cplx> phase(n, cplx(1.0, 0.0));
    std::vector<double> off(n > 0 ? n - 1 : 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(t.upper[k]);
        off[k] = mag;
        phase[k + 1] = mag > 0.0 ? phase[k] * std::conj(t.upper[k]) / mag : phase[k];
    }
    std::vector<double> d = t.diag;
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    detail::tridiagonal_ql(d, off, z);

    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    Eigensystem out;
    out.values.resize(n);
    out.vectors = DenseMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = d[order[k]];
        for (std::size_t r = 0; r < n; ++r)
            out.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
                phase[r] * z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(order[k]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectrum matching against the lattice +-q^s

struct SpectrumMatch {
    int sign;
    std::size_t level;
    double lambda;
    double error;
};

struct SpectrumReport {
    double q = 0.0;
    std::size_t dim = 0;
    std::vector<double> eigenvalues;  // sorted by descending |lambda|
    std::vector<SpectrumMatch> matched;
    std::vector<double> unmatched;
    long s_match = -1;  // largest level with both signs within match_tol; -1 if none
    double max_error = 0.0;

    [[nodiscard]] std::size_t unmatched_count() const noexcept { return unmatched.size(); }
};

/**
 * Greedy assignment of eigenvalues to lattice points: within each sign
 * bucket the k-th largest |lambda| pairs with level k. S_match is the last
 * level up to which every pair (both signs) is within ctx.match_tol.
 */
inline SpectrumReport spectrum_report(const TridiagonalOperator& t, const DeformationContext& ctx) {
    const auto eig = eigendecompose(t);
    const double q = ctx.q();

    SpectrumReport rep;
    rep.q = q;
    rep.dim = t.dim();
    rep.eigenvalues = eig.values;
    std::stable_sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                     [](double a, double b) { return std::abs(a) > std::abs(b); });

    std::vector<double> pos;
    std::vector<double> neg;
    for (double v : rep.eigenvalues) (v >= 0.0 ? pos : neg).push_back(v);

    std::vector<SpectrumMatch> candidates;
    const std::size_t levels = std::min(pos.size(), neg.size());
    for (std::size_t s = 0; s < levels; ++s) {
        const double target = LatticePoint(1, s, q).value();
        candidates.push_back({+1, s, pos[s], std::abs(pos[s] - target)});
        candidates.push_back({-1, s, neg[s], std::abs(neg[s] + target)});
    }

    std::size_t good = 0;
    while (good < levels && candidates[2 * good].error < ctx.match_tol() &&
           candidates[2 * good + 1].error < ctx.match_tol())
        ++good;
    rep.s_match = static_cast<long>(good) - 1;

    for (std::size_t k = 0; k < 2 * good; ++k) {
        rep.matched.push_back(candidates[k]);
        rep.max_error = std::max(rep.max_error, candidates[k].error);
    }
    for (std::size_t k = good; k < pos.size(); ++k) rep.unmatched.push_back(pos[k]);
    for (std::size_t k = good; k < neg.size(); ++k) rep.unmatched.push_back(neg[k]);
    std::stable_sort(rep.unmatched.begin(), rep.unmatched.end(),
                     [](double a, double b) { return std::abs(a) > std::abs(b); });
    return rep;
}

}  // namespace qosc

#endif  // QOSC_FOCK_HPP
