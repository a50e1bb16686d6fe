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
 * @file evolution.hpp
 * @brief Harmonic evolution on the position lattice and the fractional Fourier kernel.
 *
 * K^tau(x, x') = c(x') e^{i tau/2} sum_{n<N} p_n(x) p_n(x') e^{i n tau}
 *
 * The measure factor sits on the summed variable x', so applying the kernel
 * is a bare matrix-vector product. The rescaled kernel Phi acts on
 * F = sqrt(w) f and equals e^{i tau I_0} in mode space.
 *
 * Both the Fock truncation and the finite window are visible near the
 * window edge. Each row carries a defect estimate
 *   max(q^{S-s}, |1 - c_s sum_{n<N} p_n(x)^2|)
 * and rows above the confidence tolerance are flagged.
 */

#ifndef QOSC_EVOLUTION_HPP
#define QOSC_EVOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qosc/context.hpp"
#include "qosc/error.hpp"
#include "qosc/fock.hpp"
#include "qosc/hilbert.hpp"
#include "qosc/lattice.hpp"
#include "qosc/parallel.hpp"
#include "qosc/qhermite.hpp"

namespace qosc {

enum class KernelVariant { raw_K, rescaled_Phi };

inline const char* to_string(KernelVariant v) noexcept { return v == KernelVariant::raw_K ? "raw_K" : "rescaled_Phi"; }

/// Default per-row defect above which evolution output is flagged low-confidence.
inline constexpr double kDefaultConfidenceTol = 1e-10;

struct EvolutionKernel {
    double tau = 0.0;
    double q = 0.0;
    KernelVariant variant = KernelVariant::rescaled_Phi;
    std::size_t n_max = 0;
    std::vector<LatticePoint> points;
    DenseMatrix matrix;
    std::vector<double> row_defect;  // per window point

    /// Leading levels s whose two rows both have defect <= tol.
    [[nodiscard]] std::size_t confident_levels(double tol = kDefaultConfidenceTol) const {
        std::size_t s = 0;
        while (2 * s + 1 < row_defect.size() && row_defect[2 * s] <= tol && row_defect[2 * s + 1] <= tol) ++s;
        return s;
    }
};

/// tau reduced to [0, 2 pi).
inline double reduce_angle(double tau) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(tau, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

namespace detail {

inline EvolutionKernel assemble_kernel(double tau, KernelVariant variant, const DeformationContext& ctx) {
    const std::size_t n_modes = ctx.fock_dim();
    const std::size_t depth = ctx.lattice_depth();
    const double q = ctx.q();
    const auto table = build_mode_table(Kind::position, ctx);
    const auto c = norm_c_table(depth, ctx);
    const std::size_t m = table.points.size();

    EvolutionKernel k;
    k.tau = tau;
    k.q = q;
    k.variant = variant;
    k.n_max = n_modes;
    k.points = table.points;
    k.matrix = DenseMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    k.row_defect.assign(m, 0.0);

    const double reduced = reduce_angle(tau);
    std::vector<cplx> phase(n_modes);
    for (std::size_t n = 0; n < n_modes; ++n) phase[n] = std::polar(1.0, static_cast<double>(n) * reduced);

    std::vector<double> sqrt_w(m);
    for (std::size_t j = 0; j < m; ++j) sqrt_w[j] = std::sqrt(lattice_weight(k.points[j], ctx));

    const cplx global = variant == KernelVariant::raw_K ? std::polar(1.0, 0.5 * tau) : cplx(1.0, 0.0);

    const auto nn = static_cast<Eigen::Index>(n_modes);
    const auto mm = static_cast<Eigen::Index>(m);
    DenseMatrix modes(nn, mm);
    DenseMatrix phased(nn, mm);
    for (Eigen::Index j = 0; j < mm; ++j)
        for (Eigen::Index n = 0; n < nn; ++n) {
            const cplx v = table.value(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
            modes(n, j) = v;
            phased(n, j) = phase[static_cast<std::size_t>(n)] * v;
        }
    // sum_n p_n(x_i) e^{i n tau} p_n(x_j); the product has a fixed summation order per entry
    k.matrix.noalias() = modes.transpose() * phased;

    parallel_for(m, [&](std::size_t i) {
        double completeness = 0.0;
        for (std::size_t n = 0; n < n_modes; ++n) completeness += std::norm(table.value(n, i));
        const std::size_t s = k.points[i].level();
        const double window = std::pow(q, static_cast<double>(depth - s));
        k.row_defect[i] = std::max(window, std::abs(1.0 - c[s] * completeness));

        for (std::size_t j = 0; j < m; ++j) {
            double scale = c[k.points[j].level()];
            if (variant == KernelVariant::rescaled_Phi) scale *= sqrt_w[i] / sqrt_w[j];
            k.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= global * scale;
        }
    });
    return k;
}

}  // namespace detail

/// K^tau on the window, truncated at n < fock_dim. Acts on plain (unrescaled) position functions.
inline EvolutionKernel kernel_K(double tau, const DeformationContext& ctx) {
    return detail::assemble_kernel(tau, KernelVariant::raw_K, ctx);
}

/// Phi(x, x'; tau) = e^{-i tau/2} sqrt(w(x)/w(x')) K^tau(x, x'). Depends on tau only mod 2 pi.
inline EvolutionKernel fractional_ft(double tau, const DeformationContext& ctx) {
    return detail::assemble_kernel(tau, KernelVariant::rescaled_Phi, ctx);
}

/// F(x) = sqrt((x^2 q^2; q^2)_inf) f(x).
inline LatticeFunction rescale(const LatticeFunction& f, const DeformationContext& ctx) {
    if (f.rescaled) throw error(errc::already_rescaled, "function already carries the lattice weight");
    LatticeFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] *= std::sqrt(lattice_weight(out.points[j], ctx));
    out.rescaled = true;
    return out;
}

inline LatticeFunction unrescale(const LatticeFunction& f, const DeformationContext& ctx) {
    if (!f.rescaled) throw error(errc::not_rescaled, "function does not carry the lattice weight");
    LatticeFunction out = f;
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] /= std::sqrt(lattice_weight(out.points[j], ctx));
    out.rescaled = false;
    return out;
}

/// 1/((q^2;q^2)_inf (-1;q)_inf) sum_x |x| F1(x) F2(x)*, for rescaled functions.
inline cplx standard_inner(const LatticeFunction& f1, const LatticeFunction& f2, const DeformationContext& ctx) {
    if (!f1.rescaled || !f2.rescaled) throw error(errc::not_rescaled, "standard_inner needs rescaled functions");
    if (f1.kind != f2.kind) throw error(errc::kind_mismatch, "scalar product of position and momentum functions");
    if (f1.values.size() != f2.values.size()) throw error(errc::dimension_mismatch, "lattice functions of different windows");
    cplx sum{};
    for (std::size_t s = 0; 2 * s + 1 < f1.values.size(); ++s) {
        const double x = std::abs(f1.points[2 * s].value());
        sum += x * (f1.values[2 * s] * std::conj(f2.values[2 * s]) +
                    f1.values[2 * s + 1] * std::conj(f2.values[2 * s + 1]));
    }
    return sum * detail::lattice_prefactor(ctx);
}

/**
 * Applies a kernel to a position function on the same window.
 *
 * rescaled_Phi expects a rescaled function and raw_K a plain one. The
 * output carries low-confidence flags from the kernel row defects.
 */
inline LatticeFunction evolve(const EvolutionKernel& k, const LatticeFunction& f,
                              double confidence_tol = kDefaultConfidenceTol) {
    if (f.kind != Kind::position) throw error(errc::kind_mismatch, "evolution acts on position-lattice functions");
    if (k.variant == KernelVariant::rescaled_Phi && !f.rescaled)
        throw error(errc::not_rescaled, "the rescaled kernel acts on rescaled functions");
    if (k.variant == KernelVariant::raw_K && f.rescaled)
        throw error(errc::already_rescaled, "the raw kernel acts on functions without the lattice weight");
    if (f.values.size() != k.points.size() || f.q != k.q)
        throw error(errc::dimension_mismatch, "function and kernel live on different windows");

    const auto m = static_cast<Eigen::Index>(f.values.size());
    Eigen::VectorXcd v(m);
    for (Eigen::Index j = 0; j < m; ++j) v(j) = f.values[static_cast<std::size_t>(j)];
    const Eigen::VectorXcd out = k.matrix * v;

    LatticeFunction g = f;
    for (Eigen::Index j = 0; j < m; ++j) g.values[static_cast<std::size_t>(j)] = out(j);
    g.low_confidence.assign(g.values.size(), false);
    for (std::size_t j = 0; j < g.values.size(); ++j) g.low_confidence[j] = k.row_defect[j] > confidence_tol;
    return g;
}

/// Convenience: Phi(tau) applied to F.
inline LatticeFunction evolve(const LatticeFunction& f, double tau, const DeformationContext& ctx) {
    return evolve(fractional_ft(tau, ctx), f);
}

/**
 * max |e^{i tau H} Q e^{-i tau H} - (cos tau Q + sin tau P)| over the leading
 * (N-2) x (N-2) block, with e^{i tau H} = diag(e^{i tau (n + 1/2)}).
 */
inline double heisenberg_rotation_check(double tau, const DeformationContext& ctx) {
    const std::size_t n = ctx.fock_dim();
    const DenseMatrix Q = build_Q(ctx).dense();
    const DenseMatrix P = build_P(ctx).dense();
    Eigen::VectorXcd u(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) u(static_cast<Eigen::Index>(k)) = std::polar(1.0, tau * (static_cast<double>(k) + 0.5));
    const DenseMatrix rotated = u.asDiagonal() * Q * u.conjugate().asDiagonal();
    const DenseMatrix expected = std::cos(tau) * Q + std::sin(tau) * P;
    return max_abs_leading(rotated - expected, n >= 2 ? n - 2 : 0);
}

/**
 * max |(Phi^dagger M Phi - M)(j, k)| over the columns of the first `levels`
 * levels, M = diag(|x|) times the standard-inner prefactor.
 */
inline double unitarity_defect(const EvolutionKernel& k, std::size_t levels, const DeformationContext& ctx) {
    const auto m = static_cast<Eigen::Index>(k.points.size());
    Eigen::VectorXd weight(m);
    const double pref = detail::lattice_prefactor(ctx);
    for (Eigen::Index j = 0; j < m; ++j) weight(j) = pref * std::abs(k.points[static_cast<std::size_t>(j)].value());
    const DenseMatrix gram = k.matrix.adjoint() * weight.asDiagonal() * k.matrix;
    const auto block = static_cast<Eigen::Index>(std::min<std::size_t>(2 * levels, k.points.size()));
    double worst = 0.0;
    for (Eigen::Index a = 0; a < block; ++a)
        for (Eigen::Index b = 0; b < block; ++b) {
            const cplx target = a == b ? cplx(weight(a), 0.0) : cplx{};
            worst = std::max(worst, std::abs(gram(a, b) - target) / std::max(weight(a), weight(b)));
        }
    return worst;
}

/// Rescaled image of e_n on the window, sqrt(w) p_n; the momentum image is transplanted onto position.
inline LatticeFunction rescaled_mode(std::size_t n, Kind kind, const DeformationContext& ctx) {
    std::vector<cplx> b(n + 1);
    b[n] = 1.0;
    auto f = fock_to_lattice(kind, b, ctx);
    f.kind = Kind::position;
    return rescale(f, ctx);
}

}  // namespace qosc

#endif  // QOSC_EVOLUTION_HPP
