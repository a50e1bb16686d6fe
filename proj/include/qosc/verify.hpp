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
 * @file verify.hpp
 * @brief The numerical identity suite behind `qosc verify`.
 *
 * Each check computes one residual and compares it with a pinned tolerance.
 * Window and truncation sizes are chosen per q so that the lattice tail
 * q^{S-s} is below the tolerance on the levels being compared.
 */

#ifndef QOSC_VERIFY_HPP
#define QOSC_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "qosc/context.hpp"
#include "qosc/evolution.hpp"
#include "qosc/fock.hpp"
#include "qosc/hilbert.hpp"
#include "qosc/io.hpp"
#include "qosc/qcore.hpp"
#include "qosc/qhermite.hpp"

namespace qosc {

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    double runtime = 0.0;  // seconds
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    double runtime = 0.0;

    [[nodiscard]] bool overall() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
};

struct VerifyOptions {
    std::int64_t seed = 0;
    std::vector<double> qs{0.3, 0.5, 0.8, 0.95};
    bool corrupt_jacobi = false;  // negative control: perturbs one Q coupling before the commutator checks
};

/// Sizes used for one q.
struct VerifyProfile {
    std::size_t spectrum_dim, spectrum_levels;
    double spectrum_tol;
    std::size_t orth_depth;
    double orth_tol;
    std::size_t dual_depth, dual_dim;
    std::size_t evo_depth, evo_dim;
    double confidence_tol, evo_tol, identity_tol;
};

inline VerifyProfile verify_profile(double q) {
    if (q <= 0.3) return {40, 6, 1e-10, 40, 1e-9, 40, 80, 40, 80, 1e-10, 1e-8, 1e-10};
    if (q <= 0.5) return {60, 8, 1e-10, 40, 1e-9, 40, 160, 64, 160, 1e-10, 1e-8, 1e-10};
    if (q <= 0.8) return {120, 12, 1e-8, 80, 1e-7, 80, 240, 160, 400, 1e-10, 1e-8, 1e-10};
    return {400, 12, 1e-8, 480, 1e-7, 60, 400, 380, 800, 1e-8, 1e-7, 1e-10};
}

namespace detail {

inline std::string q_tag(double q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "[q=%g]", q);
    return buf;
}

class CheckRunner {
public:
    explicit CheckRunner(VerifyReport& rep) : rep_(rep) {}

    void run(const std::string& name, double tol, const std::function<double()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.residual = fn();
            r.passed = std::isfinite(r.residual) && r.residual < tol;
        } catch (const std::exception&) {
            r.residual = std::numeric_limits<double>::infinity();
            r.passed = false;
        }
        r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep_.checks.push_back(r);
    }

private:
    VerifyReport& rep_;
};

inline double leading_block_residual(const DenseMatrix& m, std::size_t n) { return max_abs_leading(m, n >= 2 ? n - 2 : 0); }

/// sqrt(<D, D>) over the first `levels` levels, D = a - b, in the standard (rescaled) product.
inline double confident_distance(const LatticeFunction& a, const LatticeFunction& b, std::size_t levels,
                                 const DeformationContext& ctx) {
    double sum = 0.0;
    for (std::size_t j = 0; j < std::min(2 * levels, a.values.size()); ++j)
        sum += std::abs(a.points[j].value()) * std::norm(a.values[j] - b.values[j]);
    return std::sqrt(sum * lattice_prefactor(ctx));
}

}  // namespace detail

/// Commutator identities on the leading (N-2) x (N-2) block; returns max of the three.
inline double commutator_residuals(const DeformationContext& ctx, bool corrupt, double out[3]) {
    TridiagonalOperator Q = build_Q(ctx);
    if (corrupt) {
        Q.upper[2] *= 1.001;
        Q.lower[2] *= 1.001;
    }
    const DenseMatrix q = Q.dense();
    const DenseMatrix p = build_P(ctx).dense();
    const DenseMatrix h = build_H(ctx).dense();
    const DenseMatrix f = build_F_of_H(ctx).dense();
    const cplx i(0.0, 1.0);
    const std::size_t n = ctx.fock_dim();
    out[0] = detail::leading_block_residual(commutator(h, q) + i * p, n);
    out[1] = detail::leading_block_residual(commutator(h, p) - i * q, n);
    out[2] = detail::leading_block_residual(commutator(q, p) - i * f, n);
    return std::max({out[0], out[1], out[2]});
}

/// max_n<=n_max |[a_q, a_q^+]_{nn} - ((1+q) q^{2n} - q^n)| from the ladder matrices.
inline double ladder_commutator_residual(const DeformationContext& ctx, std::size_t n_max) {
    const auto lad = build_ladders(ctx);
    const DenseMatrix c = commutator(lad.lowering.dense(), lad.raising.dense());
    const double q = ctx.q();
    double worst = 0.0;
    for (std::size_t n = 0; n <= n_max && n + 1 < ctx.fock_dim(); ++n) {
        const double qn = std::pow(q, static_cast<double>(n));
        worst = std::max(worst, std::abs(c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                                         ((1.0 + q) * qn * qn - qn)));
    }
    return worst;
}

/// Largest |[a_q, a_q^+]_{nn} - 1| for n <= n_max.
inline double ladder_limit_distance(double q, std::size_t n_max) {
    const DeformationContext ctx(q, n_max + 2, 8);
    const auto lad = build_ladders(ctx);
    const DenseMatrix c = commutator(lad.lowering.dense(), lad.raising.dense());
    double worst = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n)
        worst = std::max(worst, std::abs(c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) - 1.0));
    return worst;
}

/// max over s <= s_max of the eigenvalue error against +-q^s.
inline double spectrum_error(const DeformationContext& ctx, std::size_t s_max) {
    const auto rep = spectrum_report(build_Q(ctx), ctx);
    double worst = 0.0;
    std::size_t found = 0;
    for (const auto& m : rep.matched)
        if (m.level <= s_max) {
            worst = std::max(worst, m.error);
            ++found;
        }
    if (found != 2 * (s_max + 1)) return std::numeric_limits<double>::infinity();
    return worst;
}

/**
 * Series/product mismatch of psi (or phi) over s <= 8 and |y| in {0.1, ..., 0.9}
 * along the real and imaginary axes. Relative to |product|, or with
 * `conditioned` relative to sum |term_n|, the scale the series can resolve.
 */
inline double closed_form_residual(Kind kind, const DeformationContext& ctx, bool conditioned = false) {
    double worst = 0.0;
    for (std::size_t s = 0; s <= 8; ++s)
        for (int sign : {1, -1})
            for (int k = 1; k <= 9; ++k)
                for (const cplx dir : {cplx(1.0, 0.0), cplx(-1.0, 0.0), cplx(0.0, 1.0)}) {
                    WavefunctionQuery qry{LatticePoint(sign, s, ctx.q()), 0.1 * k * dir, EvalMode::series};
                    const cplx series = kind == Kind::position ? psi_eval(qry, ctx) : phi_eval(qry, ctx);
                    const double scale = conditioned ? series_magnitude(kind, qry, ctx) : 0.0;
                    qry.mode = EvalMode::product;
                    const cplx product = kind == Kind::position ? psi_eval(qry, ctx) : phi_eval(qry, ctx);
                    worst = std::max(worst, std::abs(series - product) / std::max({std::abs(product), scale, 1e-300}));
                }
    return worst;
}

/// p_n from the forward recurrence against the normalized q-Hermite route, n <= 25.
/// The points stay off [-1, 1]: near +-q^s both forward recurrences lose the minimal solution.
inline double hermite_mode_relation_residual(const DeformationContext& ctx) {
    double worst = 0.0;
    for (double x : {-1.7, -1.2, 0.0, 1.05, 1.3, 2.0})
        for (std::size_t n = 0; n <= 25; ++n) {
            const double a = mode_poly(n, x, ctx);
            const double b = mode_poly_via_hermite(n, x, ctx);
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
    return worst;
}

/// Mode coefficients of P p_n from the q-difference form against the Jacobi action, n <= 6.
inline double p_difference_residual(const DeformationContext& ctx) {
    const auto a = jacobi_coefficients(8, ctx.q());
    double worst = 0.0;
    for (std::size_t n = 0; n <= 6; ++n) {
        const auto modes = p_difference_form_modes(n, ctx);
        for (std::size_t k = 0; k < modes.size(); ++k) {
            cplx want{};
            if (k == n + 1) want = cplx(0.0, a[n]);
            if (n > 0 && k + 1 == n) want = cplx(0.0, -a[n - 1]);
            worst = std::max(worst, std::abs(modes[k] - want));
        }
    }
    return worst;
}

/// max over `trials` seeded unit vectors b (support n < support) of |<Omega b, Omega b> - |b|^2|.
inline double isometry_residual(const DeformationContext& ctx, std::size_t support, std::size_t trials,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto table = build_mode_table(Kind::position, ctx);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<cplx> b(support);
        double norm2 = 0.0;
        for (auto& v : b) {
            v = cplx(normal(rng), normal(rng));
            norm2 += std::norm(v);
        }
        for (auto& v : b) v /= std::sqrt(norm2);
        auto f = make_lattice_function(Kind::position, ctx);
        for (std::size_t j = 0; j < f.points.size(); ++j) {
            cplx acc{};
            for (std::size_t n = 0; n < support; ++n) acc += b[n] * table.value(n, j);
            f.values[j] = acc;
        }
        worst = std::max(worst, std::abs(position_inner(f, f, ctx).real() - 1.0));
    }
    return worst;
}

/// Relative norm change of seeded random rescaled functions under Phi(tau), tau in {0.3, 1.0, pi/2}.
inline double norm_drift(const DeformationContext& ctx, std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<EvolutionKernel> kernels;
    for (double tau : {0.3, 1.0, std::numbers::pi / 2}) kernels.push_back(fractional_ft(tau, ctx));
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto f = make_lattice_function(Kind::position, ctx);
        f.rescaled = true;
        for (auto& v : f.values) v = cplx(normal(rng), normal(rng));
        const double before = standard_inner(f, f, ctx).real();
        for (const auto& k : kernels) {
            const double after = standard_inner(evolve(k, f), evolve(k, f), ctx).real();
            worst = std::max(worst, std::abs(after - before) / before);
        }
    }
    return worst;
}

struct EvolutionResiduals {
    double identity = 0.0;
    double group_law = 0.0;
    double periodicity = 0.0;
    double quarter_turn = 0.0;
    double unitarity = 0.0;
    std::size_t levels = 0;
};

/**
 * Kernel identities on the leading confident levels: Phi(0) = I, group law over
 * {0.3, 1.0, pi/2}^2, Phi(tau + 2pi) = Phi(tau), Phi(pi/2) sqrt(w) p_n = i^n sqrt(w) p_n
 * for n <= 20 (distance in the standard product), and the Gram defect.
 */
inline EvolutionResiduals evolution_residuals(const DeformationContext& ctx, double confidence_tol) {
    EvolutionResiduals r;
    const double taus[3] = {0.3, 1.0, std::numbers::pi / 2};
    std::vector<EvolutionKernel> k;
    for (double t : taus) k.push_back(fractional_ft(t, ctx));
    const auto k0 = fractional_ft(0.0, ctx);
    r.levels = k0.confident_levels(confidence_tol);
    const auto rows = static_cast<Eigen::Index>(2 * r.levels);
    if (rows == 0) {
        r.identity = r.group_law = r.periodicity = r.quarter_turn = r.unitarity = std::numeric_limits<double>::infinity();
        return r;
    }
    const auto m = k0.matrix.rows();
    r.identity = (k0.matrix - DenseMatrix::Identity(m, m)).topRows(rows).cwiseAbs().maxCoeff();
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a; b < 3; ++b) {
            const auto sum = fractional_ft(taus[a] + taus[b], ctx);
            const DenseMatrix d = (k[a].matrix * k[b].matrix - sum.matrix).topRows(rows);
            r.group_law = std::max(r.group_law, d.cwiseAbs().maxCoeff());
        }
    const auto shifted = fractional_ft(1.0 + 2.0 * std::numbers::pi, ctx);
    r.periodicity = (shifted.matrix - k[1].matrix).cwiseAbs().maxCoeff();
    const std::size_t top = std::min<std::size_t>(20, ctx.fock_dim() - 1);
    for (std::size_t n = 0; n <= top; ++n) {
        const auto f = rescaled_mode(n, Kind::position, ctx);
        const auto g = evolve(k[2], f);
        auto expect = f;
        for (auto& v : expect.values) v *= i_power(n);
        r.quarter_turn = std::max(r.quarter_turn, detail::confident_distance(g, expect, r.levels, ctx));
    }
    r.unitarity = unitarity_defect(k[2], r.levels, ctx);
    return r;
}

/// Runs every check for every q in `opt.qs` plus the q -> 1 ladder limits.
inline VerifyReport run_verify(const VerifyOptions& opt) {
    VerifyReport rep;
    const auto t0 = std::chrono::steady_clock::now();
    detail::CheckRunner run(rep);
    const auto seed = static_cast<std::uint64_t>(opt.seed);

    for (const double q : opt.qs) {
        const auto prof = verify_profile(q);
        const std::string tag = detail::q_tag(q);
        const DeformationContext base(q, 64, 32);

        double comm[3] = {0, 0, 0};
        std::function<double()> comm_all = [&] { return commutator_residuals(base, opt.corrupt_jacobi, comm); };
        run.run("commutator_HQ_plus_iP" + tag, 1e-12, [&] { comm_all(); return comm[0]; });
        run.run("commutator_HP_minus_iQ" + tag, 1e-12, [&] { return comm[1]; });
        run.run("commutator_QP_minus_iF" + tag, 1e-12, [&] { return comm[2]; });
        run.run("ladder_commutator_diagonal" + tag, 1e-12, [&] { return ladder_commutator_residual(base, 30); });
        run.run("heisenberg_rotation" + tag, 1e-12, [&] {
            double w = 0.0;
            for (double t : {std::numbers::pi / 6, std::numbers::pi / 2, std::numbers::pi})
                w = std::max(w, heisenberg_rotation_check(t, base));
            return w;
        });
        run.run("eigensolver_vs_dense" + tag, 1e-12, [&] {
            const auto Q = build_Q(base);
            const auto mine = eigendecompose(Q);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(Q.dense().real());
            double w = 0.0;
            for (Eigen::Index k = 0; k < ref.eigenvalues().size(); ++k)
                w = std::max(w, std::abs(ref.eigenvalues()(k) - mine.values[static_cast<std::size_t>(k)]));
            return w;
        });
        run.run("spectrum_lattice_points" + tag, prof.spectrum_tol, [&] {
            return spectrum_error(DeformationContext(q, prof.spectrum_dim, 32), prof.spectrum_levels);
        });
        run.run("orthogonality_k_m_le_10" + tag, prof.orth_tol, [&] {
            return max_normalized_orthogonality_residual(10, DeformationContext(q, 64, prof.orth_depth));
        });
        run.run("dual_orthogonality" + tag, 1e-8, [&] {
            return max_dual_orthogonality_residual(prof.dual_depth - 3,
                                                   DeformationContext(q, prof.dual_dim, prof.dual_depth));
        });
        const bool conditioned = q > 0.8;
        run.run("psi_series_vs_product" + tag, 1e-10, [&] { return closed_form_residual(Kind::position, base, conditioned); });
        run.run("phi_series_vs_product" + tag, 1e-10, [&] { return closed_form_residual(Kind::momentum, base, conditioned); });
        run.run("mode_poly_vs_hermite" + tag, 1e-10, [&] { return hermite_mode_relation_residual(base); });
        run.run("P_difference_form" + tag, 1e-9, [&] { return p_difference_residual(base); });
        run.run("q_pochhammer_minus_one" + tag, 1e-13, [&] {
            return std::abs(qpinf(-1.0, q, 1e-15) - 2.0 * qpinf(-q, q, 1e-15)) / qpinf(-1.0, q, 1e-15);
        });

        const DeformationContext evo(q, prof.evo_dim, prof.evo_depth);
        EvolutionResiduals er;
        run.run("kernel_identity_at_zero" + tag, prof.identity_tol, [&] {
            er = evolution_residuals(evo, prof.confidence_tol);
            return er.identity;
        });
        run.run("kernel_group_law" + tag, prof.evo_tol, [&] { return er.group_law; });
        run.run("kernel_periodicity" + tag, 1e-10, [&] { return er.periodicity; });
        run.run("quarter_turn_mode_map" + tag, prof.evo_tol, [&] { return er.quarter_turn; });
        run.run("kernel_unitarity" + tag, prof.evo_tol, [&] { return er.unitarity; });
        run.run("isometry_parseval" + tag, 1e-8, [&] {
            return isometry_residual(DeformationContext(q, 64, std::max(prof.orth_depth, prof.evo_depth)), 32, 20, seed);
        });
        run.run("standard_vs_position_inner" + tag, 1e-12, [&] {
            std::vector<cplx> b1{1.0, cplx(0.3, -0.2), 0.1};
            std::vector<cplx> b2{cplx(0.0, 0.5), 0.2, cplx(-0.4, 0.1)};
            const auto f1 = fock_to_position(b1, base);
            const auto f2 = fock_to_position(b2, base);
            const cplx plain = position_inner(f1, f2, base);
            return std::abs(standard_inner(rescale(f1, base), rescale(f2, base), base) - plain) / std::abs(plain);
        });
    }

    {
        const DeformationContext drift_ctx(0.5, 80, 30);
        run.run("norm_drift_random[q=0.5]", 1e-7, [&] { return norm_drift(drift_ctx, 10, seed); });
    }
    run.run("ladder_limit[q=0.999]", 0.05, [] { return ladder_limit_distance(0.999, 10); });
    run.run("ladder_limit[q=0.9999]", 0.005, [] { return ladder_limit_distance(0.9999, 5); });

    rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline nlohmann::ordered_json verify_json(const VerifyReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["overall"] = rep.overall() ? "pass" : "fail";
    j["runtime"] = rep.runtime;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"residual", c.residual},
                          {"tolerance", c.tolerance}, {"runtime", c.runtime}});
    j["checks"] = std::move(checks);
    return j;
}

/// One line per check: name, status, residual, tolerance. Runtimes are left out so the text is reproducible.
inline std::string verify_csv(const VerifyReport& rep) {
    std::string out = "# qosc verify v1 overall=" + std::string(rep.overall() ? "pass" : "fail") + "\n";
    out += "name,status,residual,tolerance\n";
    for (const auto& c : rep.checks)
        out += c.name + ',' + (c.passed ? "pass" : "fail") + ',' + io::num(c.residual) + ',' + io::num(c.tolerance) + '\n';
    return out;
}

}  // namespace qosc

#endif  // QOSC_VERIFY_HPP
