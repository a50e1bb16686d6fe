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

// qosc: tables, spectra, kernels and the verification suite from the command line.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure, 3 IO error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qosc/config.hpp"
#include "qosc/evolution.hpp"
#include "qosc/fock.hpp"
#include "qosc/io.hpp"
#include "qosc/qhermite.hpp"
#include "qosc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;

struct Flags {
    std::optional<double> q;
    std::optional<std::size_t> fock_dim;
    std::optional<std::size_t> lattice_depth;
    std::optional<double> tau;
    std::optional<double> tail_tol;
    std::optional<double> match_tol;
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<long long> seed;
    std::string config_path;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--q", f.q, "deformation parameter, 0 < q < 1");
    cmd->add_option("--fock-dim", f.fock_dim, "Fock truncation N");
    cmd->add_option("--lattice-depth", f.lattice_depth, "lattice window depth S");
    cmd->add_option("--tau", f.tau, "evolution angle in radians");
    cmd->add_option("--tol", f.tail_tol, "tail tolerance for infinite products and series");
    cmd->add_option("--match-tol", f.match_tol, "matching tolerance");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_option("--out", f.out, "output file (stdout when omitted)");
    cmd->add_option("--seed", f.seed, "seed for randomized checks");
    cmd->add_option("--config", f.config_path, "config file: JSON object or key=value lines");
}

// defaults < config file < flags
qosc::RunConfig resolve(const Flags& f) {
    qosc::RunConfig cfg;
    if (!f.config_path.empty()) cfg = qosc::load_config_text(qosc::io::read_text(f.config_path), cfg);
    if (f.q) cfg.q = *f.q;
    if (f.fock_dim) cfg.fock_dim = *f.fock_dim;
    if (f.lattice_depth) cfg.lattice_depth = *f.lattice_depth;
    if (f.tau) cfg.tau = *f.tau;
    if (f.tail_tol) cfg.tail_tol = *f.tail_tol;
    if (f.match_tol) cfg.match_tol = *f.match_tol;
    if (f.format) cfg.format = qosc::parse_format(*f.format);
    if (f.out) cfg.out = *f.out;
    if (f.seed) cfg.seed = *f.seed;
    cfg.validate();
    return cfg;
}

void emit(const qosc::RunConfig& cfg, const std::string& csv, const nlohmann::ordered_json& json) {
    qosc::io::write_text(cfg.out, cfg.format == qosc::OutputFormat::csv ? csv : json.dump(2) + "\n");
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw qosc::error(qosc::errc::invalid_config, "--grid expects lo:hi:step");
    double lo = 0, hi = 0, step = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        step = std::stod(parts[2]);
    } catch (const std::exception&) {
        throw qosc::error(qosc::errc::invalid_config, "--grid values must be numbers");
    }
    if (!(step > 0.0) || !(hi >= lo)) throw qosc::error(qosc::errc::invalid_config, "--grid needs lo <= hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw qosc::error(qosc::errc::invalid_config, "--grid has too many points");
    std::vector<double> xs(count);
    for (std::size_t k = 0; k < count; ++k) xs[k] = lo + static_cast<double>(k) * step;
    return xs;
}

std::vector<double> parse_points(const std::string& spec) {
    std::vector<double> xs;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw qosc::error(qosc::errc::invalid_config, "--points entry is not a number: '" + tok + "'");
        }
    }
    if (xs.empty()) throw qosc::error(qosc::errc::invalid_config, "--points is empty");
    return xs;
}

int exit_code_for(qosc::errc code) {
    switch (code) {
        case qosc::errc::io_error:
        case qosc::errc::parse_error: return kExitIo;
        default: return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qosc: discrete q-deformed oscillator toolkit"};
    app.require_subcommand(1);

    Flags hermite_flags, spectrum_flags, kernel_flags, evolve_flags, verify_flags;

    auto* hermite = app.add_subcommand("hermite", "tables of p_n (lattice) or p_n, h_n (continuous argument)");
    add_common(hermite, hermite_flags);
    std::size_t n_max = 10;
    std::string grid, points;
    bool momentum = false;
    hermite->add_option("--n-max", n_max, "largest degree");
    auto* grid_opt = hermite->add_option("--grid", grid, "continuous grid lo:hi:step");
    hermite->add_option("--points", points, "comma-separated x values")->excludes(grid_opt);
    hermite->add_flag("--momentum", momentum, "lattice table of g_n = i^n p_n");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the truncated Q against +-q^s");
    add_common(spectrum, spectrum_flags);
    long min_level = -1;
    spectrum->add_option("--min-level", min_level, "exit 2 unless levels 0..min-level all match (default: no requirement)");

    auto* kernel = app.add_subcommand("kernel", "evolution kernel on the lattice window");
    add_common(kernel, kernel_flags);
    bool raw = false;
    kernel->add_flag("--raw", raw, "emit K^tau instead of the rescaled Phi(tau)");

    auto* evolve = app.add_subcommand("evolve", "apply Phi(tau) to a rescaled lattice function");
    add_common(evolve, evolve_flags);
    std::string input;
    evolve->add_option("--input", input, "lattice-function CSV")->required();

    auto* verify = app.add_subcommand("verify", "run the identity suite over q in {0.3, 0.5, 0.8, 0.95}");
    add_common(verify, verify_flags);
    bool corrupt = false;
    verify->add_flag("--corrupt-an", corrupt, "negative control: perturb one Jacobi coefficient")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*hermite) {
            const auto cfg = resolve(hermite_flags);
            const auto ctx = cfg.context();
            if (!grid.empty() || !points.empty()) {
                const auto xs = grid.empty() ? parse_points(points) : parse_grid(grid);
                const auto table = qosc::io::grid_table(xs, n_max + 1, ctx);
                emit(cfg, qosc::io::grid_table_csv(table, cfg.q), qosc::io::grid_table_json(table, cfg.q));
            } else {
                const auto kind = momentum ? qosc::Kind::momentum : qosc::Kind::position;
                const auto table = qosc::build_mode_table(kind, ctx, n_max + 1);
                emit(cfg, qosc::io::mode_table_csv(table, cfg.q), qosc::io::mode_table_json(table, cfg.q));
            }
            return kExitOk;
        }
        if (*spectrum) {
            const auto cfg = resolve(spectrum_flags);
            const auto ctx = cfg.context();
            const auto rep = qosc::spectrum_report(qosc::build_Q(ctx), ctx);
            emit(cfg, qosc::io::spectrum_csv(rep), qosc::io::spectrum_json(rep));
            if (rep.s_match < min_level) {
                std::cerr << "qosc: S_match = " << rep.s_match << " is below the requested level " << min_level << "\n";
                return kExitVerification;
            }
            return kExitOk;
        }
        if (*kernel) {
            const auto cfg = resolve(kernel_flags);
            const auto ctx = cfg.context();
            const auto k = raw ? qosc::kernel_K(cfg.tau, ctx) : qosc::fractional_ft(cfg.tau, ctx);
            emit(cfg, qosc::io::kernel_csv(k), qosc::io::kernel_json(k));
            return kExitOk;
        }
        if (*evolve) {
            const auto cfg = resolve(evolve_flags);
            const auto ctx = cfg.context();
            const auto f = qosc::io::parse_lattice_function_csv(qosc::io::read_text(input), ctx);
            const auto g = qosc::evolve(qosc::fractional_ft(cfg.tau, ctx), f);
            emit(cfg, qosc::io::lattice_function_csv(g), qosc::io::lattice_function_json(g));
            return kExitOk;
        }
        if (*verify) {
            const auto cfg = resolve(verify_flags);
            qosc::VerifyOptions opt;
            opt.seed = cfg.seed;
            opt.corrupt_jacobi = corrupt;
            const auto rep = qosc::run_verify(opt);
            emit(cfg, qosc::verify_csv(rep), qosc::verify_json(rep));
            std::size_t failed = 0;
            for (const auto& c : rep.checks) failed += c.passed ? 0 : 1;
            std::fprintf(stderr, "qosc verify: %zu checks, %zu failed, %.1f s\n", rep.checks.size(), failed, rep.runtime);
            return rep.overall() ? kExitOk : kExitVerification;
        }
    } catch (const qosc::error& e) {
        std::cerr << "qosc: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "qosc: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
