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
 * @file io.hpp
 * @brief CSV and JSON serialization of tables, spectra, lattice functions and kernels.
 *
 * Numbers are written with 17 significant digits so files round-trip
 * exactly. CSV files start with a `# qosc <table> v1 key=value ...` line;
 * JSON documents carry `schema_version`. Schemas are listed in docs/schemas.md.
 */

#ifndef QOSC_IO_HPP
#define QOSC_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qosc/error.hpp"
#include "qosc/evolution.hpp"
#include "qosc/fock.hpp"
#include "qosc/hilbert.hpp"
#include "qosc/lattice.hpp"
#include "qosc/qhermite.hpp"

namespace qosc::io {

inline constexpr int kSchemaVersion = 1;

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sign_str(int sign) { return sign > 0 ? "+1" : "-1"; }

/// Writes via a temporary sibling and rename. An empty path or "-" writes to stdout.
inline void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error(errc::io_error, "cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw error(errc::io_error, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw error(errc::io_error, "cannot move output into place at " + path);
    }
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Mode tables

inline std::string mode_table_csv(const ModeTable& t, double q) {
    std::ostringstream out;
    out << "# qosc mode_table v1 kind=" << to_string(t.kind) << " q=" << num(q) << " degrees=" << t.degrees << '\n';
    out << "sign,s,x,n,value_re,value_im\n";
    for (std::size_t n = 0; n < t.degrees; ++n)
        for (std::size_t j = 0; j < t.points.size(); ++j) {
            const auto& pt = t.points[j];
            const cplx v = t.value(n, j);
            out << sign_str(pt.sign()) << ',' << pt.level() << ',' << num(pt.value()) << ',' << n << ','
                << num(v.real()) << ',' << num(v.imag()) << '\n';
        }
    return out.str();
}

inline nlohmann::ordered_json mode_table_json(const ModeTable& t, double q) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["table"] = "mode_table";
    j["kind"] = to_string(t.kind);
    j["q"] = q;
    j["degrees"] = t.degrees;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < t.degrees; ++n)
        for (std::size_t k = 0; k < t.points.size(); ++k) {
            const auto& pt = t.points[k];
            rows.push_back({{"sign", pt.sign()}, {"s", pt.level()}, {"x", pt.value()}, {"n", n},
                            {"value_re", t.value(n, k).real()}, {"value_im", t.value(n, k).imag()}});
        }
    j["rows"] = std::move(rows);
    return j;
}

/// Continuous-argument table: p_n(x) and h_n(x) on arbitrary real x.
struct GridTable {
    std::vector<double> xs;
    std::size_t degrees = 0;
    std::vector<double> p;  // row-major n, then x
    std::vector<double> h;
};

inline GridTable grid_table(const std::vector<double>& xs, std::size_t degrees, const DeformationContext& ctx) {
    GridTable g;
    g.xs = xs;
    g.degrees = degrees;
    g.p.resize(degrees * xs.size());
    g.h.resize(degrees * xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto p = mode_polys(degrees, xs[k], ctx);
        for (std::size_t n = 0; n < degrees; ++n) {
            g.p[n * xs.size() + k] = p[n];
            g.h[n * xs.size() + k] = hermite_eval(n, xs[k], ctx);
        }
    }
    return g;
}

inline std::string grid_table_csv(const GridTable& g, double q) {
    std::ostringstream out;
    out << "# qosc grid_table v1 q=" << num(q) << " degrees=" << g.degrees << '\n';
    out << "x,n,p,h\n";
    for (std::size_t n = 0; n < g.degrees; ++n)
        for (std::size_t k = 0; k < g.xs.size(); ++k)
            out << num(g.xs[k]) << ',' << n << ',' << num(g.p[n * g.xs.size() + k]) << ','
                << num(g.h[n * g.xs.size() + k]) << '\n';
    return out.str();
}

inline nlohmann::ordered_json grid_table_json(const GridTable& g, double q) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["table"] = "grid_table";
    j["q"] = q;
    j["degrees"] = g.degrees;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < g.degrees; ++n)
        for (std::size_t k = 0; k < g.xs.size(); ++k)
            rows.push_back({{"x", g.xs[k]}, {"n", n}, {"p", g.p[n * g.xs.size() + k]}, {"h", g.h[n * g.xs.size() + k]}});
    j["rows"] = std::move(rows);
    return j;
}

// ---------------------------------------------------------------------------
// Spectra

inline nlohmann::ordered_json spectrum_json(const SpectrumReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["q"] = r.q;
    j["N"] = r.dim;
    auto matched = nlohmann::ordered_json::array();
    for (const auto& m : r.matched)
        matched.push_back({{"sign", m.sign}, {"s", m.level}, {"lambda", m.lambda}, {"error", m.error}});
    j["matched"] = std::move(matched);
    j["unmatched"] = r.unmatched;
    j["s_match"] = r.s_match;
    j["max_error"] = r.max_error;
    return j;
}

inline std::string spectrum_csv(const SpectrumReport& r) {
    std::ostringstream out;
    out << "# qosc spectrum v1 q=" << num(r.q) << " N=" << r.dim << " s_match=" << r.s_match << '\n';
    out << "sign,s,lambda,error\n";
    for (const auto& m : r.matched)
        out << sign_str(m.sign) << ',' << m.level << ',' << num(m.lambda) << ',' << num(m.error) << '\n';
    for (double u : r.unmatched) out << ",," << num(u) << ",\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Lattice functions

inline std::string lattice_function_csv(const LatticeFunction& f) {
    std::ostringstream out;
    out << "# qosc lattice_function v1 kind=" << to_string(f.kind) << " q=" << num(f.q) << '\n';
    if (!f.low_confidence.empty()) {
        std::string flagged;
        for (std::size_t j = 0; j < f.points.size(); ++j)
            if (f.low_confidence[j]) flagged += ' ' + std::string(f.points[j].sign() > 0 ? "+" : "-") + std::to_string(f.points[j].level());
        if (!flagged.empty()) out << "# low_confidence" << flagged << '\n';
    }
    out << "sign,s,x,re,im,rescaled_flag\n";
    for (std::size_t j = 0; j < f.points.size(); ++j) {
        const auto& pt = f.points[j];
        out << sign_str(pt.sign()) << ',' << pt.level() << ',' << num(pt.value()) << ',' << num(f.values[j].real())
            << ',' << num(f.values[j].imag()) << ',' << (f.rescaled ? 1 : 0) << '\n';
    }
    return out.str();
}

inline nlohmann::ordered_json lattice_function_json(const LatticeFunction& f) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = to_string(f.kind);
    j["q"] = f.q;
    j["rescaled"] = f.rescaled;
    auto pts = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < f.points.size(); ++k) {
        nlohmann::ordered_json row = {{"sign", f.points[k].sign()}, {"s", f.points[k].level()}, {"x", f.points[k].value()},
                                      {"re", f.values[k].real()}, {"im", f.values[k].imag()}};
        if (!f.low_confidence.empty()) row["low_confidence"] = static_cast<bool>(f.low_confidence[k]);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    return j;
}

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw error(errc::parse_error, "line " + std::to_string(line_no) + ": not a number: '" + s + "'");
    }
}

inline long to_long(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw error(errc::parse_error, "line " + std::to_string(line_no) + ": not an integer: '" + s + "'");
    }
}

// key=value tokens of a "# qosc ..." header line.
inline std::map<std::string, std::string> header_fields(const std::string& line) {
    std::map<std::string, std::string> kv;
    std::istringstream ss(line.substr(1));
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

}  // namespace detail

/**
 * Parses the lattice-function CSV back into a function on the context window.
 *
 * Rows may come in any order but must cover every window point exactly once,
 * with x consistent with sign * q^s and a uniform rescaled flag.
 */
inline LatticeFunction parse_lattice_function_csv(const std::string& text, const DeformationContext& ctx) {
    auto f = make_lattice_function(Kind::position, ctx);
    std::vector<bool> seen(f.points.size(), false);
    std::vector<bool> low(f.points.size(), false);
    bool any_low = false;
    bool header_seen = false;
    int rescaled = -1;
    std::size_t rows = 0;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# qosc lattice_function", 0) == 0) {
                const auto kv = detail::header_fields(line);
                if (auto it = kv.find("kind"); it != kv.end()) {
                    if (it->second == "position") f.kind = Kind::position;
                    else if (it->second == "momentum") f.kind = Kind::momentum;
                    else throw error(errc::parse_error, "line " + std::to_string(line_no) + ": unknown kind " + it->second);
                }
                if (auto it = kv.find("q"); it != kv.end()) {
                    const double q = detail::to_double(it->second, line_no);
                    if (std::abs(q - ctx.q()) > 1e-15 * ctx.q())
                        throw error(errc::dimension_mismatch, "input function was written for q=" + it->second);
                }
            } else if (line.rfind("# low_confidence", 0) == 0) {
                std::istringstream toks(line.substr(16));
                std::string tok;
                while (toks >> tok) {
                    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
                        throw error(errc::parse_error, "line " + std::to_string(line_no) + ": bad low_confidence token " + tok);
                    const long s = detail::to_long(tok.substr(1), line_no);
                    if (s < 0 || static_cast<std::size_t>(s) >= ctx.lattice_depth()) continue;
                    low[2 * static_cast<std::size_t>(s) + (tok[0] == '+' ? 0 : 1)] = true;
                    any_low = true;
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "sign,s,x,re,im,rescaled_flag")
                throw error(errc::parse_error, "line " + std::to_string(line_no) + ": expected header sign,s,x,re,im,rescaled_flag");
            header_seen = true;
            continue;
        }
        const auto cols = detail::split(line, ',');
        if (cols.size() != 6)
            throw error(errc::parse_error, "line " + std::to_string(line_no) + ": expected 6 columns, got " + std::to_string(cols.size()));
        const long sign = detail::to_long(detail::trim(cols[0]), line_no);
        const long s = detail::to_long(detail::trim(cols[1]), line_no);
        const double x = detail::to_double(detail::trim(cols[2]), line_no);
        const double re = detail::to_double(detail::trim(cols[3]), line_no);
        const double im = detail::to_double(detail::trim(cols[4]), line_no);
        const long flag = detail::to_long(detail::trim(cols[5]), line_no);
        if (sign != 1 && sign != -1) throw error(errc::parse_error, "line " + std::to_string(line_no) + ": sign must be +1 or -1");
        if (s < 0 || static_cast<std::size_t>(s) >= ctx.lattice_depth())
            throw error(errc::dimension_mismatch, "line " + std::to_string(line_no) + ": level outside the lattice window");
        if (flag != 0 && flag != 1) throw error(errc::parse_error, "line " + std::to_string(line_no) + ": rescaled_flag must be 0 or 1");
        if (rescaled >= 0 && flag != rescaled)
            throw error(errc::parse_error, "line " + std::to_string(line_no) + ": mixed rescaled flags");
        rescaled = static_cast<int>(flag);
        const LatticePoint pt(static_cast<int>(sign), static_cast<std::size_t>(s), ctx.q());
        if (std::abs(x - pt.value()) > 1e-12 * std::abs(pt.value()))
            throw error(errc::parse_error, "line " + std::to_string(line_no) + ": x does not equal sign*q^s");
        const std::size_t idx = window_index(pt);
        if (seen[idx]) throw error(errc::parse_error, "line " + std::to_string(line_no) + ": duplicate lattice point");
        seen[idx] = true;
        f.values[idx] = cplx(re, im);
        ++rows;
    }
    if (!header_seen) throw error(errc::parse_error, "missing CSV header");
    if (rows != f.points.size())
        throw error(errc::dimension_mismatch, "expected " + std::to_string(f.points.size()) + " rows, got " + std::to_string(rows));
    f.rescaled = rescaled == 1;
    if (any_low) f.low_confidence = std::move(low);
    return f;
}

// ---------------------------------------------------------------------------
// Kernels

inline std::string kernel_csv(const EvolutionKernel& k) {
    std::ostringstream out;
    out << "# qosc kernel v1 variant=" << to_string(k.variant) << " tau=" << num(k.tau) << " q=" << num(k.q)
        << " n_max=" << k.n_max << " confident_levels=" << k.confident_levels() << '\n';
    out << "row_sign,row_s,col_sign,col_s,re,im\n";
    for (std::size_t i = 0; i < k.points.size(); ++i)
        for (std::size_t j = 0; j < k.points.size(); ++j) {
            const cplx v = k.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out << sign_str(k.points[i].sign()) << ',' << k.points[i].level() << ',' << sign_str(k.points[j].sign()) << ','
                << k.points[j].level() << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
        }
    return out.str();
}

inline nlohmann::ordered_json kernel_json(const EvolutionKernel& k) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["variant"] = to_string(k.variant);
    j["tau"] = k.tau;
    j["q"] = k.q;
    j["n_max"] = k.n_max;
    j["lattice_depth"] = k.points.size() / 2;
    j["confident_levels"] = k.confident_levels();
    j["row_defect"] = k.row_defect;
    auto entries = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < k.points.size(); ++r)
        for (std::size_t c = 0; c < k.points.size(); ++c) {
            const cplx v = k.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            entries.push_back({{"row_sign", k.points[r].sign()}, {"row_s", k.points[r].level()},
                               {"col_sign", k.points[c].sign()}, {"col_s", k.points[c].level()},
                               {"re", v.real()}, {"im", v.imag()}});
        }
    j["entries"] = std::move(entries);
    return j;
}

}  // namespace qosc::io

#endif  // QOSC_IO_HPP
