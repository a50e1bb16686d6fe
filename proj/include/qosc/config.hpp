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

#ifndef QOSC_CONFIG_HPP
#define QOSC_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qosc/context.hpp"
#include "qosc/error.hpp"

namespace qosc {

enum class OutputFormat { csv, json };

/// CLI run settings. Context fields mirror DeformationContext and are validated by it.
struct RunConfig {
    double q = 0.5;
    std::size_t fock_dim = 64;
    std::size_t lattice_depth = 32;
    double tail_tol = 1e-15;
    double match_tol = 1e-10;
    double tau = 0.0;
    OutputFormat format = OutputFormat::csv;
    std::string out;  // empty: stdout
    std::int64_t seed = 0;

    [[nodiscard]] DeformationContext context() const {
        return DeformationContext(q, fock_dim, lattice_depth, tail_tol, match_tol);
    }

    /// Throws errc::invalid_config with the first problem found.
    void validate() const {
        (void)context();
        if (seed < 0) throw error(errc::invalid_config, "seed must be non-negative");
        if (!std::isfinite(tau)) throw error(errc::invalid_config, "tau must be finite");
    }
};

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw error(errc::invalid_config, "format must be csv or json, got '" + s + "'");
}

namespace detail {

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_double = [&](const std::string& v) {
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw error(errc::invalid_config, "config key '" + key + "' expects a number, got '" + v + "'");
        }
    };
    auto as_count = [&](const std::string& v) -> long long {
        try {
            std::size_t used = 0;
            const long long n = std::stoll(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return n;
        } catch (const std::exception&) {
            throw error(errc::invalid_config, "config key '" + key + "' expects an integer, got '" + v + "'");
        }
    };
    auto as_size = [&](const std::string& v) {
        const long long n = as_count(v);
        if (n < 0) throw error(errc::invalid_config, "config key '" + key + "' must be non-negative");
        return static_cast<std::size_t>(n);
    };

    if (key == "q") cfg.q = as_double(value);
    else if (key == "fock_dim") cfg.fock_dim = as_size(value);
    else if (key == "lattice_depth") cfg.lattice_depth = as_size(value);
    else if (key == "tail_tol") cfg.tail_tol = as_double(value);
    else if (key == "match_tol") cfg.match_tol = as_double(value);
    else if (key == "tau") cfg.tau = as_double(value);
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "out") cfg.out = value;
    else if (key == "seed") cfg.seed = as_count(value);
    else throw error(errc::invalid_config, "unknown config key '" + key + "'");
}

}  // namespace detail

/**
 * Reads a config file: a JSON object, or key=value lines with # comments.
 * Keys use the field names of RunConfig.
 */
inline RunConfig load_config_text(const std::string& text, RunConfig cfg = {}) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw error(errc::parse_error, std::string("config JSON: ") + e.what());
        }
        for (const auto& [key, val] : j.items()) {
            std::string v;
            if (val.is_string()) v = val.get<std::string>();
            else if (val.is_number_integer()) v = std::to_string(val.get<long long>());
            else if (val.is_number()) {
                std::ostringstream ss;
                ss.precision(17);
                ss << val.get<double>();
                v = ss.str();
            } else {
                throw error(errc::invalid_config, "config key '" + key + "' has an unsupported JSON type");
            }
            detail::apply_setting(cfg, key, v);
        }
        return cfg;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw error(errc::parse_error, "config line " + std::to_string(line_no) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto lo = s.find_first_not_of(" \t\r");
            const auto hi = s.find_last_not_of(" \t\r");
            return lo == std::string::npos ? std::string{} : s.substr(lo, hi - lo + 1);
        };
        detail::apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace qosc

#endif  // QOSC_CONFIG_HPP
