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

#ifndef QOSC_ERROR_HPP
#define QOSC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qosc {

enum class errc {
    invalid_config,
    domain_error,
    index_out_of_range,
    non_convergent,
    dimension_mismatch,
    not_hermitian,
    no_convergence,
    kind_mismatch,
    not_rescaled,
    already_rescaled,
    truncation,
    io_error,
    parse_error,
};

inline const char* to_string(errc code) noexcept {
    switch (code) {
        case errc::invalid_config: return "InvalidConfig";
        case errc::domain_error: return "DomainError";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::non_convergent: return "NonConvergent";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_hermitian: return "NotHermitian";
        case errc::no_convergence: return "NoConvergence";
        case errc::kind_mismatch: return "KindMismatch";
        case errc::not_rescaled: return "NotRescaled";
        case errc::already_rescaled: return "AlreadyRescaled";
        case errc::truncation: return "TruncationError";
        case errc::io_error: return "IOError";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` tells callers what went wrong.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace qosc

#endif  // QOSC_ERROR_HPP
