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

#ifndef QOSC_CONTEXT_HPP
#define QOSC_CONTEXT_HPP

#include <cmath>
#include <cstddef>
#include <sstream>

#include "qosc/error.hpp"

namespace qosc {

/**
 * Deformation parameter plus the truncation and tolerance settings shared by
 * every computation in the library.
 *
 * A context is validated on construction and immutable afterwards, so any
 * function receiving one may assume 0 < q < 1, N >= 2, S >= 1 and tolerances
 * in (0, 1).
 */
class DeformationContext {
public:
    static constexpr std::size_t default_fock_dim = 64;
    static constexpr std::size_t default_lattice_depth = 32;
    static constexpr double default_tail_tol = 1e-15;
    static constexpr double default_match_tol = 1e-10;

    explicit DeformationContext(double q,
                                std::size_t fock_dim = default_fock_dim,
                                std::size_t lattice_depth = default_lattice_depth,
                                double tail_tol = default_tail_tol,
                                double match_tol = default_match_tol)
        : q_(q), fock_dim_(fock_dim), lattice_depth_(lattice_depth),
          tail_tol_(tail_tol), match_tol_(match_tol) {
        validate();
    }

    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] std::size_t fock_dim() const noexcept { return fock_dim_; }
    [[nodiscard]] std::size_t lattice_depth() const noexcept { return lattice_depth_; }
    [[nodiscard]] double tail_tol() const noexcept { return tail_tol_; }
    [[nodiscard]] double match_tol() const noexcept { return match_tol_; }

    [[nodiscard]] DeformationContext with_q(double q) const {
        return DeformationContext(q, fock_dim_, lattice_depth_, tail_tol_, match_tol_);
    }
    [[nodiscard]] DeformationContext with_fock_dim(std::size_t n) const {
        return DeformationContext(q_, n, lattice_depth_, tail_tol_, match_tol_);
    }
    [[nodiscard]] DeformationContext with_lattice_depth(std::size_t s) const {
        return DeformationContext(q_, fock_dim_, s, tail_tol_, match_tol_);
    }
    [[nodiscard]] DeformationContext with_tail_tol(double eps) const {
        return DeformationContext(q_, fock_dim_, lattice_depth_, eps, match_tol_);
    }
    [[nodiscard]] DeformationContext with_match_tol(double tol) const {
        return DeformationContext(q_, fock_dim_, lattice_depth_, tail_tol_, tol);
    }

private:
    void validate() const {
        // NaN fails every comparison, so test the accepted range positively.
        if (!(q_ > 0.0 && q_ < 1.0)) {
            std::ostringstream os;
            os << "q must lie strictly inside (0, 1), got " << q_;
            throw error(errc::invalid_config, os.str());
        }
        if (fock_dim_ < 2) throw error(errc::invalid_config, "fock_dim must be at least 2");
        if (lattice_depth_ < 1) throw error(errc::invalid_config, "lattice_depth must be at least 1");
        if (!(tail_tol_ > 0.0 && tail_tol_ < 1.0))
            throw error(errc::invalid_config, "tail_tol must lie in (0, 1)");
        if (!(match_tol_ > 0.0 && match_tol_ < 1.0))
            throw error(errc::invalid_config, "match_tol must lie in (0, 1)");
    }

    double q_;
    std::size_t fock_dim_;
    std::size_t lattice_depth_;
    double tail_tol_;
    double match_tol_;
};

/// Smallest S with q^S below eps: the depth at which lattice tail weights stop mattering.
inline std::size_t recommended_lattice_depth(double q, double eps) {
    if (!(q > 0.0 && q < 1.0) || !(eps > 0.0 && eps < 1.0))
        throw error(errc::invalid_config, "recommended_lattice_depth needs q, eps in (0, 1)");
    return static_cast<std::size_t>(std::ceil(std::log(eps) / std::log(q)));
}

}  // namespace qosc

#endif  // QOSC_CONTEXT_HPP
