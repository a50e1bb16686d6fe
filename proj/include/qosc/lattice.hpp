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

#ifndef QOSC_LATTICE_HPP
#define QOSC_LATTICE_HPP

#include <cmath>
#include <compare>
#include <cstddef>
#include <vector>

#include "qosc/context.hpp"
#include "qosc/error.hpp"

namespace qosc {

/// Which realization a lattice quantity belongs to: L2 over positions or over momenta.
enum class Kind { position, momentum };

inline const char* to_string(Kind k) noexcept { return k == Kind::position ? "position" : "momentum"; }

/**
 * A point sign * q^level of the position (and momentum) spectrum.
 *
 * Identity and ordering use (level, sign) only; the cached value is for
 * arithmetic and never compared.
 */
class LatticePoint {
public:
    LatticePoint(int sign, std::size_t level, double q) : sign_(sign), level_(level) {
        if (sign != 1 && sign != -1) throw error(errc::domain_error, "lattice sign must be +1 or -1");
        if (!(q > 0.0 && q < 1.0)) throw error(errc::invalid_config, "lattice point needs q in (0, 1)");
        value_ = sign * std::pow(q, static_cast<double>(level));
    }

    [[nodiscard]] int sign() const noexcept { return sign_; }
    [[nodiscard]] std::size_t level() const noexcept { return level_; }
    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] LatticePoint mirrored(double q) const { return {-sign_, level_, q}; }

    // Levels ascending, the positive point before the negative one.
    friend std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b) noexcept {
        if (auto c = a.level_ <=> b.level_; c != 0) return c;
        return b.sign_ <=> a.sign_;
    }
    friend bool operator==(const LatticePoint& a, const LatticePoint& b) noexcept {
        return a.level_ == b.level_ && a.sign_ == b.sign_;
    }

private:
    int sign_;
    std::size_t level_;
    double value_;
};

/// The 2S points +q^0, -q^0, +q^1, -q^1, ..., -q^(S-1).
inline std::vector<LatticePoint> lattice_window(std::size_t depth, double q) {
    std::vector<LatticePoint> pts;
    pts.reserve(2 * depth);
    for (std::size_t s = 0; s < depth; ++s) {
        pts.emplace_back(+1, s, q);
        pts.emplace_back(-1, s, q);
    }
    return pts;
}

inline std::vector<LatticePoint> lattice_window(const DeformationContext& ctx) {
    return lattice_window(ctx.lattice_depth(), ctx.q());
}

/// Position of a point inside `lattice_window`.
inline std::size_t window_index(const LatticePoint& pt) noexcept {
    return 2 * pt.level() + (pt.sign() > 0 ? 0 : 1);
}

}  // namespace qosc

#endif  // QOSC_LATTICE_HPP
