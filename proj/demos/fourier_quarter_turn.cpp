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


// Phi(pi/2) acts on the rescaled modes sqrt(w) p_n as multiplication by i^n,
// so four quarter turns return the identity on the resolved levels.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qosc/evolution.hpp"

int main() {
    using namespace qosc;
    const DeformationContext ctx(0.5, 160, 64);
    const auto quarter = fractional_ft(std::numbers::pi / 2, ctx);
    const std::size_t levels = quarter.confident_levels();
    std::printf("q = %.2f, N = %zu, S = %zu, resolved levels: %zu\n\n", ctx.q(), ctx.fock_dim(), ctx.lattice_depth(), levels);

    std::printf("%3s %24s %12s\n", "n", "<Phi f_n, f_n> / |f_n|^2", "expected");
    for (std::size_t n = 0; n <= 7; ++n) {
        const auto f = rescaled_mode(n, Kind::position, ctx);
        const auto g = evolve(quarter, f);
        const cplx ratio = standard_inner(g, f, ctx) / standard_inner(f, f, ctx);
        const cplx want = i_power(n);
        std::printf("%3zu %11.8f %+11.8fi %5.0f %+3.0fi\n", n, ratio.real(), ratio.imag(), want.real(), want.imag());
    }

    auto f = rescaled_mode(3, Kind::position, ctx);
    for (std::size_t j = 0; j < f.values.size(); ++j) f.values[j] += 0.5 * rescaled_mode(0, Kind::position, ctx).values[j];
    auto g = f;
    for (int k = 0; k < 4; ++k) g = evolve(quarter, g);
    double worst = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j)
        if (f.points[j].level() < levels) worst = std::max(worst, std::abs(g.values[j] - f.values[j]));
    std::printf("\nfour quarter turns, max deviation on resolved levels: %.1e\n", worst);
    return 0;
}
