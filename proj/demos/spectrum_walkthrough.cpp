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


// Position spectrum of the truncated Jacobi matrix and the lattice modes it carries.

#include <cmath>
#include <cstdio>

#include "qosc/fock.hpp"
#include "qosc/hilbert.hpp"

int main() {
    using namespace qosc;
    const double q = 0.5;
    for (std::size_t n : {8, 16, 32, 60}) {
        const DeformationContext ctx(q, n, 32);
        const auto rep = spectrum_report(build_Q(ctx), ctx);
        std::printf("N = %2zu: levels matched through s = %ld, worst error %.1e, %zu eigenvalues off the lattice\n", n,
                    rep.s_match, rep.max_error, rep.unmatched_count());
    }

    const DeformationContext ctx(q, 60, 32);
    const auto rep = spectrum_report(build_Q(ctx), ctx);
    std::printf("\n%4s %5s %22s %10s\n", "s", "sign", "eigenvalue", "error");
    for (const auto& m : rep.matched)
        if (m.level <= 6) std::printf("%4zu %5d %22.17f %10.1e\n", m.level, m.sign, m.lambda, m.error);

    // The eigenvector at +q^s is the column (p_n(q^s))_n, normalized by the measure.
    const LatticePoint x(1, 2, q);
    const auto b = normalized_eigenfunction(Kind::position, x, 8, ctx);
    std::printf("\ncoefficients of the eigenvector at x = %.4f:\n", x.value());
    for (std::size_t n = 0; n < b.size(); ++n) std::printf("  b_%zu = % .12f\n", n, b[n].real());
    return 0;
}
