#pragma once

// Square-norm moduli: a direct scan (ground truth) against the
// parametrisation (m^2 - n^2) + 2mn i, closed under units and canonicalised.

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "gaussian.hpp"

namespace gls {

inline constexpr Int kSquareNormCap = 100'000'000;

inline void require_square_norm_cap(Int max_norm) {
    if (max_norm > kSquareNormCap) throw std::out_of_range("cap exceeded: maxNorm > 10^8");
}

struct PythParam {
    Int m = 0;
    Int n = 0;

    GaussianInt modulus() const { return {m * m - n * n, 2 * m * n}; }
    // (m^2 - n^2, 2mn, m^2 + n^2)
    std::array<Int, 3> triple() const { return {m * m - n * n, 2 * m * n, m * m + n * n}; }
};

// Canonical q != 0 with N(q) <= max_norm a perfect square, sorted by (norm, re, im).
inline std::vector<GaussianInt> enumerate_square_norm(Int max_norm) {
    require_square_norm_cap(max_norm);
    std::vector<GaussianInt> out;
    if (max_norm < 1) return out;
    const Int rmax = isqrt(max_norm);
    for (Int u = 1; u <= rmax; ++u) {
        const Int vmax = isqrt(max_norm - u * u);
        for (Int v = 0; v <= vmax; ++v)
            if (is_perfect_square(u * u + v * v)) out.emplace_back(u, v);
    }
    std::sort(out.begin(), out.end(), NormOrder{});
    return out;
}

// Canonical associates of (m^2 - n^2) + 2mn i over (m, n) in Z^2 with (m^2 + n^2)^2 <= max_norm.
inline std::vector<GaussianInt> enumerate_pyth_param(Int max_norm) {
    require_square_norm_cap(max_norm);
    std::vector<GaussianInt> out;
    if (max_norm < 1) return out;
    const Int hyp_max = isqrt(max_norm);  // m^2 + n^2 <= sqrt(max_norm)
    const Int mmax = isqrt(hyp_max);
    for (Int m = -mmax; m <= mmax; ++m)
        for (Int n = -mmax; n <= mmax; ++n) {
            if (m * m + n * n > hyp_max) continue;
            const GaussianInt g = PythParam{m, n}.modulus();
            if (g.is_zero()) continue;
            for (const auto& unit : kUnits) out.push_back(canonical_associate(unit * g));
        }
    std::sort(out.begin(), out.end(), NormOrder{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct CoverageDiff {
    std::vector<GaussianInt> missing;      // square norm, not parametrised
    std::vector<GaussianInt> extraneous;   // parametrised, not square norm
};

inline CoverageDiff coverage_diff(Int max_norm) {
    const auto truth = enumerate_square_norm(max_norm);
    const auto param = enumerate_pyth_param(max_norm);
    CoverageDiff diff;
    std::set_difference(truth.begin(), truth.end(), param.begin(), param.end(), std::back_inserter(diff.missing), NormOrder{});
    std::set_difference(param.begin(), param.end(), truth.begin(), truth.end(), std::back_inserter(diff.extraneous), NormOrder{});
    return diff;
}

inline Int coordinate_gcd(const GaussianInt& g) { return std::gcd(g.re, g.im); }

}  // namespace gls
