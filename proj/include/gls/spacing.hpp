#pragma once

// The geometric core of the sieve bound: spacing of the points
//
//   P(u, v) = ( f((uk + vl)/N(q2)), f((-vk + ul)/N(q2)) ),   k - l i = r2 conj(q2),
//
// and the counting problems built on them. Everything here is exact. The
// scaled representation 2*N(q2)*f(a/N(q2)) = ((2a + N(q2)) mod 2N(q2)) - N(q2)
// is an integer, so scans run in int64 and agree with the rational route.

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "moduli.hpp"
#include "rational.hpp"

namespace gls {

struct KLPair {
    Int k = 0;
    Int l = 0;
};

// k = x2 u2 + y2 v2, l = x2 v2 - y2 u2 for q2 = u2 + v2 i, r2 = x2 + y2 i.
inline KLPair kl_pair(const GaussianInt& q2, const GaussianInt& r2) {
    require_nonzero(q2);
    if (!coprime(r2, q2)) throw std::invalid_argument("non-coprime pair: r2 = " + to_string(r2) + ", q2 = " + to_string(q2));
    return {r2.re * q2.re + r2.im * q2.im, r2.re * q2.im - r2.im * q2.re};
}

struct SpacingInstance {
    GaussianInt q2;
    GaussianInt r2;
    Int k = 0;
    Int l = 0;

    Int modulus_norm() const { return norm(q2); }
};

inline SpacingInstance make_spacing_instance(const GaussianInt& q2, const GaussianInt& r2) {
    const KLPair kl = kl_pair(q2, r2);
    return {q2, r2, kl.k, kl.l};
}

using IntPair = std::pair<Int, Int>;

// Numerators (uk + vl, -vk + ul) over N(q2).
inline IntPair lattice_numerators(const SpacingInstance& inst, Int u, Int v) {
    return {u * inst.k + v * inst.l, -v * inst.k + u * inst.l};
}

// 2D * f(a / D) as an integer.
constexpr Int scaled_f(Int a, Int d) { return floor_mod(2 * a + d, 2 * d) - d; }

// The f-point of (u, v), scaled by 2 N(q2).
inline IntPair f_point_scaled(const SpacingInstance& inst, Int u, Int v) {
    const Int d = inst.modulus_norm();
    const auto [a, b] = lattice_numerators(inst, u, v);
    return {scaled_f(a, d), scaled_f(b, d)};
}

inline std::pair<ExactRational, ExactRational> f_point(const SpacingInstance& inst, Int u, Int v) {
    const Int d = inst.modulus_norm();
    const auto [a, b] = lattice_numerators(inst, u, v);
    return {frac_f(rational(a, d)), frac_f(rational(b, d))};
}

inline ExactRational spacing_distance_sq(const SpacingInstance& inst, IntPair uv, IntPair uv_tilde) {
    const auto [f1, f2] = f_point(inst, uv.first, uv.second);
    const auto [g1, g2] = f_point(inst, uv_tilde.first, uv_tilde.second);
    const ExactRational d1 = f1 - g1, d2 = f2 - g2;
    return d1 * d1 + d2 * d2;
}

struct SpacingViolation {
    GaussianInt q2;
    GaussianInt r2;
    IntPair uv;
    IntPair uv_tilde;
    ExactRational distance_sq;
    bool divisible = false;
};

// Exhaustive check over u, v, u~, v~ in [-bound, bound]: the distance is 0 iff
// q2 | (u - u~) + (v - v~) i, and at least 1/N(q2) otherwise.
inline std::vector<SpacingViolation> verify_spacing_lemma(const GaussianInt& q2, const GaussianInt& r2, Int bound) {
    const SpacingInstance inst = make_spacing_instance(q2, r2);
    const Int d = inst.modulus_norm();
    const Int side = 2 * bound + 1;
    std::vector<IntPair> pts;
    pts.reserve(static_cast<std::size_t>(side * side));
    for (Int u = -bound; u <= bound; ++u)
        for (Int v = -bound; v <= bound; ++v) pts.push_back(f_point_scaled(inst, u, v));

    std::vector<SpacingViolation> violations;
    for (Int i = 0; i < side * side; ++i) {
        const Int u = i / side - bound, v = i % side - bound;
        for (Int j = 0; j < side * side; ++j) {
            const Int ut = j / side - bound, vt = j % side - bound;
            const Int dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
            // distance^2 * (2D)^2; the lower bound 1/D becomes 4D.
            const Int scaled = dx * dx + dy * dy;
            const bool divisible = divides(q2, GaussianInt{u - ut, v - vt});
            const bool ok = divisible ? scaled == 0 : scaled >= 4 * d;
            if (!ok)
                violations.push_back({q2, r2, {u, v}, {ut, vt}, rational(scaled, 4 * d * d), divisible});
        }
    }
    return violations;
}

struct ShiftResult {
    Int a = 0;
    Int b = 0;
    Int x1_shifted = 0;
    Int y1_shifted = 0;
};

// Integers a, b with x1' = x1 + a u1 + b v1, y1' = y1 + a v1 - b u1 such that
// |(x1'u1 + y1'v1)/N(q1) - t1| = ||(x1 u1 + y1 v1)/N(q1) - t1|| and likewise
// for (x1'v1 - y1'u1)/N(q1) against t2. The shift moves the two coordinates
// by a and b respectively.
inline ShiftResult residue_shift(const GaussianInt& q1, IntPair xy, const std::pair<ExactRational, ExactRational>& target) {
    require_nonzero(q1);
    const Int n = norm(q1);
    const auto [x1, y1] = xy;
    const ExactRational d1 = rational(x1 * q1.re + y1 * q1.im, n) - target.first;
    const ExactRational d2 = rational(x1 * q1.im - y1 * q1.re, n) - target.second;
    const ExactRational sa = frac_f(d1) - d1;
    const ExactRational sb = frac_f(d2) - d2;
    const Int a = static_cast<Int>(boost::multiprecision::numerator(sa));
    const Int b = static_cast<Int>(boost::multiprecision::numerator(sb));
    return {a, b, x1 + a * q1.re + b * q1.im, y1 + a * q1.im - b * q1.re};
}

using IntMatrix2 = std::array<std::array<Int, 2>, 2>;

// M(u, v) = [[u, v], [-v, u]]; M^T M = N(u + v i) I.
inline IntMatrix2 rotation_matrix(Int u, Int v) {
    if (u == 0 && v == 0) throw std::domain_error("rotation matrix of zero");
    return {{{u, v}, {-v, u}}};
}

inline IntMatrix2 transpose_times_self(const IntMatrix2& m) {
    IntMatrix2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = m[0][i] * m[0][j] + m[1][i] * m[1][j];
    return out;
}

inline void require_small_radius(const ExactRational& radius) {
    if (radius <= 0 || radius >= ExactRational(1, 2)) throw std::out_of_range("R must satisfy 0 < R < 1/2");
}

// Closed disk: f1^2 + f2^2 <= R^2, decided exactly.
inline bool f_point_in_disk(const SpacingInstance& inst, IntPair uv, const ExactRational& radius) {
    require_small_radius(radius);
    const auto [f1, f2] = f_point(inst, uv.first, uv.second);
    return f1 * f1 + f2 * f2 <= radius * radius;
}

namespace detail {
// Scaled test s^2 (x^2 + y^2) <= (2D)^2 p^2 for R = p/s and a point scaled by 2D.
inline bool scaled_in_disk(const IntPair& pt, Int d, const ExactRational& radius) {
    const BigInt p = boost::multiprecision::numerator(radius);
    const BigInt s = boost::multiprecision::denominator(radius);
    const BigInt lhs = s * s * (BigInt(pt.first) * pt.first + BigInt(pt.second) * pt.second);
    const BigInt rhs = BigInt(4) * d * d * p * p;
    return lhs <= rhs;
}
}  // namespace detail

struct DiskCountQuery {
    SpacingInstance instance;
    ModuliFamily family;
    double L = 1.0;
    double Q = 1.0;
    ExactRational radius;
};

// Canonical q in the family (kind predicate) with N(q) <= L Q and P(q) in D_R(0).
inline Int disk_point_count(const DiskCountQuery& query) {
    require_small_radius(query.radius);
    const ModuliFamily range = query.family.with_window({0.0, query.L * query.Q});
    Int count = 0;
    const Int d = query.instance.modulus_norm();
    for (const auto& q : range.enumerate())
        if (detail::scaled_in_disk(f_point_scaled(query.instance, q.re, q.im), d, query.radius)) ++count;
    return count;
}

// Number of distinct f-points inside D_R(0) from members of `family` (its window applies).
inline Int distinct_f_points_in_disk(const SpacingInstance& inst, const ModuliFamily& family, const ExactRational& radius) {
    require_small_radius(radius);
    std::set<IntPair> seen;
    const Int d = inst.modulus_norm();
    for (const auto& q : family.enumerate()) {
        const IntPair pt = f_point_scaled(inst, q.re, q.im);
        if (detail::scaled_in_disk(pt, d, radius)) seen.insert(pt);
    }
    return static_cast<Int>(seen.size());
}

// 1 + 16 R^2 N(q2): 1 plus the area of a disk of radius 2R over that of radius 1/(2 sqrt N(q2)).
inline ExactRational packing_bound(const ExactRational& radius, Int q2_norm) {
    return ExactRational(1) + ExactRational(16) * radius * radius * q2_norm;
}

// Largest number of canonical q with N(q) <= limit lying in one class mod q2.
inline Int max_class_multiplicity(const GaussianInt& q2, double limit) {
    std::unordered_map<GaussianInt, Int, GaussianHash> per_class;
    Int best = 0;
    for (const auto& q : ModuliFamily(FamilyKind::AllGaussian, {0.0, limit}).enumerate())
        best = std::max(best, ++per_class[mod(q, q2)]);
    return best;
}

struct SwitchLatticeResult {
    Int integer_points_near_lattice = 0;  // sum over L-points of #Z^2-points within R
    Int lattice_points_near_integers = 0;  // sum over Z^2-points of #L-points within R
    bool equal() const { return integer_points_near_lattice == lattice_points_near_integers; }
};

// Lattice L = { x~ (k, l)/D + y~ (l, -k)/D }, parameters |x~|, |y~| <= window.
// Counting Z^2-points in closed R-neighbourhoods of L-points equals counting
// L-points in closed R-neighbourhoods of Z^2-points; both sides are computed
// by independent scans.
inline SwitchLatticeResult switch_lattice_counts(const SpacingInstance& inst, Int window, const ExactRational& radius) {
    require_small_radius(radius);
    const Int d = inst.modulus_norm();
    using Wide = __int128;
    const auto p = static_cast<Int>(boost::multiprecision::numerator(radius));
    const auto s = static_cast<Int>(boost::multiprecision::denominator(radius));
    const Wide rhs = Wide(d) * d * p * p;
    // |P - D z|^2 <= D^2 R^2 with P the numerator pair of the lattice point.
    auto close = [&](const IntPair& num, Int zx, Int zy) {
        const Wide dx = Wide(num.first) - Wide(d) * zx;
        const Wide dy = Wide(num.second) - Wide(d) * zy;
        return Wide(s) * s * (dx * dx + dy * dy) <= rhs;
    };

    SwitchLatticeResult res;
    std::vector<IntPair> lattice;
    Int extent = 0;
    for (Int x = -window; x <= window; ++x)
        for (Int y = -window; y <= window; ++y) {
            const IntPair num{x * inst.k + y * inst.l, x * inst.l - y * inst.k};
            lattice.push_back(num);
            extent = std::max({extent, num.first < 0 ? -num.first : num.first, num.second < 0 ? -num.second : num.second});
            const Int cx = floor_div(num.first, d), cy = floor_div(num.second, d);
            for (Int zx = cx - 1; zx <= cx + 2; ++zx)
                for (Int zy = cy - 1; zy <= cy + 2; ++zy)
                    if (close(num, zx, zy)) ++res.integer_points_near_lattice;
        }

    const Int zmax = extent / d + 2;
    for (Int zx = -zmax; zx <= zmax; ++zx)
        for (Int zy = -zmax; zy <= zmax; ++zy)
            for (const auto& num : lattice)
                if (close(num, zx, zy)) ++res.lattice_points_near_integers;
    return res;
}

inline bool switch_lattice_check(const SpacingInstance& inst, Int window, const ExactRational& radius) {
    return switch_lattice_counts(inst, window, radius).equal();
}

}  // namespace gls
