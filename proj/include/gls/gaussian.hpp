#pragma once

// Exact arithmetic in the Gaussian integers Z[i].
//
// Coordinates are 64-bit. Every entry point that multiplies coordinates
// rejects inputs with |re| or |im| above 2^30, which keeps all intermediate
// products (and sums of two of them) inside int64_t.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gls {

using Int = std::int64_t;

inline constexpr Int kCoordinateCap = Int{1} << 30;

struct GaussianInt {
    Int re = 0;
    Int im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(Int real) : re(real) {}
    constexpr GaussianInt(Int real, Int imag) : re(real), im(imag) {}

    constexpr bool is_zero() const { return re == 0 && im == 0; }

    friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;
    // Lexicographic (re, im); used for reproducible ordering only.
    friend constexpr auto operator<=>(const GaussianInt&, const GaussianInt&) = default;

    constexpr GaussianInt operator-() const { return {-re, -im}; }
    friend constexpr GaussianInt operator+(GaussianInt a, GaussianInt b) { return {a.re + b.re, a.im + b.im}; }
    friend constexpr GaussianInt operator-(GaussianInt a, GaussianInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b);
};

inline std::ostream& operator<<(std::ostream& os, const GaussianInt& g) {
    if (g.im == 0) return os << g.re;
    if (g.re == 0) return os << g.im << "i";
    return os << g.re << (g.im < 0 ? "-" : "+") << (g.im < 0 ? -g.im : g.im) << "i";
}

inline std::string to_string(const GaussianInt& g) {
    std::string s = std::to_string(g.re);
    if (g.im == 0) return s;
    if (g.re == 0) return std::to_string(g.im) + "i";
    return s + (g.im < 0 ? "-" : "+") + std::to_string(g.im < 0 ? -g.im : g.im) + "i";
}

inline void require_in_range(const GaussianInt& g) {
    if (g.re > kCoordinateCap || g.re < -kCoordinateCap || g.im > kCoordinateCap || g.im < -kCoordinateCap)
        throw std::out_of_range("coordinate out of range: " + to_string(g));
}

inline void require_nonzero(const GaussianInt& q) {
    if (q.is_zero()) throw std::domain_error("zero modulus");
}

inline GaussianInt operator*(GaussianInt a, GaussianInt b) {
    require_in_range(a);
    require_in_range(b);
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Int norm(const GaussianInt& g) {
    require_in_range(g);
    return g.re * g.re + g.im * g.im;
}

constexpr GaussianInt conj(const GaussianInt& g) { return {g.re, -g.im}; }

constexpr Int trace(const GaussianInt& g) { return 2 * g.re; }

inline constexpr GaussianInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline bool is_unit(const GaussianInt& g) { return !g.is_zero() && norm(g) == 1; }

// Floor division for signed integers, b > 0.
constexpr Int floor_div(Int a, Int b) {
    Int q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

constexpr Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

namespace detail {
// Nearest integer to x/n for n > 0, ties toward -infinity: ceil((2x - n) / 2n).
constexpr Int round_half_down(Int x, Int n) { return -floor_div(-(2 * x - n), 2 * n); }
}  // namespace detail

struct DivRem {
    GaussianInt quotient;
    GaussianInt remainder;
};

// a = quotient*q + remainder with norm(remainder) <= norm(q)/2.
// The remainder depends only on the class of a modulo q.
inline DivRem div_rem(const GaussianInt& a, const GaussianInt& q) {
    require_nonzero(q);
    const Int n = norm(q);
    const GaussianInt num = a * conj(q);
    const GaussianInt quot{detail::round_half_down(num.re, n), detail::round_half_down(num.im, n)};
    return {quot, a - quot * q};
}

inline GaussianInt mod(const GaussianInt& a, const GaussianInt& q) { return div_rem(a, q).remainder; }

// d | z, for d nonzero.
inline bool divides(const GaussianInt& d, const GaussianInt& z) {
    require_nonzero(d);
    const Int n = norm(d);
    const GaussianInt t = z * conj(d);
    return t.re % n == 0 && t.im % n == 0;
}

// The unique unit multiple with re > 0 and im >= 0 (0 maps to 0).
constexpr GaussianInt canonical_associate(GaussianInt g) {
    if (g.is_zero()) return g;
    for (int k = 0; k < 4; ++k) {
        if (g.re > 0 && g.im >= 0) return g;
        g = {-g.im, g.re};  // multiply by i
    }
    return g;  // unreachable
}

inline GaussianInt gcd(GaussianInt a, GaussianInt b) {
    require_in_range(a);
    require_in_range(b);
    while (!b.is_zero()) {
        GaussianInt r = mod(a, b);
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

inline bool coprime(const GaussianInt& a, const GaussianInt& b) { return norm(gcd(a, b)) == 1; }

inline Int isqrt(Int n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(Int n) {
    if (n < 0) return false;
    const Int r = isqrt(n);
    return r * r == n;
}

inline bool is_square_norm(const GaussianInt& g) { return is_perfect_square(norm(g)); }

// Orders by (norm, re, im).
struct NormOrder {
    bool operator()(const GaussianInt& a, const GaussianInt& b) const {
        const Int na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        return a < b;
    }
};

struct GaussianHash {
    std::size_t operator()(const GaussianInt& g) const noexcept {
        const auto h1 = std::hash<Int>{}(g.re);
        const auto h2 = std::hash<Int>{}(g.im);
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

// One representative per class of Z[i]/(q), lexicographically sorted.
struct ResidueSystem {
    GaussianInt modulus;
    std::vector<GaussianInt> representatives;
    std::vector<bool> reduced_flags;

    std::size_t size() const { return representatives.size(); }

    std::vector<GaussianInt> reduced() const {
        std::vector<GaussianInt> out;
        for (std::size_t k = 0; k < representatives.size(); ++k)
            if (reduced_flags[k]) out.push_back(representatives[k]);
        return out;
    }

    Int reduced_count() const { return static_cast<Int>(std::count(reduced_flags.begin(), reduced_flags.end(), true)); }
};

// Scans the box 0 <= x, y <= 2*ceil(sqrt(N(q))). Two points are in the same
// class iff their div_rem remainders agree, so the remainder is the dedupe key.
inline ResidueSystem residue_system(const GaussianInt& q) {
    require_nonzero(q);
    const Int n = norm(q);
    Int side = isqrt(n);
    if (side * side < n) ++side;
    side *= 2;

    std::unordered_map<GaussianInt, GaussianInt, GaussianHash> seen;
    seen.reserve(static_cast<std::size_t>(n) * 2);
    for (Int x = 0; x <= side && static_cast<Int>(seen.size()) < n; ++x)
        for (Int y = 0; y <= side; ++y) {
            const GaussianInt g{x, y};
            seen.try_emplace(mod(g, q), g);
        }
    if (static_cast<Int>(seen.size()) != n) throw std::logic_error("residue scan did not find every class");

    ResidueSystem rs;
    rs.modulus = q;
    rs.representatives.reserve(seen.size());
    for (const auto& [key, rep] : seen) rs.representatives.push_back(rep);
    std::sort(rs.representatives.begin(), rs.representatives.end());
    rs.reduced_flags.reserve(rs.representatives.size());
    for (const auto& r : rs.representatives) rs.reduced_flags.push_back(coprime(r, q));
    return rs;
}

inline Int totient(const GaussianInt& q) { return residue_system(q).reduced_count(); }

// Canonical divisors of z sorted by (norm, re, im), by trial division.
inline std::vector<GaussianInt> divisors(const GaussianInt& z) {
    if (z.is_zero()) throw std::domain_error("divisors of zero");
    const Int n = norm(z);
    std::vector<GaussianInt> out;
    const Int bound = isqrt(n);
    for (Int x = 1; x <= bound; ++x)
        for (Int y = 0; x * x + y * y <= n; ++y) {
            const GaussianInt g{x, y};
            if (n % (x * x + y * y) == 0 && divides(g, z)) out.push_back(g);
        }
    std::sort(out.begin(), out.end(), NormOrder{});
    return out;
}

}  // namespace gls
