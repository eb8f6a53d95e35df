#pragma once

// Coefficient sequences a_n supported on the disk N(n) <= N, and the
// deterministic generators used by tests and the experiment harness.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "gaussian.hpp"

namespace gls {

// Lattice points n with N(n) <= radius_sq, lexicographic by (re, im).
inline std::vector<GaussianInt> disk_points(Int radius_sq) {
    std::vector<GaussianInt> pts;
    if (radius_sq < 0) return pts;
    const Int r = isqrt(radius_sq);
    for (Int s = -r; s <= r; ++s) {
        const Int t_max = isqrt(radius_sq - s * s);
        for (Int t = -t_max; t <= t_max; ++t) pts.emplace_back(s, t);
    }
    return pts;
}

struct CoefficientEntry {
    GaussianInt n;
    Complex a;
};

class CoefficientSequence {
public:
    CoefficientSequence() = default;

    // All-zero sequence on {n : N(n) <= radius_sq}.
    explicit CoefficientSequence(Int radius_sq) : radius_sq_(radius_sq) {
        if (radius_sq < 1) throw std::invalid_argument("radius_sq must be positive");
        for (const auto& n : disk_points(radius_sq)) entries_.push_back({n, Complex{}});
    }

    Int radius_sq() const { return radius_sq_; }
    const std::vector<CoefficientEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Sum of |a_n|^2.
    double energy() const {
        double z = 0.0;
        for (const auto& e : entries_) z += std::norm(e.a);
        return z;
    }

    void set(const GaussianInt& n, Complex value) { slot(n).a = value; }

    Complex at(const GaussianInt& n) const {
        auto it = find(n);
        return it == entries_.end() ? Complex{} : it->a;
    }

    CoefficientSequence scaled(Complex c) const {
        CoefficientSequence out = *this;
        for (auto& e : out.entries_) e.a *= c;
        return out;
    }

    bool operator==(const CoefficientSequence& other) const {
        if (radius_sq_ != other.radius_sq_ || entries_.size() != other.entries_.size()) return false;
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (entries_[k].n != other.entries_[k].n || entries_[k].a != other.entries_[k].a) return false;
        return true;
    }

private:
    std::vector<CoefficientEntry>::const_iterator find(const GaussianInt& n) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const CoefficientEntry& e, const GaussianInt& key) { return e.n < key; });
        return (it != entries_.end() && it->n == n) ? it : entries_.end();
    }

    CoefficientEntry& slot(const GaussianInt& n) {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const CoefficientEntry& e, const GaussianInt& key) { return e.n < key; });
        if (it == entries_.end() || it->n != n) throw std::out_of_range("index outside the coefficient disk: " + to_string(n));
        return *it;
    }

    Int radius_sq_ = 0;
    std::vector<CoefficientEntry> entries_;
};

// 64-bit linear congruential engine, state <- 6364136223846793005*state + 1442695040888963407 (mod 2^64).
// Phases take the top 53 bits of each state, so sequences are identical on every platform.
using PhaseEngine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

inline double next_unit_interval(PhaseEngine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

enum class CoeffKind { AllOnes, Delta, RandomPhases, ProgressionAdversary };

struct CoeffSpec {
    CoeffKind kind = CoeffKind::RandomPhases;
    GaussianInt delta_at{1, 0};
    GaussianInt progression_modulus{1, 1};
    std::uint64_t seed = 42;
};

inline std::string to_string(CoeffKind k) {
    switch (k) {
        case CoeffKind::AllOnes: return "all-ones";
        case CoeffKind::Delta: return "delta";
        case CoeffKind::RandomPhases: return "random";
        case CoeffKind::ProgressionAdversary: return "adversary";
    }
    return "?";
}

inline CoeffKind parse_coeff_kind(const std::string& s) {
    if (s == "all-ones") return CoeffKind::AllOnes;
    if (s == "delta") return CoeffKind::Delta;
    if (s == "random") return CoeffKind::RandomPhases;
    if (s == "adversary") return CoeffKind::ProgressionAdversary;
    throw std::invalid_argument("invalid coefficient spec: " + s);
}

inline CoefficientSequence all_ones(Int radius_sq) {
    CoefficientSequence c(radius_sq);
    for (const auto& n : disk_points(radius_sq)) c.set(n, 1.0);
    return c;
}

inline CoefficientSequence delta(const GaussianInt& n0, Int radius_sq) {
    CoefficientSequence c(radius_sq);
    c.set(n0, 1.0);
    return c;
}

inline CoefficientSequence random_phases(Int radius_sq, std::uint64_t seed) {
    CoefficientSequence c(radius_sq);
    PhaseEngine eng(seed);
    for (const auto& n : disk_points(radius_sq))
        c.set(n, std::polar(1.0, 2.0 * std::numbers::pi * next_unit_interval(eng)));
    return c;
}

// a_n = 1 exactly on multiples of q0.
inline CoefficientSequence progression_adversary(const GaussianInt& q0, Int radius_sq) {
    require_nonzero(q0);
    CoefficientSequence c(radius_sq);
    for (const auto& n : disk_points(radius_sq))
        if (divides(q0, n)) c.set(n, 1.0);
    return c;
}

inline CoefficientSequence make_coefficients(const CoeffSpec& spec, Int radius_sq) {
    switch (spec.kind) {
        case CoeffKind::AllOnes: return all_ones(radius_sq);
        case CoeffKind::Delta: return delta(spec.delta_at, radius_sq);
        case CoeffKind::RandomPhases: return random_phases(radius_sq, spec.seed);
        case CoeffKind::ProgressionAdversary: return progression_adversary(spec.progression_modulus, radius_sq);
    }
    throw std::invalid_argument("invalid coefficient spec");
}

}  // namespace gls
