#pragma once

// Families of moduli q: canonical associates with a norm window
// low < N(q) <= high, filtered by a kind predicate.

#include <algorithm>
#include <string>
#include <vector>

#include "gaussian.hpp"

namespace gls {

enum class FamilyKind { AllGaussian, NaturalIntegers, SquareNorm, Custom };

inline std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::AllGaussian: return "all";
        case FamilyKind::NaturalIntegers: return "natural";
        case FamilyKind::SquareNorm: return "square-norm";
        case FamilyKind::Custom: return "custom";
    }
    return "?";
}

inline FamilyKind parse_family_kind(const std::string& s) {
    if (s == "all") return FamilyKind::AllGaussian;
    if (s == "natural") return FamilyKind::NaturalIntegers;
    if (s == "square-norm") return FamilyKind::SquareNorm;
    if (s == "custom") return FamilyKind::Custom;
    throw std::invalid_argument("unknown family: " + s);
}

struct NormWindow {
    double low_exclusive = 0.0;
    double high_inclusive = 0.0;

    bool contains(Int n) const {
        const auto x = static_cast<double>(n);
        return x > low_exclusive && x <= high_inclusive;
    }
    bool empty() const { return high_inclusive < 1.0 || high_inclusive <= low_exclusive; }

    // Q/2 < N(q) <= Q.
    static NormWindow dyadic(double q) { return {q / 2.0, q}; }
};

class ModuliFamily {
public:
    ModuliFamily(FamilyKind kind, NormWindow window) : kind_(kind), window_(window) {
        if (kind == FamilyKind::Custom) throw std::invalid_argument("custom families need an explicit list");
    }

    static ModuliFamily custom(std::string name, const std::vector<GaussianInt>& members, NormWindow window) {
        ModuliFamily f(FamilyKind::AllGaussian, window);
        f.kind_ = FamilyKind::Custom;
        f.custom_name_ = std::move(name);
        for (const auto& g : members) {
            if (g.is_zero()) continue;
            f.custom_members_.push_back(canonical_associate(g));
        }
        std::sort(f.custom_members_.begin(), f.custom_members_.end(), NormOrder{});
        f.custom_members_.erase(std::unique(f.custom_members_.begin(), f.custom_members_.end()), f.custom_members_.end());
        return f;
    }

    FamilyKind kind() const { return kind_; }
    const NormWindow& window() const { return window_; }
    const std::string& custom_name() const { return custom_name_; }

    ModuliFamily with_window(NormWindow w) const {
        ModuliFamily f = *this;
        f.window_ = w;
        return f;
    }

    // Kind predicate for a canonical nonzero q, ignoring the window.
    bool admits(const GaussianInt& q) const {
        switch (kind_) {
            case FamilyKind::AllGaussian: return true;
            case FamilyKind::NaturalIntegers: return q.im == 0 && q.re > 0;
            case FamilyKind::SquareNorm: return is_square_norm(q);
            case FamilyKind::Custom: return std::binary_search(custom_members_.begin(), custom_members_.end(), q, NormOrder{});
        }
        return false;
    }

    // Members sorted by (norm, re, im).
    std::vector<GaussianInt> enumerate() const {
        std::vector<GaussianInt> out;
        if (window_.empty()) return out;
        if (kind_ == FamilyKind::Custom) {
            for (const auto& q : custom_members_)
                if (window_.contains(norm(q))) out.push_back(q);
            return out;
        }
        const Int high = static_cast<Int>(window_.high_inclusive);
        const Int rmax = isqrt(high);
        for (Int x = 1; x <= rmax; ++x) {
            const Int ymax = kind_ == FamilyKind::NaturalIntegers ? 0 : isqrt(high - x * x);
            for (Int y = 0; y <= ymax; ++y) {
                const GaussianInt q{x, y};
                if (window_.contains(norm(q)) && admits(q)) out.push_back(q);
            }
        }
        std::sort(out.begin(), out.end(), NormOrder{});
        return out;
    }

private:
    FamilyKind kind_;
    NormWindow window_;
    std::string custom_name_;
    std::vector<GaussianInt> custom_members_;
};

// Dyadic windows (high/2^(j+1), high/2^j] covering (0, high].
inline std::vector<NormWindow> dyadic_cover(double high) {
    std::vector<NormWindow> out;
    for (double h = high; h >= 1.0; h /= 2.0) out.push_back(NormWindow::dyadic(h));
    return out;
}

}  // namespace gls
