#pragma once

// Additive characters n -> e(Re(n r / q)) and the multiplicative character
// group of (Z[i]/q)^*, with primitivity ("proper") detection and Gauss sums.

#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "gaussian.hpp"

namespace gls {

using Complex = std::complex<double>;

// e(x) = exp(2 pi i x) for x = num/den.
inline Complex unit_root(Int num, Int den) {
    const Int r = floor_mod(num, den);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

struct AdditiveCharEval {
    GaussianInt modulus;
    GaussianInt twist;
    Int phase_numerator = 0;    // reduced into [0, phase_denominator)
    Int phase_denominator = 1;  // N(q)
    Complex value;
};

// Phase Re(n r conj(q)) / N(q) mod 1; expands to ((sx - ty)u + (sy + tx)v) / N(q).
inline AdditiveCharEval additive_char_eval(const GaussianInt& q, const GaussianInt& r, const GaussianInt& n) {
    require_nonzero(q);
    const Int den = norm(q);
    const GaussianInt w = mod(mod(n, q) * mod(r, q), q);
    const Int num = floor_mod(w.re * q.re + w.im * q.im, den);
    return {q, r, num, den, unit_root(num, den)};
}

inline Complex additive_char(const GaussianInt& q, const GaussianInt& r, const GaussianInt& n) {
    return additive_char_eval(q, r, n).value;
}

// Sum of additive_char(q, r, m) over a full residue system r mod q.
inline Complex orthogonality_sum(const GaussianInt& q, const GaussianInt& m) {
    const ResidueSystem rs = residue_system(q);
    Complex acc{0.0, 0.0};
    for (const auto& r : rs.representatives) acc += additive_char(q, r, m);
    return acc;
}

inline constexpr Int kCharacterNormCap = 2000;

// The group (Z[i]/q)^* as an explicit product of cyclic factors.
class UnitGroup {
public:
    explicit UnitGroup(const GaussianInt& q) : modulus_(q) {
        require_nonzero(q);
        const Int n = norm(q);
        if (n > kCharacterNormCap) throw std::out_of_range("norm cap exceeded for unit group decomposition");
        elements_ = residue_system(q).reduced();
        build_lookup();
        decompose();
    }

    const GaussianInt& modulus() const { return modulus_; }
    const std::vector<GaussianInt>& elements() const { return elements_; }
    const std::vector<GaussianInt>& generators() const { return generators_; }
    const std::vector<Int>& orders() const { return orders_; }
    Int size() const { return static_cast<Int>(elements_.size()); }
    Int exponent() const { return exponent_; }

    // Index of the reduced class containing g, or -1 if g is not coprime to q.
    Int index_of(const GaussianInt& g) const {
        const GaussianInt r = mod(g, modulus_);
        const Int key = (r.re + offset_) * width_ + (r.im + offset_);
        return lookup_[static_cast<std::size_t>(key)];
    }

    // Exponents (a_1..a_k) with element = prod generators[j]^a_j.
    const std::vector<Int>& dlog(Int index) const { return dlog_[static_cast<std::size_t>(index)]; }

    Int multiply(Int a, Int b) const { return index_of(elements_[a] * elements_[b]); }

private:
    void build_lookup() {
        // Remainders satisfy |re|, |im| <= sqrt(N(q)/2) < sqrt(N(q)).
        offset_ = isqrt(norm(modulus_)) + 1;
        width_ = 2 * offset_ + 1;
        lookup_.assign(static_cast<std::size_t>(width_ * width_), -1);
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            const GaussianInt r = mod(elements_[k], modulus_);
            lookup_[static_cast<std::size_t>((r.re + offset_) * width_ + (r.im + offset_))] = static_cast<Int>(k);
        }
        identity_ = index_of(GaussianInt{1});
    }

    // Greedy: repeatedly adjoin an element of maximal order modulo the current
    // subgroup S whose powers meet S only in the identity.
    void decompose() {
        const Int total = size();
        std::vector<char> in_sub(static_cast<std::size_t>(total), 0);
        std::vector<Int> sub{identity_};
        in_sub[static_cast<std::size_t>(identity_)] = 1;

        while (static_cast<Int>(sub.size()) < total) {
            Int best = -1, best_order = 0;
            for (Int g = 0; g < total; ++g) {
                if (in_sub[static_cast<std::size_t>(g)]) continue;
                Int p = g, m = 1;
                while (!in_sub[static_cast<std::size_t>(p)]) {
                    p = multiply(p, g);
                    ++m;
                }
                if (p == identity_ && m > best_order) {
                    best = g;
                    best_order = m;
                }
            }
            if (best < 0) throw std::logic_error("unit group decomposition failed");
            std::vector<Int> next;
            next.reserve(sub.size() * static_cast<std::size_t>(best_order));
            Int power = identity_;
            for (Int e = 0; e < best_order; ++e) {
                for (Int s : sub) next.push_back(multiply(s, power));
                power = multiply(power, best);
            }
            for (Int x : next) in_sub[static_cast<std::size_t>(x)] = 1;
            sub = std::move(next);
            generators_.push_back(elements_[static_cast<std::size_t>(best)]);
            generator_index_.push_back(best);
            orders_.push_back(best_order);
        }

        exponent_ = 1;
        for (Int o : orders_) exponent_ = std::lcm(exponent_, o);

        dlog_.assign(static_cast<std::size_t>(total), {});
        std::vector<Int> digits(orders_.size(), 0);
        Int filled = 0;
        for (Int count = 0; count < total; ++count) {
            Int idx = identity_;
            for (std::size_t j = 0; j < digits.size(); ++j)
                for (Int e = 0; e < digits[j]; ++e) idx = multiply(idx, generator_index_[j]);
            auto& slot = dlog_[static_cast<std::size_t>(idx)];
            if (slot.empty() && !digits.empty()) ++filled;
            slot = digits;
            for (std::size_t j = 0; j < digits.size(); ++j) {
                if (++digits[j] < orders_[j]) break;
                digits[j] = 0;
            }
        }
        if (!orders_.empty() && filled != total) throw std::logic_error("unit group decomposition is not a direct product");
    }

    GaussianInt modulus_;
    std::vector<GaussianInt> elements_;
    std::vector<Int> lookup_;
    Int offset_ = 0, width_ = 0, identity_ = 0, exponent_ = 1;
    std::vector<GaussianInt> generators_;
    std::vector<Int> generator_index_;
    std::vector<Int> orders_;
    std::vector<std::vector<Int>> dlog_;
};

struct MultiplicativeCharacter {
    GaussianInt modulus;
    std::vector<Int> generator_orders;
    std::vector<Int> exponent_vector;
    bool proper = false;

    bool is_trivial() const {
        return std::all_of(exponent_vector.begin(), exponent_vector.end(), [](Int e) { return e == 0; });
    }
};

// All Phi(q) characters of (Z[i]/q)^*. Values are kept as exact phases
// k / exponent() so that equality with 1 is decided without rounding.
class CharacterTable {
public:
    explicit CharacterTable(const GaussianInt& q) : group_(q) {
        enumerate();
        build_kernels();
        for (auto& chi : characters_) chi.proper = is_proper(chi);
    }

    const UnitGroup& group() const { return group_; }
    const GaussianInt& modulus() const { return group_.modulus(); }
    const std::vector<MultiplicativeCharacter>& characters() const { return characters_; }

    // Exact phase numerator over exponent() of chi at the reduced class `index`.
    Int phase(const MultiplicativeCharacter& chi, Int index) const {
        check(chi);
        const auto& a = group_.dlog(index);
        const Int d = group_.exponent();
        Int num = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            num = (num + chi.exponent_vector[j] * a[j] % chi.generator_orders[j] * (d / chi.generator_orders[j])) % d;
        return num;
    }

    // chi(n), zero when n is not coprime to the modulus.
    Complex value(const MultiplicativeCharacter& chi, const GaussianInt& n) const {
        const Int idx = group_.index_of(n);
        if (idx < 0) return {0.0, 0.0};
        return unit_root(phase(chi, idx), group_.exponent());
    }

    bool is_proper(const MultiplicativeCharacter& chi) const {
        check(chi);
        for (const auto& kernel : kernels_) {
            bool witness = false;
            for (Int idx : kernel)
                if (phase(chi, idx) != 0) {
                    witness = true;
                    break;
                }
            if (!witness) return false;
        }
        return true;
    }

    Complex gauss_sum(const MultiplicativeCharacter& chi) const {
        check(chi);
        Complex acc{0.0, 0.0};
        const auto& elems = group_.elements();
        for (Int k = 0; k < group_.size(); ++k)
            acc += unit_root(phase(chi, k), group_.exponent()) * additive_char(modulus(), elems[static_cast<std::size_t>(k)], GaussianInt{1});
        return acc;
    }

    Int proper_count() const {
        return static_cast<Int>(std::count_if(characters_.begin(), characters_.end(), [](const auto& c) { return c.proper; }));
    }

private:
    void check(const MultiplicativeCharacter& chi) const {
        if (chi.modulus != modulus() || chi.generator_orders != group_.orders())
            throw std::invalid_argument("character belongs to a different modulus");
    }

    void enumerate() {
        const auto& orders = group_.orders();
        std::vector<Int> digits(orders.size(), 0);
        for (Int count = 0; count < group_.size(); ++count) {
            characters_.push_back({modulus(), orders, digits, false});
            for (std::size_t j = 0; j < digits.size(); ++j) {
                if (++digits[j] < orders[j]) break;
                digits[j] = 0;
            }
        }
    }

    // For every canonical divisor b with N(b) < N(q): the reduced classes r == 1 mod b.
    void build_kernels() {
        const Int n = norm(modulus());
        for (const auto& b : divisors(modulus())) {
            if (norm(b) >= n) continue;
            std::vector<Int> kernel;
            for (Int k = 0; k < group_.size(); ++k)
                if (divides(b, group_.elements()[static_cast<std::size_t>(k)] - GaussianInt{1})) kernel.push_back(k);
            kernels_.push_back(std::move(kernel));
        }
    }

    UnitGroup group_;
    std::vector<MultiplicativeCharacter> characters_;
    std::vector<std::vector<Int>> kernels_;
};

}  // namespace gls
