#pragma once

// Large sieve sums over Gaussian moduli:
//
//   Sigma = sum_{q in family} sum_{r mod q, (r,q)=1} |sum_n a_n e(Re(n r / q))|^2
//
// evaluated directly (the reference path) and through a per-modulus
// two-dimensional DFT (the fast path), plus the multiplicative-character
// variant and the right-hand sides of the four inequalities.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <optional>
#include <vector>

#include "characters.hpp"
#include "coefficients.hpp"
#include "moduli.hpp"

namespace gls {

// T(q, r) = sum_n a_n e(Re(n r conj(q)) / N(q)).
inline Complex inner_sum(const GaussianInt& q, const GaussianInt& r, const CoefficientSequence& coeffs) {
    require_nonzero(q);
    Complex acc{0.0, 0.0};
    for (const auto& e : coeffs.entries()) {
        if (e.a == Complex{}) continue;
        acc += e.a * additive_char(q, r, e.n);
    }
    return acc;
}

// sum over reduced r mod q of |T(q, r)|^2.
inline double modulus_lhs(const GaussianInt& q, const CoefficientSequence& coeffs) {
    const ResidueSystem rs = residue_system(q);
    double acc = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k)
        if (rs.reduced_flags[k]) acc += std::norm(inner_sum(q, rs.representatives[k], coeffs));
    return acc;
}

// Same sum over the full residue system.
inline double modulus_full_lhs(const GaussianInt& q, const CoefficientSequence& coeffs) {
    const ResidueSystem rs = residue_system(q);
    double acc = 0.0;
    for (const auto& r : rs.representatives) acc += std::norm(inner_sum(q, r, coeffs));
    return acc;
}

// sum over classes c mod q of |sum_{n == c mod q} a_n|^2.
inline double class_aggregate_energy(const GaussianInt& q, const CoefficientSequence& coeffs) {
    std::unordered_map<GaussianInt, Complex, GaussianHash> agg;
    for (const auto& e : coeffs.entries()) agg[mod(e.n, q)] += e.a;
    double acc = 0.0;
    for (const auto& [key, v] : agg) acc += std::norm(v);
    return acc;
}

inline double sieve_lhs(const ModuliFamily& family, const CoefficientSequence& coeffs) {
    double acc = 0.0;
    for (const auto& q : family.enumerate()) acc += modulus_lhs(q, coeffs);
    return acc;
}

namespace detail {

// FFTW planning is not thread-safe; execution is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

class Dft2d {
public:
    explicit Dft2d(int size) : size_(size) {
        const auto count = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
        data_ = fftw_alloc_complex(count);
        if (data_ == nullptr) throw std::bad_alloc();
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = fftw_plan_dft_2d(size, size, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    Dft2d(const Dft2d&) = delete;
    Dft2d& operator=(const Dft2d&) = delete;
    ~Dft2d() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(data_);
    }

    Complex* data() { return reinterpret_cast<Complex*>(data_); }
    void execute() { fftw_execute(plan_); }

private:
    int size_;
    fftw_complex* data_ = nullptr;
    fftw_plan plan_ = nullptr;
};

}  // namespace detail

// Reduced-residue energy of one modulus via one M x M DFT, M = N(q).
// T(q, r) only depends on n through (s mod M, t mod M): with w = r conj(q),
// T = sum_{a,b} A[a][b] e((a w.re - b w.im) / M) = DFT(A)[-w.re mod M][w.im mod M].
inline double modulus_lhs_fast(const GaussianInt& q, const CoefficientSequence& coeffs) {
    require_nonzero(q);
    const Int m = norm(q);
    detail::Dft2d dft(static_cast<int>(m));
    Complex* grid = dft.data();
    std::fill(grid, grid + m * m, Complex{});
    for (const auto& e : coeffs.entries()) grid[floor_mod(e.n.re, m) * m + floor_mod(e.n.im, m)] += e.a;
    dft.execute();

    const ResidueSystem rs = residue_system(q);
    double acc = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        if (!rs.reduced_flags[k]) continue;
        const GaussianInt w = rs.representatives[k] * conj(q);
        acc += std::norm(grid[floor_mod(-w.re, m) * m + floor_mod(w.im, m)]);
    }
    return acc;
}

inline double sieve_lhs_fast(const ModuliFamily& family, const CoefficientSequence& coeffs) {
    double acc = 0.0;
    for (const auto& q : family.enumerate()) acc += modulus_lhs_fast(q, coeffs);
    return acc;
}

// sum over square-norm q in the window of N(q)/Phi(q) * sum_{chi proper} |sum_n a_n chi(n)|^2.
// chi(n) = 0 unless n is coprime to q; in particular chi(0) = 0.
inline double multiplicative_lhs(const NormWindow& window, const CoefficientSequence& coeffs, bool include_unit_modulus = true) {
    const auto moduli = ModuliFamily(FamilyKind::SquareNorm, window).enumerate();
    for (const auto& q : moduli)
        if (norm(q) > kCharacterNormCap) throw std::out_of_range("norm cap exceeded for character tables");

    double acc = 0.0;
    for (const auto& q : moduli) {
        if (!include_unit_modulus && norm(q) == 1) continue;
        const CharacterTable table(q);
        const UnitGroup& group = table.group();
        std::vector<Complex> by_class(static_cast<std::size_t>(group.size()));
        for (const auto& e : coeffs.entries()) {
            const Int idx = group.index_of(e.n);
            if (idx >= 0) by_class[static_cast<std::size_t>(idx)] += e.a;
        }
        double per_q = 0.0;
        for (const auto& chi : table.characters()) {
            if (!chi.proper) continue;
            Complex s{0.0, 0.0};
            for (Int k = 0; k < group.size(); ++k) {
                const Complex b = by_class[static_cast<std::size_t>(k)];
                if (b != Complex{}) s += b * unit_root(table.phase(chi, k), group.exponent());
            }
            per_q += std::norm(s);
        }
        acc += static_cast<double>(norm(q)) / static_cast<double>(group.size()) * per_q;
    }
    return acc;
}

// Right-hand sides with implied constant 1.
inline double bound_t1(double Q, double N, double Z) { return (Q * Q + N) * Z; }

inline double bound_t2(double Q, double N, double Z) { return (Q * Q * Q + Q * Q * std::sqrt(N) + N) * Z; }

inline double bound_t3(double Q, double N, double Z, double epsilon) {
    return std::pow(Q * N, epsilon) * (Q * Q * Q + Q * Q * std::sqrt(N) + std::sqrt(Q) * N) * Z;
}

// The multiplicative-character inequality has the same right-hand side.
inline double bound_t4(double Q, double N, double Z, double epsilon) { return bound_t3(Q, N, Z, epsilon); }

}  // namespace gls
