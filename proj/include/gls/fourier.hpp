#pragma once

// Poisson-summation identities and congruence counts behind the Fourier
// treatment of the disk-counting problem.

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "characters.hpp"
#include "moduli.hpp"
#include "spacing.hpp"

namespace gls {

namespace detail {
// sum_{j >= 0} exp(-pi (a + j)^2 s) for a >= 0, s > 0, bounded by a geometric series.
inline double gaussian_tail_bound(double a, double s) {
    const double first = std::exp(-std::numbers::pi * a * a * s);
    const double ratio = std::exp(-std::numbers::pi * (2.0 * a + 1.0) * s);
    return first / (1.0 - ratio);
}
}  // namespace detail

struct ThetaCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tail_bound = 0.0;
};

// sum_u exp(-pi u^2 / Q^2) e(u theta)  versus  Q sum_g exp(-pi (g - theta)^2 Q^2),
// both truncated to |index| <= cutoff.
inline ThetaCheck theta_identity_check(double qparam, double theta, Int cutoff) {
    if (qparam < 1.0) throw std::invalid_argument("Qparam must be >= 1");
    if (theta < -0.5 || theta > 0.5) throw std::invalid_argument("theta must lie in [-1/2, 1/2]");
    const double c = static_cast<double>(cutoff);
    const double tail = 2.0 * detail::gaussian_tail_bound(c + 1.0, 1.0 / (qparam * qparam)) +
                        2.0 * qparam * detail::gaussian_tail_bound(c + 0.5, qparam * qparam);
    if (!(tail < 1e-12)) throw std::invalid_argument("insufficient cutoff");

    ThetaCheck out;
    out.tail_bound = tail;
    double re = 0.0, im = 0.0;
    for (Int u = -cutoff; u <= cutoff; ++u) {
        const double w = std::exp(-std::numbers::pi * static_cast<double>(u * u) / (qparam * qparam));
        re += w * std::cos(2.0 * std::numbers::pi * static_cast<double>(u) * theta);
        im += w * std::sin(2.0 * std::numbers::pi * static_cast<double>(u) * theta);
    }
    out.lhs = re;  // the imaginary part cancels by symmetry u -> -u
    for (Int g = -cutoff; g <= cutoff; ++g) {
        const double t = static_cast<double>(g) - theta;
        out.rhs += qparam * std::exp(-std::numbers::pi * t * t * qparam * qparam);
    }
    out.residual = std::hypot(out.lhs - out.rhs, im);
    return out;
}

// Smallest cutoff for which theta_identity_check certifies its tails.
inline Int theta_cutoff(double qparam) {
    for (Int c = 1;; ++c) {
        const double cc = static_cast<double>(c);
        const double tail = 2.0 * detail::gaussian_tail_bound(cc + 1.0, 1.0 / (qparam * qparam)) +
                            2.0 * qparam * detail::gaussian_tail_bound(cc + 0.5, qparam * qparam);
        if (tail < 1e-13) return c;
    }
}

struct CongruenceCountInstance {
    Int u2 = 1;
    Int x2 = 0;
    Int y2 = 0;
    Int gamma = 0;
    double U = 0.0;
    double V = 0.0;
    Int d = 1;         // gcd(x2, u2)
    Int x2_prime = 0;  // x2 / d
    Int u2_prime = 1;  // u2 / d
};

inline CongruenceCountInstance make_congruence_instance(Int u2, Int x2, Int y2, Int gamma, double U, double V) {
    if (u2 <= 0) throw std::invalid_argument("u2 must be positive");
    if (U < 0.0 || V < 0.0) throw std::invalid_argument("U and V must be nonnegative");
    if (!coprime(GaussianInt{x2, y2}, GaussianInt{u2})) throw std::invalid_argument("invalid instance: x2 + y2 i not coprime to u2");
    CongruenceCountInstance inst{u2, x2, y2, gamma, U, V};
    inst.d = std::gcd(x2, u2);
    inst.x2_prime = x2 / inst.d;
    inst.u2_prime = u2 / inst.d;
    if (std::gcd(inst.d, y2) != 1) throw std::invalid_argument("invalid instance: gcd(d, y2) != 1");
    return inst;
}

// T_gamma(U, V) = #{ |alpha| <= U, |beta| <= V : alpha x2 - beta y2 == gamma mod u2 }.
inline Int congruence_count(const CongruenceCountInstance& inst) {
    const auto umax = static_cast<Int>(std::floor(inst.U));
    const auto vmax = static_cast<Int>(std::floor(inst.V));
    Int count = 0;
    for (Int alpha = -umax; alpha <= umax; ++alpha)
        for (Int beta = -vmax; beta <= vmax; ++beta)
            if (floor_mod(alpha * inst.x2 - beta * inst.y2 - inst.gamma, inst.u2) == 0) ++count;
    return count;
}

namespace detail {
// Inverse of a modulo m (gcd(a, m) = 1, m >= 1).
inline Int mod_inverse(Int a, Int m) {
    if (m == 1) return 0;
    Int r0 = floor_mod(a, m), r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        const Int t = r0 / r1;
        r0 -= t * r1;
        std::swap(r0, r1);
        s0 -= t * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::invalid_argument("not invertible");
    return floor_mod(s0, m);
}

// #{ n in [-k, k] : n == c mod m }.
inline Int count_in_class(Int k, Int c, Int m) {
    if (k < 0) return 0;
    return floor_div(k - c, m) - floor_div(-k - 1 - c, m);
}
}  // namespace detail

// The same count through the equivalent system
//   beta == -inv(y2) gamma mod d,  alpha == inv(x2') (beta y2 + gamma)/d mod u2'.
inline Int congruence_count_structured(const CongruenceCountInstance& inst) {
    const auto umax = static_cast<Int>(std::floor(inst.U));
    const auto vmax = static_cast<Int>(std::floor(inst.V));
    const Int beta_class = floor_mod(-detail::mod_inverse(inst.y2, inst.d) * inst.gamma, inst.d);
    const Int x_inv = detail::mod_inverse(inst.x2_prime, inst.u2_prime);
    Int count = 0;
    for (Int beta = -vmax; beta <= vmax; ++beta) {
        if (floor_mod(beta - beta_class, inst.d) != 0) continue;
        const Int rhs = (beta * inst.y2 + inst.gamma) / inst.d;  // exact by the class condition
        const Int alpha_class = floor_mod(x_inv * rhs, inst.u2_prime);
        count += detail::count_in_class(umax, alpha_class, inst.u2_prime);
    }
    return count;
}

// T_gamma(U, V) <= (1 + 2V/d)(1 + 2U/u2'), compared without division.
inline bool congruence_count_bound_check(const CongruenceCountInstance& inst) {
    const double t = static_cast<double>(congruence_count(inst));
    const double d = static_cast<double>(inst.d), up = static_cast<double>(inst.u2_prime);
    return t * d * up <= (d + 2.0 * inst.V) * (up + 2.0 * inst.U);
}

enum class WeightKind { ExpLinear, ExpSqrt };

// Phi(z) = exp(-pi z) or exp(-sqrt z) on z >= 0; both positive on [1/2, 1].
struct WeightFunction {
    WeightKind kind = WeightKind::ExpLinear;

    double operator()(double z) const {
        if (z < 0.0) throw std::domain_error("weight evaluated at negative argument");
        return kind == WeightKind::ExpLinear ? std::exp(-std::numbers::pi * z) : std::exp(-std::sqrt(z));
    }

    // z beyond which Phi(z) < 1e-17.
    double support_cutoff() const { return kind == WeightKind::ExpLinear ? 17.0 * std::log(10.0) / std::numbers::pi : 40.0 * 40.0; }
};

struct LatticeSumResult {
    double value = 0.0;
    double tail_bound = 0.0;  // certified bound on the truncated remainder
    std::size_t moduli = 0;
};

namespace detail {
// sum over canonical q with N(q) > limit of Phi(N(q)/qw), using #{N(q) <= X} <= (sqrt X + 1)^2.
inline double moduli_tail_bound(const WeightFunction& weight, double qw, double limit) {
    double bound = 0.0;
    for (double lo = limit; lo < 1e18; lo *= 2.0) {
        const double hi = 2.0 * lo;
        const double count = (std::sqrt(hi) + 1.0) * (std::sqrt(hi) + 1.0);
        const double term = count * weight(lo / qw);
        bound += term;
        if (term < 1e-30) break;
    }
    return bound;
}

inline std::vector<GaussianInt> weighted_moduli(const ModuliFamily& family, const WeightFunction& weight, double qw) {
    return family.with_window({0.0, weight.support_cutoff() * qw}).enumerate();
}
}  // namespace detail

// sum_{alpha,beta} exp(-pi (alpha^2 + beta^2) scale) sum_{q in S} Phi(N(q)/qw) e((alpha a_q + beta b_q)/N(q2)),
// with (a_q, b_q) = (uk + vl, -vk + ul). The disk-count normalisation is scale = R^2 = 4Q/N.
inline LatticeSumResult weighted_lattice_sum(const SpacingInstance& inst, const ModuliFamily& family, const WeightFunction& weight,
                                             double qw, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    const auto moduli = detail::weighted_moduli(family, weight, qw);
    const Int d = inst.modulus_norm();

    // |alpha| <= A with exp(-pi A^2 scale) < 1e-17.
    const auto amax = static_cast<Int>(std::ceil(std::sqrt(17.0 * std::log(10.0) / (std::numbers::pi * scale))));
    std::vector<double> g(static_cast<std::size_t>(2 * amax + 1));
    for (Int a = -amax; a <= amax; ++a) g[static_cast<std::size_t>(a + amax)] = std::exp(-std::numbers::pi * static_cast<double>(a * a) * scale);

    LatticeSumResult out;
    out.moduli = moduli.size();
    double weight_total = 0.0;
    for (const auto& q : moduli) {
        const double w = weight(static_cast<double>(norm(q)) / qw);
        weight_total += w;
        const auto [aq, bq] = lattice_numerators(inst, q.re, q.im);
        double acc = 0.0;
        for (Int alpha = -amax; alpha <= amax; ++alpha)
            for (Int beta = -amax; beta <= amax; ++beta) {
                const Int phase = floor_mod(alpha * floor_mod(aq, d) + beta * floor_mod(bq, d), d);
                acc += g[static_cast<std::size_t>(alpha + amax)] * g[static_cast<std::size_t>(beta + amax)] *
                       std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(d));
            }
        out.value += w * acc;
    }
    const double theta = 1.0 + 2.0 * detail::gaussian_tail_bound(1.0, scale);
    const double freq_tail = 2.0 * theta * 2.0 * detail::gaussian_tail_bound(static_cast<double>(amax + 1), scale);
    out.tail_bound = weight_total * freq_tail + theta * theta * detail::moduli_tail_bound(weight, qw, weight.support_cutoff() * qw);
    return out;
}

// sum_x exp(-pi (c - x)^2 / scale) for real c.
inline double periodised_gaussian(double c, double scale) {
    const double centre = std::floor(c);
    const auto reach = static_cast<Int>(std::ceil(std::sqrt(17.0 * std::log(10.0) * scale / std::numbers::pi))) + 1;
    double acc = 0.0;
    for (Int j = -reach; j <= reach; ++j) {
        const double t = c - (centre + static_cast<double>(j));
        acc += std::exp(-std::numbers::pi * t * t / scale);
    }
    return acc;
}

// The spatial form sum_{q in S} Phi(N(q)/qw) sum_{x,y} exp(-pi ((a_q/D - x)^2 + (b_q/D - y)^2) / scale),
// which Poisson summation maps to scale * weighted_lattice_sum(...).
inline double spatial_lattice_sum(const SpacingInstance& inst, const ModuliFamily& family, const WeightFunction& weight, double qw,
                                  double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    const Int d = inst.modulus_norm();
    double acc = 0.0;
    for (const auto& q : detail::weighted_moduli(family, weight, qw)) {
        const auto [aq, bq] = lattice_numerators(inst, q.re, q.im);
        const double ca = static_cast<double>(floor_mod(aq, d)) / static_cast<double>(d);
        const double cb = static_cast<double>(floor_mod(bq, d)) / static_cast<double>(d);
        acc += weight(static_cast<double>(norm(q)) / qw) * periodised_gaussian(ca, scale) * periodised_gaussian(cb, scale);
    }
    return acc;
}

struct DominationCheck {
    Int count = 0;       // q in (qw/2, qw] with f-point in D_R(0)
    double majorant = 0.0;  // e^{2 pi} * spatial_lattice_sum with scale R^2
    bool holds() const { return static_cast<double>(count) <= majorant; }
};

// On the window, Phi(N(q)/qw) >= e^{-pi} for Phi(z) = e^{-pi z}, and a point of D_R(0)
// has its nearest Gaussian term >= e^{-pi}; hence count <= e^{2 pi} * majorant sum.
inline DominationCheck indicator_domination_check(const SpacingInstance& inst, const ModuliFamily& family, double qw,
                                                  const ExactRational& radius) {
    require_small_radius(radius);
    const WeightFunction weight{WeightKind::ExpLinear};
    DominationCheck out;
    const Int d = inst.modulus_norm();
    for (const auto& q : family.with_window(NormWindow::dyadic(qw)).enumerate())
        if (detail::scaled_in_disk(f_point_scaled(inst, q.re, q.im), d, radius)) ++out.count;
    const double r = to_double(radius);
    out.majorant = std::exp(2.0 * std::numbers::pi) * spatial_lattice_sum(inst, family, weight, qw, r * r);
    return out;
}

}  // namespace gls
