#pragma once

// Double large sieve in dimension K in {1, 2}, with strict box and proximity
// constraints:
//
//   |B(a,b;X,Y)|^2 <= (2 pi^2)^K prod_k (1 + X_k Y_k) B(b;X) B(a;Y).

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sieve_sum.hpp"
#include "spacing.hpp"

namespace gls {

struct WeightedPoint {
    std::array<double, 2> x{0.0, 0.0};
    Complex coeff{0.0, 0.0};
};

struct BilinearInstance {
    int K = 2;
    std::vector<WeightedPoint> xs;
    std::vector<WeightedPoint> ys;
    std::array<double, 2> box_x{1.0, 1.0};
    std::array<double, 2> box_y{1.0, 1.0};

    void validate() const {
        if (K != 1 && K != 2) throw std::invalid_argument("dimension must be 1 or 2");
        for (int k = 0; k < K; ++k)
            if (!(box_x[k] > 0.0) || !(box_y[k] > 0.0)) throw std::invalid_argument("box sides must be positive");
    }
};

namespace detail {
inline bool strictly_inside(const WeightedPoint& p, const std::array<double, 2>& box, int dims) {
    for (int k = 0; k < dims; ++k)
        if (!(std::abs(p.x[k]) < box[k])) return false;
    return true;
}
}  // namespace detail

inline Complex bilinear_form(const BilinearInstance& inst) {
    inst.validate();
    Complex acc{0.0, 0.0};
    for (const auto& x : inst.xs) {
        if (!detail::strictly_inside(x, inst.box_x, inst.K)) continue;
        for (const auto& y : inst.ys) {
            if (!detail::strictly_inside(y, inst.box_y, inst.K)) continue;
            double dot = 0.0;
            for (int k = 0; k < inst.K; ++k) dot += x.x[k] * y.x[k];
            acc += x.coeff * y.coeff * std::polar(1.0, 2.0 * std::numbers::pi * dot);
        }
    }
    return acc;
}

// Sum over ordered pairs (p, p') with |p_k - p'_k| < 1/(2 box_k) for every k of |c(p) c(p')|.
inline double proximity_form(const std::vector<WeightedPoint>& points, const std::array<double, 2>& opposite_box, int dims) {
    double acc = 0.0;
    for (const auto& p : points)
        for (const auto& pp : points) {
            bool near = true;
            for (int k = 0; k < dims && near; ++k) near = std::abs(p.x[k] - pp.x[k]) < 1.0 / (2.0 * opposite_box[k]);
            if (near) acc += std::abs(p.coeff) * std::abs(pp.coeff);
        }
    return acc;
}

struct DlsCheck {
    double lhs_squared = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

inline DlsCheck check_dls(const BilinearInstance& inst) {
    inst.validate();
    DlsCheck out;
    out.lhs_squared = std::norm(bilinear_form(inst));
    double factor = 1.0;
    for (int k = 0; k < inst.K; ++k) factor *= 2.0 * std::numbers::pi * std::numbers::pi * (1.0 + inst.box_x[k] * inst.box_y[k]);
    out.rhs = factor * proximity_form(inst.ys, inst.box_x, inst.K) * proximity_form(inst.xs, inst.box_y, inst.K);
    out.holds = out.lhs_squared <= out.rhs * (1.0 + 1e-9);
    return out;
}

// The sieve's own instance: X the coefficient support with a_n, Y the points
// (f((xu + yv)/N(q)), f((xv - yu)/N(q))) over q in the family and reduced r = x + yi,
// weighted by b = conj(T(q, r)); boxes X_k = sqrt(N), Y_k = 1/2.
inline BilinearInstance sieve_bilinear_instance(const ModuliFamily& family, const CoefficientSequence& coeffs) {
    BilinearInstance inst;
    inst.K = 2;
    const double root = std::sqrt(static_cast<double>(coeffs.radius_sq()));
    inst.box_x = {root, root};
    inst.box_y = {0.5, 0.5};
    for (const auto& e : coeffs.entries())
        inst.xs.push_back({{static_cast<double>(e.n.re), static_cast<double>(e.n.im)}, e.a});
    for (const auto& q : family.enumerate()) {
        const Int m = norm(q);
        const ResidueSystem rs = residue_system(q);
        for (std::size_t k = 0; k < rs.size(); ++k) {
            if (!rs.reduced_flags[k]) continue;
            const GaussianInt r = rs.representatives[k];
            const double f1 = static_cast<double>(scaled_f(r.re * q.re + r.im * q.im, m)) / static_cast<double>(2 * m);
            const double f2 = static_cast<double>(scaled_f(r.re * q.im - r.im * q.re, m)) / static_cast<double>(2 * m);
            inst.ys.push_back({{f1, f2}, std::conj(inner_sum(q, r, coeffs))});
        }
    }
    return inst;
}

}  // namespace gls
