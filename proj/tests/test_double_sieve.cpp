#include <gtest/gtest.h>

#include <random>

#include "gls/double_sieve.hpp"

using namespace gls;

namespace {

BilinearInstance random_instance(std::mt19937_64& rng, int dims) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0), angle(0.0, 2.0 * std::numbers::pi), side(0.1, 3.0);
    std::uniform_int_distribution<int> count(0, 50);
    BilinearInstance inst;
    inst.K = dims;
    inst.box_x = {side(rng), side(rng)};
    inst.box_y = {side(rng), side(rng)};
    const int nx = count(rng), ny = count(rng);
    for (int i = 0; i < nx; ++i) inst.xs.push_back({{coord(rng), dims == 2 ? coord(rng) : 0.0}, std::polar(1.0, angle(rng))});
    for (int i = 0; i < ny; ++i) inst.ys.push_back({{coord(rng), dims == 2 ? coord(rng) : 0.0}, std::polar(1.0, angle(rng))});
    return inst;
}

// Pair census written independently: count close index pairs first, then weight them.
double census(const std::vector<WeightedPoint>& pts, const std::array<double, 2>& box, int dims) {
    std::vector<std::pair<std::size_t, std::size_t>> close;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            bool ok = true;
            for (int k = 0; k < dims; ++k)
                if (2.0 * box[k] * std::abs(pts[i].x[k] - pts[j].x[k]) >= 1.0) ok = false;
            if (ok) close.emplace_back(i, j);
        }
    double s = 0.0;
    for (const auto& [i, j] : close) s += std::abs(pts[i].coeff) * std::abs(pts[j].coeff);
    return s;
}

}  // namespace

TEST(BilinearForm, Examples) {
    BilinearInstance one;
    one.xs = {{{0.0, 0.0}, 1.0}};
    one.ys = {{{0.0, 0.0}, 1.0}};
    EXPECT_NEAR(std::abs(bilinear_form(one) - Complex(1.0, 0.0)), 0.0, 1e-15);

    BilinearInstance empty = one;
    empty.ys.clear();
    EXPECT_EQ(bilinear_form(empty), Complex(0.0, 0.0));

    // Two points each side, expanded by hand.
    BilinearInstance two;
    two.K = 2;
    two.box_x = {2.0, 2.0};
    two.box_y = {1.0, 1.0};
    two.xs = {{{0.5, 1.0}, {1.0, 0.0}}, {{-1.5, 0.25}, {0.0, 2.0}}};
    two.ys = {{{0.2, -0.4}, {3.0, 0.0}}, {{0.0, 0.5}, {1.0, -1.0}}};
    Complex hand{0.0, 0.0};
    auto e = [](double t) { return Complex(std::cos(2.0 * std::numbers::pi * t), std::sin(2.0 * std::numbers::pi * t)); };
    hand += Complex(1.0, 0.0) * Complex(3.0, 0.0) * e(0.5 * 0.2 + 1.0 * -0.4);
    hand += Complex(1.0, 0.0) * Complex(1.0, -1.0) * e(0.5 * 0.0 + 1.0 * 0.5);
    hand += Complex(0.0, 2.0) * Complex(3.0, 0.0) * e(-1.5 * 0.2 + 0.25 * -0.4);
    hand += Complex(0.0, 2.0) * Complex(1.0, -1.0) * e(-1.5 * 0.0 + 0.25 * 0.5);
    EXPECT_NEAR(std::abs(bilinear_form(two) - hand), 0.0, 1e-12);
}

TEST(BilinearForm, BoxesAreStrict) {
    BilinearInstance inst;
    inst.K = 1;
    inst.box_x = {1.0, 1.0};
    inst.box_y = {1.0, 1.0};
    inst.xs = {{{1.0, 0.0}, 1.0}, {{0.5, 0.0}, 1.0}};
    inst.ys = {{{0.0, 0.0}, 1.0}};
    EXPECT_NEAR(std::abs(bilinear_form(inst) - Complex(1.0, 0.0)), 0.0, 1e-15);
    inst.K = 3;
    EXPECT_THROW(bilinear_form(inst), std::invalid_argument);
}

TEST(BilinearForm, SwapSymmetry) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        BilinearInstance a = random_instance(rng, 2);
        BilinearInstance b = a;
        std::swap(b.xs, b.ys);
        std::swap(b.box_x, b.box_y);
        EXPECT_NEAR(std::abs(bilinear_form(a) - bilinear_form(b)), 0.0, 1e-9);
    }
}

TEST(ProximityForm, Examples) {
    const std::vector<WeightedPoint> single{{{0.3, 0.1}, {0.0, 2.0}}};
    EXPECT_NEAR(proximity_form(single, {1.0, 1.0}, 2), 4.0, 1e-15);

    const std::vector<WeightedPoint> far{{{0.0, 0.0}, 2.0}, {{5.0, 5.0}, {0.0, 3.0}}};
    EXPECT_NEAR(proximity_form(far, {1.0, 1.0}, 2), 13.0, 1e-15);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3), phase(0.0, 6.0);
    std::vector<WeightedPoint> cluster;
    for (int i = 0; i < 40; ++i) cluster.push_back({{jitter(rng), jitter(rng)}, std::polar(0.5 + 0.1 * i, phase(rng))});
    for (double side : {0.5, 1.0, 2.0, 4.0}) {
        const std::array<double, 2> box{side, side * 0.7};
        EXPECT_NEAR(proximity_form(cluster, box, 2), census(cluster, box, 2), 1e-9);
        double diag = 0.0;
        for (const auto& p : cluster) diag += std::norm(p.coeff);
        EXPECT_GE(proximity_form(cluster, box, 2), diag - 1e-12);
    }
}

TEST(Dls, Examples) {
    BilinearInstance one;
    one.K = 1;
    one.xs = {{{0.4, 0.0}, {2.0, 0.0}}};
    one.ys = {{{0.3, 0.0}, {0.0, 3.0}}};
    const auto c = check_dls(one);
    EXPECT_NEAR(c.lhs_squared, 36.0, 1e-12);
    EXPECT_NEAR(c.rhs, 2.0 * std::numbers::pi * std::numbers::pi * 2.0 * 36.0, 1e-9);
    EXPECT_TRUE(c.holds);
}

TEST(Dls, RandomInstancesHold) {
    std::mt19937_64 rng(77);
    for (int dims : {1, 2})
        for (int i = 0; i < 100; ++i) {
            const auto inst = random_instance(rng, dims);
            const auto c = check_dls(inst);
            ASSERT_TRUE(c.holds) << "K=" << dims << " instance " << i << ": " << c.lhs_squared << " > " << c.rhs;
            ASSERT_NEAR(c.rhs, std::pow(2.0 * std::numbers::pi * std::numbers::pi, dims) *
                                   (1.0 + inst.box_x[0] * inst.box_y[0]) * (dims == 2 ? 1.0 + inst.box_x[1] * inst.box_y[1] : 1.0) *
                                   census(inst.ys, inst.box_x, dims) * census(inst.xs, inst.box_y, dims),
                        1e-9 * std::max(1.0, c.rhs));
        }
}

TEST(Dls, SieveInstanceHolds) {
    for (Int radius_sq : {4, 16, 50}) {
        const auto coeffs = random_phases(radius_sq, 3);
        for (FamilyKind kind : {FamilyKind::AllGaussian, FamilyKind::NaturalIntegers}) {
            const ModuliFamily fam(kind, NormWindow::dyadic(kind == FamilyKind::AllGaussian ? 16.0 : 64.0));
            const auto inst = sieve_bilinear_instance(fam, coeffs);
            EXPECT_EQ(inst.xs.size(), coeffs.size());
            const auto c = check_dls(inst);
            EXPECT_TRUE(c.holds) << radius_sq;
            // With every point strictly inside, B = sum conj(T) T is the sieve sum itself.
            // The nominal boxes drop |s| = sqrt(N) and f = -1/2, so widen them slightly.
            BilinearInstance wide = inst;
            wide.box_x = {inst.box_x[0] + 1e-6, inst.box_x[1] + 1e-6};
            wide.box_y = {0.5 + 1e-6, 0.5 + 1e-6};
            const double lhs = sieve_lhs(fam, coeffs);
            EXPECT_NEAR(bilinear_form(wide).real(), lhs, 1e-9 * lhs);
            EXPECT_NEAR(bilinear_form(wide).imag(), 0.0, 1e-9 * lhs);
        }
    }
}
