#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "gls/moduli.hpp"
#include "gls/square_norm.hpp"

using namespace gls;

TEST(SquareNormScan, Examples) {
    EXPECT_EQ(enumerate_square_norm(4), (std::vector<GaussianInt>{{1, 0}, {2, 0}}));
    EXPECT_TRUE(enumerate_square_norm(0).empty());
    const auto upto25 = enumerate_square_norm(25);
    for (const GaussianInt g : {GaussianInt{1}, GaussianInt{2}, GaussianInt{3, 4}, GaussianInt{4, 3}, GaussianInt{5}})
        EXPECT_TRUE(std::find(upto25.begin(), upto25.end(), g) != upto25.end()) << g;
    EXPECT_THROW(enumerate_square_norm(100'000'001), std::out_of_range);
}

TEST(PythParam, Examples) {
    const auto four = enumerate_pyth_param(4);
    EXPECT_TRUE(std::find(four.begin(), four.end(), GaussianInt{2}) != four.end());
    EXPECT_TRUE(std::find(four.begin(), four.end(), GaussianInt{1}) != four.end());
    EXPECT_EQ(enumerate_pyth_param(1), (std::vector<GaussianInt>{{1, 0}}));
    const auto p25 = enumerate_pyth_param(25);
    EXPECT_TRUE(std::find(p25.begin(), p25.end(), GaussianInt(3, 4)) != p25.end());
    EXPECT_EQ((PythParam{2, 1}.modulus()), (GaussianInt{3, 4}));
    EXPECT_THROW(enumerate_pyth_param(100'000'001), std::out_of_range);
}

TEST(PythParam, TripleIdentityAndSoundness) {
    for (Int m = -18; m <= 18; ++m)
        for (Int n = -18; n <= 18; ++n) {
            if (m * m + n * n > 300) continue;
            const auto [a, b, c] = PythParam{m, n}.triple();
            ASSERT_EQ(a * a + b * b, c * c);
            ASSERT_TRUE(is_square_norm(PythParam{m, n}.modulus()));
        }
}

TEST(Coverage, Examples) {
    const auto d25 = coverage_diff(25);
    EXPECT_TRUE(d25.extraneous.empty());
    // 3 and 5 have square norms but imprimitive coordinates; (m^2 - n^2, 2mn) never reaches them.
    EXPECT_EQ(d25.missing, (std::vector<GaussianInt>{{3, 0}, {5, 0}}));

    const auto d1 = coverage_diff(1);
    EXPECT_TRUE(d1.missing.empty());
    EXPECT_TRUE(d1.extraneous.empty());
}

TEST(Coverage, PrimitiveModuliAreAllParametrised) {
    const auto truth = enumerate_square_norm(10'000);
    const auto param = enumerate_pyth_param(10'000);
    const std::set<GaussianInt> param_set(param.begin(), param.end());
    std::size_t primitive = 0;
    for (const auto& q : truth) {
        if (std::gcd(q.re, q.im) != 1) continue;
        ASSERT_TRUE(param_set.count(q)) << q;
        ++primitive;
    }
    EXPECT_GT(primitive, 10u);
}

TEST(Coverage, MissingModuliAreImprimitive) {
    const auto diff = coverage_diff(10'000);
    EXPECT_TRUE(diff.extraneous.empty());
    EXPECT_FALSE(diff.missing.empty());
    for (const auto& q : diff.missing) {
        EXPECT_GT(coordinate_gcd(q), 1) << q;
        EXPECT_TRUE(is_square_norm(q)) << q;
    }
}

TEST(Coverage, SieveFamilyUsesTheScan) {
    for (Int x : {1, 25, 100, 2500, 10'000}) {
        const auto fam = ModuliFamily(FamilyKind::SquareNorm, {0.0, static_cast<double>(x)}).enumerate();
        EXPECT_EQ(fam, enumerate_square_norm(x));
    }
}
