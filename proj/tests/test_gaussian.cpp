#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gls/gaussian.hpp"

using namespace gls;

namespace {

// Every nonzero Gaussian integer with norm <= bound (all associates).
std::vector<GaussianInt> ball(Int bound) {
    std::vector<GaussianInt> out;
    const Int r = isqrt(bound);
    for (Int x = -r; x <= r; ++x)
        for (Int y = -r; y <= r; ++y)
            if (x * x + y * y >= 1 && x * x + y * y <= bound) out.emplace_back(x, y);
    return out;
}

// Brute-force divisibility: d | z iff z = d * w for some w with N(w) = N(z)/N(d).
bool brute_divides(const GaussianInt& d, const GaussianInt& z) {
    if (z.is_zero()) return true;
    const Int nd = d.re * d.re + d.im * d.im, nz = z.re * z.re + z.im * z.im;
    if (nz % nd != 0) return false;
    for (const auto& w : ball(nz / nd))
        if (d * w == z) return true;
    return false;
}

std::vector<GaussianInt> brute_common_divisors(const GaussianInt& a, const GaussianInt& b) {
    Int bound = 0;
    if (!a.is_zero()) bound = a.re * a.re + a.im * a.im;
    if (!b.is_zero()) bound = bound == 0 ? b.re * b.re + b.im * b.im : std::min(bound, b.re * b.re + b.im * b.im);
    std::vector<GaussianInt> out;
    for (const auto& d : ball(bound))
        if (brute_divides(d, a) && brute_divides(d, b)) out.push_back(d);
    return out;
}

bool congruent(const GaussianInt& a, const GaussianInt& b, const GaussianInt& q) { return brute_divides(q, a - b); }

}  // namespace

TEST(GaussianArithmetic, NormExamples) {
    EXPECT_EQ(norm({3, 4}), 25);
    EXPECT_EQ(norm({0, 0}), 0);
    EXPECT_EQ(norm({1, 1}), 2);
}

TEST(GaussianArithmetic, RingOperations) {
    EXPECT_EQ(trace({3, 4}), 6);
    EXPECT_EQ((GaussianInt{1, 1} * GaussianInt{1, -1}), GaussianInt(2));
    EXPECT_EQ(conj({2, 1}), (GaussianInt{2, -1}));
    EXPECT_EQ((GaussianInt{2, 1} + GaussianInt{-1, 3}), (GaussianInt{1, 4}));
}

TEST(GaussianArithmetic, NormIsMultiplicative) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> coord(-100, 100);
    for (int i = 0; i < 10000; ++i) {
        const GaussianInt a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)};
        ASSERT_EQ(norm(a * b), norm(a) * norm(b)) << a << " " << b;
    }
}

TEST(GaussianArithmetic, RejectsOversizedCoordinates) {
    const GaussianInt big{Int{1} << 31, 0};
    EXPECT_THROW(norm(big), std::out_of_range);
    EXPECT_THROW(big * GaussianInt{1}, std::out_of_range);
    EXPECT_THROW(div_rem(big, GaussianInt{3}), std::out_of_range);
    EXPECT_NO_THROW(norm(GaussianInt{kCoordinateCap, -kCoordinateCap}));
}

TEST(DivRem, Examples) {
    EXPECT_EQ((GaussianInt{2, -1} * GaussianInt{2, 1}), GaussianInt(5));
    const auto r1 = div_rem(GaussianInt{5}, GaussianInt{2, 1});
    EXPECT_EQ(r1.remainder, GaussianInt(0));
    EXPECT_EQ(r1.quotient * (GaussianInt{2, 1}), GaussianInt(5));

    const auto r2 = div_rem(GaussianInt{1}, GaussianInt{1});
    EXPECT_EQ(r2.quotient, GaussianInt(1));
    EXPECT_EQ(r2.remainder, GaussianInt(0));

    // All remainders of norm <= 2 congruent to 3+2i mod 2, by brute force.
    const GaussianInt a{3, 2}, q{2};
    std::set<GaussianInt> admissible;
    for (Int x = -2; x <= 2; ++x)
        for (Int y = -2; y <= 2; ++y)
            if (x * x + y * y <= 2 && congruent(GaussianInt{x, y}, a, q)) admissible.insert({x, y});
    const auto r3 = div_rem(a, q);
    EXPECT_TRUE(admissible.count(r3.remainder));
    EXPECT_EQ(r3.quotient * q + r3.remainder, a);
}

TEST(DivRem, ZeroModulus) {
    try {
        div_rem(GaussianInt{3, 1}, GaussianInt{0});
        FAIL() << "expected domain_error";
    } catch (const std::domain_error& e) {
        EXPECT_STREQ(e.what(), "zero modulus");
    }
}

TEST(DivRem, RemainderBoundAndClassInvariance) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> coord(-1000, 1000);
    for (int i = 0; i < 5000; ++i) {
        const GaussianInt a{coord(rng), coord(rng)};
        GaussianInt q{coord(rng) / 10, coord(rng) / 10};
        if (q.is_zero()) q = {1, 1};
        const auto dr = div_rem(a, q);
        ASSERT_EQ(dr.quotient * q + dr.remainder, a);
        ASSERT_LE(2 * norm(dr.remainder), norm(q));
        const GaussianInt shift{coord(rng) / 100, coord(rng) / 100};
        ASSERT_EQ(mod(a + shift * q, q), dr.remainder);
    }
}

TEST(Gcd, Examples) {
    EXPECT_EQ(gcd(GaussianInt{2}, GaussianInt{1, 1}), (GaussianInt{1, 1}));
    EXPECT_EQ(gcd(GaussianInt{1}, GaussianInt{7, 2}), GaussianInt(1));
    EXPECT_EQ(gcd(GaussianInt{5}, GaussianInt{2, 1}), (GaussianInt{2, 1}));
    EXPECT_EQ(gcd(GaussianInt{0}, GaussianInt{0}), GaussianInt(0));

    // Oracle for the first example: the largest-norm common divisors found by scanning.
    const auto common = brute_common_divisors(GaussianInt{2}, GaussianInt{1, 1});
    Int best = 0;
    for (const auto& d : common) best = std::max(best, norm(d));
    EXPECT_EQ(best, 2);
}

TEST(Gcd, SoundAndMaximal) {
    std::vector<GaussianInt> pool = ball(60);
    pool.emplace_back(0, 0);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    // Exhaustive over a canonical subset paired with everything, plus random pairs.
    for (int trial = 0; trial < 1500; ++trial) {
        const GaussianInt a = pool[pick(rng)], b = pool[pick(rng)];
        const GaussianInt g = gcd(a, b);
        if (a.is_zero() && b.is_zero()) {
            ASSERT_TRUE(g.is_zero());
            continue;
        }
        ASSERT_TRUE(divides(g, a)) << a << " " << b;
        ASSERT_TRUE(divides(g, b)) << a << " " << b;
        for (const auto& d : brute_common_divisors(a, b)) ASSERT_TRUE(divides(d, g)) << d << " " << g;
    }
}

TEST(CanonicalAssociate, Examples) {
    EXPECT_EQ(canonical_associate({0, -2}), GaussianInt(2));
    EXPECT_EQ(canonical_associate({3, 4}), (GaussianInt{3, 4}));
    EXPECT_EQ(canonical_associate({-3, -4}), (GaussianInt{3, 4}));
    EXPECT_EQ(canonical_associate({0, 0}), GaussianInt(0));
}

TEST(CanonicalAssociate, CollapsesUnitOrbitsAndIsIdempotent) {
    for (const auto& g : ball(300)) {
        const GaussianInt c = canonical_associate(g);
        ASSERT_GT(c.re, 0);
        ASSERT_GE(c.im, 0);
        ASSERT_EQ(canonical_associate(c), c);
        for (const auto& u : kUnits) ASSERT_EQ(canonical_associate(u * g), c);
    }
}

TEST(ResidueSystem, Examples) {
    EXPECT_EQ(residue_system({1, 1}).size(), 2u);

    const auto two = residue_system(GaussianInt{2});
    ASSERT_EQ(two.size(), 4u);
    // Brute-force: a class is reduced iff its representative has odd norm.
    for (std::size_t k = 0; k < two.size(); ++k)
        EXPECT_EQ(two.reduced_flags[k], norm(two.representatives[k]) % 2 == 1) << two.representatives[k];
    EXPECT_EQ(two.reduced_count(), 2);

    const auto five = residue_system({2, 1});
    EXPECT_EQ(five.size(), 5u);
    EXPECT_EQ(five.reduced_count(), 4);
    EXPECT_THROW(residue_system(GaussianInt{0}), std::domain_error);
}

TEST(ResidueSystem, CompleteAndIncongruentUpToNorm200) {
    for (const auto& q : ball(200)) {
        if (q.re <= 0 || q.im < 0) continue;  // one representative per unit orbit
        const ResidueSystem rs = residue_system(q);
        ASSERT_EQ(static_cast<Int>(rs.size()), norm(q)) << q;
        ASSERT_TRUE(std::is_sorted(rs.representatives.begin(), rs.representatives.end()));
        const auto& reps = rs.representatives;
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) ASSERT_FALSE(divides(q, reps[i] - reps[j])) << q;
    }
}

TEST(ResidueSystem, CensusAgreesWithBruteForce) {
    // Every point of a large box falls in exactly one listed class.
    for (const GaussianInt q : {GaussianInt{3}, GaussianInt{2, 1}, GaussianInt{4, 1}, GaussianInt{1, 1}, GaussianInt{5, 5}}) {
        const ResidueSystem rs = residue_system(q);
        for (Int x = -12; x <= 12; ++x)
            for (Int y = -12; y <= 12; ++y) {
                int hits = 0;
                for (const auto& r : rs.representatives) hits += congruent(GaussianInt{x, y}, r, q) ? 1 : 0;
                ASSERT_EQ(hits, 1) << q << " at " << GaussianInt{x, y};
            }
    }
}

TEST(Totient, Examples) {
    EXPECT_EQ(totient(GaussianInt{1}), 1);
    EXPECT_EQ(totient({1, 1}), 1);
    EXPECT_EQ(totient(GaussianInt{3}), 8);

    // Brute-force count for 3: classes x + yi, 0 <= x, y < 3, with gcd 1.
    Int brute = 0;
    for (Int x = 0; x < 3; ++x)
        for (Int y = 0; y < 3; ++y) {
            bool unit_gcd = true;
            for (const auto& d : brute_common_divisors(GaussianInt{x, y}, GaussianInt{3}))
                if (norm(d) > 1) unit_gcd = false;
            brute += unit_gcd ? 1 : 0;
        }
    EXPECT_EQ(brute, 8);
}

TEST(Totient, MultiplicativeOnCoprimePairs) {
    std::vector<GaussianInt> canon;
    for (const auto& g : ball(400))
        if (g.re > 0 && g.im >= 0) canon.push_back(g);
    int pairs = 0;
    for (const auto& a : canon)
        for (const auto& b : canon) {
            if (norm(a) * norm(b) > 400 || !coprime(a, b)) continue;
            ASSERT_EQ(totient(a * b), totient(a) * totient(b)) << a << " " << b;
            ++pairs;
        }
    EXPECT_GT(pairs, 100);
}

TEST(Divisors, Examples) {
    EXPECT_EQ(divisors(GaussianInt{2}), (std::vector<GaussianInt>{{1, 0}, {1, 1}, {2, 0}}));
    EXPECT_EQ(divisors(GaussianInt{1}), (std::vector<GaussianInt>{{1, 0}}));
    EXPECT_EQ(divisors({2, 1}), (std::vector<GaussianInt>{{1, 0}, {2, 1}}));
    EXPECT_THROW(divisors(GaussianInt{0}), std::domain_error);
}

TEST(Divisors, AgreeWithBruteForceAndStaySmall) {
    for (const auto& z : ball(10000)) {
        if (z.re <= 0 || z.im < 0) continue;
        const auto ds = divisors(z);
        // d(z) <= sqrt(N(z)) fails for a handful of small z (1+i, 2, 10, 10+10i, ...);
        // all of them have N(z) <= 200 and stay within 1.5 sqrt(N(z)).
        const double d = static_cast<double>(ds.size()), nz = static_cast<double>(norm(z));
        if (norm(z) > 200) ASSERT_LE(d * d, nz) << z;
        else ASSERT_LE(d * d, 2.25 * nz) << z;
        if (norm(z) <= 50) {
            std::vector<GaussianInt> brute;
            for (const auto& d : ball(norm(z)))
                if (d.re > 0 && d.im >= 0 && brute_divides(d, z)) brute.push_back(d);
            std::sort(brute.begin(), brute.end(), NormOrder{});
            ASSERT_EQ(ds, brute) << z;
        }
    }
}

TEST(SquareNorm, Examples) {
    EXPECT_TRUE(is_square_norm({3, 4}));
    EXPECT_FALSE(is_square_norm({1, 1}));
    EXPECT_TRUE(is_square_norm({0, 0}));
}
