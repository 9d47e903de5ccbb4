#include "liouville/continued_fraction.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace liouville;

namespace {

ContinuedFraction make(std::initializer_list<long> a)
{
    std::vector<BigInt> terms;
    for (const long v : a) {
        terms.emplace_back(v);
    }
    return ContinuedFraction(PartialQuotients(std::move(terms)));
}

ContinuedFraction random_cf(std::mt19937_64& rng, std::size_t depth)
{
    std::vector<BigInt> terms;
    for (std::size_t i = 0; i < depth; ++i) {
        // Mostly small quotients, occasionally a large one.
        terms.push_back(rng() % 5 == 0 ? oracle::random_int(rng, 25) : BigInt(static_cast<unsigned long>(rng() % 9 + 1)));
    }
    return ContinuedFraction(PartialQuotients(std::move(terms)));
}

// Exact value of [0; a_1, ..., a_N] folded from the back.
Rational fold(const PartialQuotients& pq)
{
    Rational x = 0;
    for (std::size_t j = pq.depth(); j >= 1; --j) {
        x = 1 / (Rational(pq.a(j)) + x);
    }
    return x;
}

} // namespace

TEST(Convergents, Examples)
{
    const auto one = make({1});
    EXPECT_EQ(one.p(1), 1);
    EXPECT_EQ(one.q(1), 1);
    EXPECT_EQ(make({2}).convergent(1).value(), Rational(1, 2));

    const auto cf = make({1, 1, 1, 8});
    EXPECT_EQ(cf.convergent(0).value(), 0);
    EXPECT_EQ(cf.convergent(1).value(), 1);
    EXPECT_EQ(cf.convergent(2).value(), Rational(1, 2));
    EXPECT_EQ(cf.convergent(3).value(), Rational(2, 3));
    EXPECT_EQ(cf.p(4), 17);
    EXPECT_EQ(cf.q(4), 26);
    EXPECT_EQ(cf.p(4) * cf.q(3) - cf.p(3) * cf.q(4), -1);
    EXPECT_EQ(cf.convergent(4).value(), fold(cf.terms()));
}

TEST(Convergents, RejectsBadInput)
{
    EXPECT_THROW(PartialQuotients(std::vector<BigInt>{}), DomainError);
    EXPECT_THROW(PartialQuotients(std::vector<BigInt>{BigInt(1), BigInt(0)}), DomainError);
    EXPECT_THROW(PartialQuotients::parse("1,x"), DomainError);
    EXPECT_EQ(PartialQuotients::parse("1,1,1,8").to_string(), "1,1,1,8");
}

TEST(Convergents, DeterminantIdentityRandomized)
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cf = random_cf(rng, rng() % 40 + 1);
        for (std::size_t n = 1; n <= cf.depth(); ++n) {
            const BigInt det = cf.p(n) * cf.q(n - 1) - cf.p(n - 1) * cf.q(n);
            ASSERT_EQ(det, n % 2 == 1 ? 1 : -1) << "trial " << trial << " n " << n;
            BigInt g;
            mpz_gcd(g.get_mpz_t(), cf.p(n).get_mpz_t(), cf.q(n).get_mpz_t());
            ASSERT_EQ(g, 1);
        }
        ASSERT_EQ(cf.convergent(cf.depth()).value(), fold(cf.terms()));
    }
}

TEST(Convergents, DenominatorsIncrease)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cf = random_cf(rng, 30);
        for (std::size_t n = 2; n <= cf.depth(); ++n) {
            ASSERT_LT(cf.q(n - 1), cf.q(n));
        }
    }
}

TEST(Enclosure, Examples)
{
    const auto cf = make({1, 1, 1, 8});
    const RationalInterval e = enclosure(cf, 3);
    EXPECT_EQ(e.lo, Rational(17, 26));
    EXPECT_EQ(e.hi, Rational(2, 3));
    const RationalInterval f = enclosure(make({1, 1}), 1);
    EXPECT_EQ(f.lo, Rational(1, 2));
    EXPECT_EQ(f.hi, 1);
    EXPECT_THROW(enclosure(cf, 4), IndexError);
}

TEST(Enclosure, NestingAndContainment)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cf = random_cf(rng, 20);
        const Rational full = fold(cf.terms());
        for (std::size_t n = 0; n + 2 < cf.depth(); ++n) {
            const RationalInterval outer = enclosure(cf, n);
            const RationalInterval inner = enclosure(cf, n + 1);
            ASSERT_LE(outer.lo, inner.lo);
            ASSERT_LE(inner.hi, outer.hi);
            ASSERT_TRUE(outer.contains_open(full) || full == inner.lo || full == inner.hi);
        }
    }
}

TEST(GapBounds, Examples)
{
    const auto cf = make({1, 1, 1, 8});
    const GapBounds g = gap_bounds(cf, 3);
    EXPECT_EQ(g.upper, Rational(1, 78));
    EXPECT_EQ(g.lower, Rational(1, 87));
    EXPECT_GT(g.upper, g.lower);
    EXPECT_THROW(gap_bounds(cf, 4), IndexError);
}

TEST(GapBounds, AgainstExactFiniteValue)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cf = random_cf(rng, 15);
        const Rational x = fold(cf.terms());
        for (std::size_t n = 1; n + 2 <= cf.depth(); ++n) {
            const GapBounds g = gap_bounds(cf, n);
            const Rational d = abs(x - cf.convergent(n).value());
            // A finite prefix ending in 1 attains the lower bound; infinite tails cannot.
            ASSERT_LE(g.lower, d);
            ASSERT_LT(d, g.upper);
        }
    }
}

TEST(QuotientProduct, Examples)
{
    EXPECT_EQ(check_quotient_product(make({1, 1, 1, 8}), 4), Status::Verified);
    EXPECT_EQ(check_quotient_product(make({1}), 1), Status::Verified);
    EXPECT_EQ(check_quotient_product(make({1, 1, 1}), 3), Status::Verified);
}

TEST(QGrowth, Examples)
{
    const auto cf = make({1, 1, 1, 8});
    const Verdict v4 = check_q_growth(cf, 4);
    EXPECT_EQ(v4.status, Status::Verified);
    ASSERT_TRUE(v4.margin);
    // log10(26) - log10(e) = 0.9806...
    EXPECT_EQ(format_decimal(*v4.margin, 3), "0.980");
    EXPECT_EQ(check_q_growth(cf, 3).status, Status::Verified);
    EXPECT_THROW(check_q_growth(cf, 2), DomainError);
}
