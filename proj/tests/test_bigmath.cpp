#include "liouville/bigmath.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace liouville;

namespace {

Rational r(const char* text)
{
    return parse_rational(text);
}

void expect_contains(const LogMag& m, const oracle::Bracket& b)
{
    EXPECT_LE(m.lo, b.lo) << "lo " << m.lo.get_d() << " above oracle " << b.lo.get_d();
    EXPECT_GE(m.hi, b.hi) << "hi " << m.hi.get_d() << " below oracle " << b.hi.get_d();
}

} // namespace

TEST(LogFromInt, OneContainsZero)
{
    const LogMag m = logmag_from_int(1);
    EXPECT_TRUE(m.contains(0));
    EXPECT_LE(m.width(), default_epsilon());
}

TEST(LogFromInt, PowerOfTenIsExact)
{
    const LogMag m = logmag_from_int(1000);
    EXPECT_TRUE(m.contains(3));
    EXPECT_LE(m.width(), default_epsilon());
}

TEST(LogFromInt, TwentySix)
{
    const LogMag m = logmag_from_int(26);
    expect_contains(m, oracle::log10_int(26));
    EXPECT_LE(m.width(), r("1e-12"));
    EXPECT_EQ(format_decimal(m.lo, 6), "1.414973");
}

TEST(LogFromInt, RejectsNonPositive)
{
    EXPECT_THROW(logmag_from_int(0), DomainError);
    EXPECT_THROW(logmag_from_int(-5), DomainError);
}

TEST(LogFromInt, RandomSoundnessAgainstMpfr)
{
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 2000; ++i) {
        const BigInt x = oracle::random_int(rng, 300);
        const LogMag m = logmag_from_int(x);
        expect_contains(m, oracle::log10_int(x));
        ASSERT_LE(m.width(), default_epsilon());
    }
}

TEST(LogFromInt, TighterEpsilonNarrows)
{
    const Rational eps = r("1e-40");
    const LogMag m = logmag_from_int(BigInt("123456789012345678901234567890"), eps);
    EXPECT_LE(m.width(), eps);
    expect_contains(m, oracle::log10_int(BigInt("123456789012345678901234567890")));
}

TEST(LogFromRational, FractionBelowOne)
{
    const LogMag m = logmag_from_rational(r("1/2"));
    const LogMag two = logmag_from_int(2);
    EXPECT_LE(m.lo, -two.hi + default_epsilon());
    EXPECT_GE(m.hi, -two.hi);
    EXPECT_TRUE(m.contains(m.lo));
    EXPECT_THROW(logmag_from_rational(0), DomainError);
}

TEST(LogFactorial, SmallValues)
{
    EXPECT_TRUE(logmag_factorial(1).contains(0));
    expect_contains(logmag_factorial(5), oracle::log10_int(120));
    const LogMag f100 = logmag_factorial(100);
    expect_contains(f100, oracle::log10_int(factorial_int(100)));
    EXPECT_EQ(format_decimal(f100.lo, 4), "157.9700");
}

TEST(LogFactorial, ZeroByConfiguration)
{
    const LogMag z = logmag_factorial(0);
    EXPECT_EQ(z.lo, 0);
    EXPECT_EQ(z.hi, 0);
    FactorialOptions opts;
    opts.zero_is_error = true;
    EXPECT_THROW(logmag_factorial(0, opts), DomainError);
    EXPECT_THROW(logmag_factorial(-1), DomainError);
}

TEST(LogFactorial, DigitCountProperty)
{
    BigInt f = 1;
    for (unsigned long m = 1; m <= 2000; ++m) {
        f *= m;
        const LogMag l = logmag_factorial(m);
        const Rational d(static_cast<unsigned long>(decimal_digits(f)));
        ASSERT_LE(d - 1, l.lo) << "m = " << m;
        ASSERT_LT(l.hi, d) << "m = " << m;
    }
}

TEST(LogFactorial, ExactOracleAcrossTiers)
{
    for (const unsigned long m : {10UL, 100UL, 1000UL, 10000UL}) {
        const LogMag l = logmag_factorial(m);
        expect_contains(l, oracle::log10_int(factorial_int(m)));
        const LogMag rb = logmag_factorial_robbins(m, default_epsilon());
        expect_contains(rb, oracle::log10_int(factorial_int(m)));
        if (m >= 100) {
            EXPECT_LE(rb.width(), r("1e-3"));
        }
    }
}

TEST(LogFactorial, RobbinsTierAgainstLngamma)
{
    for (const unsigned long m : {100001UL, 250000UL, 1000000UL, 123456789UL}) {
        const LogMag l = logmag_factorial(m);
        expect_contains(l, oracle::log10_factorial(m));
        EXPECT_LE(l.width(), r("1e-3"));
    }
    // Threshold lowered so the summed and Robbins tiers can be compared.
    FactorialOptions low;
    low.exact_threshold = 10;
    const LogMag a = logmag_factorial(5000, low);
    const LogMag b = logmag_factorial(5000);
    EXPECT_LE(a.lo, b.hi);
    EXPECT_LE(b.lo, a.hi);
}

TEST(LogFactorial, HugeArgument)
{
    const BigInt m = factorial_int(64);
    const LogMag l = logmag_factorial(m);
    EXPECT_LT(l.lo, l.hi);
    EXPECT_GT(l.lo, Rational(m) * 80);
}

TEST(LogFactorial, Monotone)
{
    LogMag prev = logmag_factorial(1);
    for (unsigned long m = 2; m <= 400; ++m) {
        const LogMag cur = logmag_factorial(m);
        ASSERT_EQ(verify_strict_less(prev, cur), Order::Less) << m;
        prev = cur;
    }
}

TEST(LogArith, Examples)
{
    const LogMag p = product(LogMag::point(1), LogMag::point(2));
    EXPECT_EQ(p.lo, 3);
    EXPECT_EQ(p.hi, 3);
    const LogMag w = int_power(LogMag::interval(r("0.30102"), r("0.30103")), 10);
    EXPECT_EQ(w.lo, r("3.0102"));
    EXPECT_EQ(w.hi, r("3.0103"));
    const LogMag s = sum_upper(LogMag::point(0), LogMag::point(0));
    EXPECT_LE(s.hi, logmag_from_int(2).hi + default_epsilon());
    EXPECT_GE(s.hi, oracle::log10_int(2).hi);
    const LogMag q = quotient(LogMag::point(5), LogMag::interval(1, 2));
    EXPECT_EQ(q.lo, 3);
    EXPECT_EQ(q.hi, 4);
    EXPECT_THROW(LogMag::interval(2, 1), DomainError);
}

TEST(LogArith, SumUpperSound)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const BigInt a = oracle::random_int(rng, 40);
        const BigInt b = oracle::random_int(rng, 40);
        const LogMag s = sum_upper(logmag_from_int(a), logmag_from_int(b));
        ASSERT_GE(s.hi, oracle::log10_int(a + b).hi);
        ASSERT_LE(s.lo, oracle::log10_int(a + b).lo);
    }
}

TEST(LogArith, DifferenceSound)
{
    const LogMag d = difference(logmag_from_int(1000), logmag_from_int(1));
    expect_contains(d, oracle::log10_int(999));
    EXPECT_THROW(difference(logmag_from_int(2), logmag_from_int(3)), PreconditionError);
}

TEST(StrictLess, Examples)
{
    EXPECT_EQ(verify_strict_less(LogMag::point(1), LogMag::point(2)), Order::Less);
    EXPECT_EQ(verify_strict_less(LogMag::interval(1, r("1.5")), LogMag::interval(r("1.4"), 2)),
              Order::Undecided);
    EXPECT_EQ(verify_strict_less(logmag_factorial(100), int_power(logmag_from_int(10), 158)),
              Order::Less);
    EXPECT_LT(decimal_digits(factorial_int(100)), 159u);
}

TEST(StrictLess, AntisymmetricAndConsistentWithExact)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        const BigInt a = oracle::random_int(rng, 30);
        const BigInt b = oracle::random_int(rng, 30);
        const LogMag la = logmag_from_int(a);
        const LogMag lb = logmag_from_int(b);
        const Order ab = verify_strict_less(la, lb);
        const Order ba = verify_strict_less(lb, la);
        if (ab == Order::Less) {
            ASSERT_EQ(ba, Order::Greater);
            ASSERT_LT(a, b);
        } else if (ab == Order::Greater) {
            ASSERT_EQ(ba, Order::Less);
            ASSERT_GT(a, b);
        } else {
            ASSERT_EQ(ba, Order::Undecided);
        }
    }
}

TEST(GeometricTail, Examples)
{
    const LogMag g = geometric_tail_upper(LogMag::point(0), -1);
    const oracle::Bracket ten_ninths = [] {
        // log10(10/9) = 1 - log10 9
        const oracle::Bracket n = oracle::log10_int(9);
        return oracle::Bracket{1 - n.hi, 1 - n.lo};
    }();
    EXPECT_GE(g.hi, ten_ninths.hi);
    EXPECT_LE(g.hi, ten_ninths.hi + default_epsilon());

    const Rational half = -log10_of_two().hi;
    const LogMag h = geometric_tail_upper(LogMag::point(-24), half);
    EXPECT_LE(h.hi, -24 + log10_of_two().hi + r("1e-9"));
    EXPECT_GE(h.hi, -24 + oracle::log10_int(2).hi);

    EXPECT_THROW(geometric_tail_upper(LogMag::point(0), r("-0.1")), PreconditionError);
}

TEST(Pow10, Brackets)
{
    for (const char* t : {"1/3", "-7/2", "5", "-12/7", "0"}) {
        const Rational x = r(t);
        const Rational lo = pow10_lower(x);
        const Rational hi = pow10_upper(x);
        EXPECT_LE(lo, hi);
        // lo^den <= 10^num <= hi^den, exactly.
        const unsigned long den = x.get_den().get_ui();
        Rational lo_p = 1, hi_p = 1;
        for (unsigned long i = 0; i < den; ++i) {
            lo_p *= lo;
            hi_p *= hi;
        }
        const long num = x.get_num().get_si();
        const Rational ten = num >= 0 ? Rational(pow10_int(num)) : Rational(BigInt(1), pow10_int(-num));
        EXPECT_LE(lo_p, ten) << t;
        EXPECT_GE(hi_p, ten) << t;
    }
}

TEST(Parsing, RationalsAndIntegers)
{
    EXPECT_EQ(r("3/6"), Rational(1, 2));
    EXPECT_EQ(r("0.25"), Rational(1, 4));
    EXPECT_EQ(r("1e-3"), Rational(1, 1000));
    EXPECT_EQ(r("-2.5e1"), Rational(-25));
    EXPECT_THROW(r("1/0"), DomainError);
    EXPECT_THROW(r("abc"), DomainError);
    EXPECT_EQ(parse_bigint("123456789012345678901234567890"), BigInt("123456789012345678901234567890"));
    EXPECT_THROW(parse_bigint("12x"), DomainError);
}

TEST(Parsing, DecimalRenderingMatchesExactTruncation)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const BigInt p = oracle::random_int(rng, 30);
        const BigInt q = oracle::random_int(rng, 30);
        Rational x(p, q);
        x.canonicalize();
        const unsigned d = static_cast<unsigned>(rng() % 40 + 1);
        ASSERT_EQ(format_decimal(x, d), oracle::truncated_decimal(x, d));
    }
    EXPECT_EQ(format_decimal(r("-1/3"), 3), "-0.333");
    EXPECT_EQ(format_decimal(r("7/2"), 0), "3");
}

TEST(Helpers, FactorialAndDigits)
{
    EXPECT_EQ(factorial_int(0), 1);
    EXPECT_EQ(factorial_int(10), 3628800);
    EXPECT_EQ(decimal_digits(BigInt(999)), 3u);
    EXPECT_EQ(decimal_digits(BigInt(1000)), 4u);
    EXPECT_EQ(decimal_digits(pow10_int(500)), 501u);
}
