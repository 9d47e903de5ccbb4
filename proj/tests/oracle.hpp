#ifndef LIOUVILLE_TESTS_ORACLE_HPP
#define LIOUVILLE_TESTS_ORACLE_HPP

// Independent reference values: MPFR with directed rounding and plain
// big-integer arithmetic. Nothing here goes through the LogMag code path.

#include "liouville/bigmath.hpp"

#include <mpfr.h>

#include <random>
#include <string>

namespace oracle {

using liouville::BigInt;
using liouville::Rational;

inline Rational to_rational(const mpfr_t x)
{
    BigInt m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rational r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

struct Bracket {
    Rational lo;
    Rational hi;
};

// log10(x) for a positive integer, rounded down and up at 256 bits.
inline Bracket log10_int(const BigInt& x)
{
    Bracket b;
    mpfr_t v, r;
    mpfr_inits2(256, v, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(v, x.get_mpz_t(), MPFR_RNDD);
    mpfr_log10(r, v, MPFR_RNDD);
    b.lo = to_rational(r);
    mpfr_set_z(v, x.get_mpz_t(), MPFR_RNDU);
    mpfr_log10(r, v, MPFR_RNDU);
    b.hi = to_rational(r);
    mpfr_clears(v, r, static_cast<mpfr_ptr>(nullptr));
    return b;
}

// log10(m!) through lngamma(m+1) / ln 10 with outward rounding.
inline Bracket log10_factorial(unsigned long m)
{
    Bracket b;
    mpfr_t a, g, l10;
    mpfr_inits2(256, a, g, l10, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(a, m + 1, MPFR_RNDN);
    mpfr_lngamma(g, a, MPFR_RNDD);
    mpfr_set_ui(l10, 10, MPFR_RNDN);
    mpfr_log(l10, l10, MPFR_RNDU);
    mpfr_div(g, g, l10, MPFR_RNDD);
    b.lo = to_rational(g);
    mpfr_lngamma(g, a, MPFR_RNDU);
    mpfr_set_ui(l10, 10, MPFR_RNDN);
    mpfr_log(l10, l10, MPFR_RNDD);
    mpfr_div(g, g, l10, MPFR_RNDU);
    b.hi = to_rational(g);
    mpfr_clears(a, g, l10, static_cast<mpfr_ptr>(nullptr));
    return b;
}

// Uniform random integer with 1..max_digits decimal digits.
inline BigInt random_int(std::mt19937_64& rng, unsigned max_digits)
{
    std::uniform_int_distribution<unsigned> len(1, max_digits);
    std::uniform_int_distribution<int> digit(0, 9);
    std::string s;
    const unsigned n = len(rng);
    s += static_cast<char>('1' + digit(rng) % 9);
    for (unsigned i = 1; i < n; ++i) {
        s += static_cast<char>('0' + digit(rng));
    }
    return BigInt(s);
}

// floor(x * 10^d) rendered as a decimal with d fractional digits, x >= 0.
inline std::string truncated_decimal(const Rational& x, unsigned d)
{
    BigInt scaled = x.get_num() * liouville::pow10_int(d);
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
    std::string digits = q.get_str();
    if (digits.size() <= d) {
        digits.insert(0, d + 1 - digits.size(), '0');
    }
    return digits.substr(0, digits.size() - d) + "." + digits.substr(digits.size() - d);
}

} // namespace oracle

#endif
