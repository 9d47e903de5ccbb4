#ifndef LIOUVILLE_BIGMATH_HPP
#define LIOUVILLE_BIGMATH_HPP

// Exact integers and rationals (GMP) plus LogMag, a rigorous log10-interval
// magnitude for quantities whose digits cannot be written out, e.g. 10^(64!).
//
// Every endpoint is an exact rational. Transcendental constants (ln 2, ln 10,
// log10 e, ln 2pi) are enclosed by fixed-point series with floor/ceil rounding,
// so no result depends on the hardware rounding mode.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liouville {

using BigInt = mpz_class;
using Rational = mpq_class;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an exact-tier computation would exceed the materialization budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("computation cancelled") {}
};

enum class Order { Less, Greater, Undecided };

// 10^-12.
Rational default_epsilon();

// num/den in lowest terms; GMP arithmetic expects canonical operands.
inline Rational make_rational(const BigInt& num, const BigInt& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

BigInt pow10_int(unsigned long e);
BigInt factorial_int(unsigned long m);

// Exact number of decimal digits of |x|, x != 0.
std::size_t decimal_digits(const BigInt& x);

// Accepts "p/q", "-12", "0.125", "1e-12", "2.5E+3".
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

// Truncates toward zero after `digits` fractional digits.
std::string format_decimal(const Rational& x, unsigned digits);

// Closed interval of exact rationals containing log10 of a positive quantity.
struct LogMag {
    Rational lo;
    Rational hi;

    static LogMag point(const Rational& v);
    // Throws DomainError when lo > hi.
    static LogMag interval(const Rational& lo, const Rational& hi);

    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

// Interval containing log10(x), width <= eps. x < 1 is a DomainError.
LogMag logmag_from_int(const BigInt& x, const Rational& eps = default_epsilon());
LogMag logmag_from_rational(const Rational& x, const Rational& eps = default_epsilon());

LogMag log10_of_two(const Rational& eps = default_epsilon());
LogMag log10_of_e(const Rational& eps = default_epsilon());

struct FactorialOptions {
    Rational eps = default_epsilon();
    // m <= threshold: exact summation of logs; above: Robbins bounds.
    BigInt exact_threshold = 100000;
    // 0! = 1 gives the exact point [0,0] unless this is set, in which case
    // m = 0 raises DomainError.
    bool zero_is_error = false;
};

LogMag logmag_factorial(const BigInt& m, const FactorialOptions& opts = {});

// The two tiers of logmag_factorial, exposed for cross-checking.
LogMag logmag_factorial_summed(unsigned long m, const Rational& eps);
LogMag logmag_factorial_robbins(const BigInt& m, const Rational& eps);

LogMag product(const LogMag& a, const LogMag& b);
LogMag quotient(const LogMag& a, const LogMag& b);
LogMag int_power(const LogMag& a, const BigInt& k);
LogMag shift(const LogMag& a, const Rational& by);

// Upper bound for log10(x + y). The lower end is max(lo_a, lo_b).
LogMag sum_upper(const LogMag& a, const LogMag& b, const Rational& eps = default_epsilon());

// Enclosure of log10(x - y); requires b.hi < a.lo (x certainly larger).
LogMag difference(const LogMag& a, const LogMag& b, const Rational& eps = default_epsilon());

// Less iff a.hi < b.lo; Greater iff b.hi < a.lo.
Order verify_strict_less(const LogMag& a, const LogMag& b);

// Upper bound for a series whose first term is enclosed by first_log and
// whose successive terms shrink by a factor of at most 10^ratio_hi.
// ratio_hi must be at most -log10(2); otherwise PreconditionError.
LogMag geometric_tail_upper(const LogMag& first_log, const Rational& ratio_hi,
                            const Rational& eps = default_epsilon());

// Rationals bracketing 10^r: pow10_lower(r) <= 10^r <= pow10_upper(r).
// |r| must not exceed 10^6.
Rational pow10_upper(const Rational& r);
Rational pow10_lower(const Rational& r);

namespace detail {

// ln(x) in [lo, hi] * 2^-bits, for rational x > 0.
struct LnBounds {
    BigInt lo;
    BigInt hi;
    unsigned long bits = 0;
};

LnBounds ln_bounds(const Rational& x, unsigned long bits);

// log10 of ln-bounds, rounded outward to a dyadic grid of `bits` bits.
LogMag log10_from_ln(const LnBounds& ln, const LnBounds& ln10);

// Bits needed so that 2^-bits is comfortably below eps.
unsigned long bits_for(const Rational& eps);

Rational round_down(const Rational& x, unsigned long bits);
Rational round_up(const Rational& x, unsigned long bits);

} // namespace detail

} // namespace liouville

#endif
