#include "liouville/bigmath.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace liouville {

namespace {

// First 100 decimals of pi; the enclosure is [PI_DIGITS, PI_DIGITS + 10^-100].
constexpr const char* PI_DIGITS =
    "31415926535897932384626433832795028841971693993751"
    "058209749445923078164062862089986280348253421170679";

unsigned long bit_length(const BigInt& x)
{
    if (x == 0) {
        return 0;
    }
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt shl(const BigInt& x, unsigned long bits)
{
    BigInt r;
    mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
    return r;
}

BigInt fdiv(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt cdiv(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt fdiv_2exp(const BigInt& a, unsigned long bits)
{
    BigInt r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), bits);
    return r;
}

BigInt cdiv_2exp(const BigInt& a, unsigned long bits)
{
    BigInt r;
    mpz_cdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), bits);
    return r;
}

Rational dyadic(const BigInt& numerator, unsigned long bits)
{
    Rational r(numerator, shl(BigInt(1), bits));
    r.canonicalize();
    return r;
}

// atanh(a/b) = sum u^(2i+1)/(2i+1), for 0 <= a/b < 1/3, in units of 2^-bits.
detail::LnBounds atanh_bounds(const BigInt& a, const BigInt& b, unsigned long bits)
{
    detail::LnBounds out;
    out.bits = bits;
    if (a == 0) {
        return out;
    }
    const BigInt scaled = shl(a, bits);
    const BigInt u_lo = fdiv(scaled, b);
    const BigInt u_hi = cdiv(scaled, b);
    const BigInt v_lo = fdiv_2exp(u_lo * u_lo, bits);
    const BigInt v_hi = cdiv_2exp(u_hi * u_hi, bits);

    BigInt p_lo = u_lo;
    BigInt p_hi = u_hi;
    for (unsigned long d = 1;; d += 2) {
        out.lo += fdiv(p_lo, BigInt(d));
        out.hi += cdiv(p_hi, BigInt(d));
        p_lo = fdiv_2exp(p_lo * v_lo, bits);
        p_hi = cdiv_2exp(p_hi * v_hi, bits);
        if (p_hi <= 1) {
            // Remainder <= u^(d+2)/(d+2) * 1/(1-u^2), and 1/(1-u^2) < 9/8.
            out.hi += cdiv(BigInt(9) * p_hi, BigInt(8 * (d + 2)));
            break;
        }
    }
    return out;
}

class ConstantCache {
public:
    detail::LnBounds ln2(unsigned long bits)
    {
        std::lock_guard lock(mutex_);
        auto it = ln2_.find(bits);
        if (it == ln2_.end()) {
            auto b = atanh_bounds(BigInt(1), BigInt(3), bits);
            b.lo *= 2;
            b.hi *= 2;
            it = ln2_.emplace(bits, std::move(b)).first;
        }
        return it->second;
    }

    detail::LnBounds ln10(unsigned long bits)
    {
        {
            std::lock_guard lock(mutex_);
            auto it = ln10_.find(bits);
            if (it != ln10_.end()) {
                return it->second;
            }
        }
        auto b = detail::ln_bounds(Rational(10), bits);
        std::lock_guard lock(mutex_);
        return ln10_.emplace(bits, std::move(b)).first->second;
    }

private:
    std::mutex mutex_;
    std::map<unsigned long, detail::LnBounds> ln2_;
    std::map<unsigned long, detail::LnBounds> ln10_;
};

ConstantCache& constants()
{
    static ConstantCache cache;
    return cache;
}

// Strips factors of ten from a positive integer; returns the count.
unsigned long strip_tens(BigInt& x)
{
    return mpz_remove(x.get_mpz_t(), x.get_mpz_t(), BigInt(10).get_mpz_t());
}

LogMag log10_rational_impl(const Rational& x, const Rational& eps)
{
    if (x <= 0) {
        throw DomainError("log10 of a nonpositive number");
    }
    if (eps <= 0) {
        throw DomainError("epsilon must be positive");
    }
    BigInt num = x.get_num();
    BigInt den = x.get_den();
    const long shift10 = static_cast<long>(strip_tens(num)) - static_cast<long>(strip_tens(den));
    if (num == 1 && den == 1) {
        return LogMag::point(Rational(shift10));
    }
    const Rational reduced(num, den);
    const unsigned long magnitude = std::max(bit_length(num), bit_length(den));
    unsigned long bits = detail::bits_for(eps) + bit_length(BigInt(magnitude)) + 16;
    for (;;) {
        const auto ln = detail::ln_bounds(reduced, bits);
        const auto ln10 = constants().ln10(bits);
        LogMag r = detail::log10_from_ln(ln, ln10);
        if (r.width() <= eps) {
            return shift(r, Rational(shift10));
        }
        bits += 32;
    }
}

BigInt pi_scaled_floor()
{
    return BigInt(PI_DIGITS);
}

unsigned long decimal_cap(const Rational& eps)
{
    // A decimal exponent C with 10^-C well below eps.
    return static_cast<unsigned long>(detail::bits_for(eps) * 0.30103) + 2;
}

} // namespace

namespace detail {

unsigned long bits_for(const Rational& eps)
{
    if (eps <= 0) {
        throw DomainError("epsilon must be positive");
    }
    const long diff = static_cast<long>(bit_length(eps.get_den())) -
                      static_cast<long>(bit_length(eps.get_num()));
    return static_cast<unsigned long>(std::max(diff, 0L)) + 8;
}

Rational round_down(const Rational& x, unsigned long bits)
{
    return dyadic(fdiv(shl(x.get_num(), bits), x.get_den()), bits);
}

Rational round_up(const Rational& x, unsigned long bits)
{
    return dyadic(cdiv(shl(x.get_num(), bits), x.get_den()), bits);
}

LnBounds ln_bounds(const Rational& x, unsigned long bits)
{
    if (x <= 0) {
        throw DomainError("ln of a nonpositive number");
    }
    if (x < 1) {
        Rational inv = 1 / x;
        auto r = ln_bounds(inv, bits);
        return LnBounds{-r.hi, -r.lo, bits};
    }
    const BigInt& num = x.get_num();
    const BigInt& den = x.get_den();
    unsigned long k = bit_length(num) - bit_length(den);
    if (num < shl(den, k)) {
        --k;
    }
    const BigInt base = shl(den, k);
    auto s = atanh_bounds(num - base, num + base, bits);
    const auto l2 = constants().ln2(bits);
    LnBounds out;
    out.bits = bits;
    out.lo = 2 * s.lo + BigInt(k) * l2.lo;
    out.hi = 2 * s.hi + BigInt(k) * l2.hi;
    return out;
}

LogMag log10_from_ln(const LnBounds& ln, const LnBounds& ln10)
{
    const Rational lo = dyadic(ln.lo, ln.bits);
    const Rational hi = dyadic(ln.hi, ln.bits);
    const Rational l10_lo = dyadic(ln10.lo, ln10.bits);
    const Rational l10_hi = dyadic(ln10.hi, ln10.bits);
    const Rational out_lo = lo / (lo >= 0 ? l10_hi : l10_lo);
    const Rational out_hi = hi / (hi >= 0 ? l10_lo : l10_hi);
    const unsigned long grid = std::max(ln.bits, 8UL) - 4;
    return LogMag::interval(round_down(out_lo, grid), round_up(out_hi, grid));
}

} // namespace detail

Rational default_epsilon()
{
    return Rational(1, pow10_int(12));
}

BigInt pow10_int(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

BigInt factorial_int(unsigned long m)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), m);
    return r;
}

std::size_t decimal_digits(const BigInt& x)
{
    if (x == 0) {
        throw DomainError("digit count of zero");
    }
    BigInt a = abs(x);
    std::size_t n = mpz_sizeinbase(a.get_mpz_t(), 10);
    if (n > 1 && a < pow10_int(n - 1)) {
        --n;
    }
    return n;
}

BigInt parse_bigint(std::string_view text)
{
    std::string s(text);
    std::size_t start = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        start = 1;
    }
    if (start == s.size()) {
        throw DomainError("malformed integer: '" + s + "'");
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw DomainError("malformed integer: '" + s + "'");
        }
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    return BigInt(s, 10);
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) {
        throw DomainError("empty rational");
    }
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const BigInt p = parse_bigint(std::string_view(s).substr(0, slash));
        const BigInt q = parse_bigint(std::string_view(s).substr(slash + 1));
        if (q == 0) {
            throw DomainError("zero denominator in '" + s + "'");
        }
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    std::string mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        const BigInt ex = parse_bigint(std::string_view(s).substr(e + 1));
        if (!ex.fits_slong_p() || abs(ex) > 1000000) {
            throw DomainError("exponent out of range in '" + s + "'");
        }
        exponent = ex.get_si();
    }
    std::string digits;
    bool negative = false;
    std::size_t i = 0;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        i = 1;
    }
    long fraction_digits = 0;
    bool seen_point = false;
    for (; i < mantissa.size(); ++i) {
        const char c = mantissa[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) {
                ++fraction_digits;
            }
        } else {
            throw DomainError("malformed rational: '" + s + "'");
        }
    }
    if (digits.empty()) {
        throw DomainError("malformed rational: '" + s + "'");
    }
    BigInt m(digits, 10);
    if (negative) {
        m = -m;
    }
    const long scale = exponent - fraction_digits;
    Rational r = scale >= 0 ? Rational(m * pow10_int(static_cast<unsigned long>(scale)))
                            : Rational(m, pow10_int(static_cast<unsigned long>(-scale)));
    r.canonicalize();
    return r;
}

std::string format_decimal(const Rational& x, unsigned digits)
{
    const bool negative = x < 0;
    const Rational a = abs(x);
    BigInt whole;
    mpz_tdiv_q(whole.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    std::string out = negative ? "-" : "";
    out += whole.get_str(10);
    if (digits == 0) {
        return out;
    }
    const Rational frac = a - whole;
    BigInt scaled;
    const Rational f = frac * pow10_int(digits);
    mpz_tdiv_q(scaled.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
    std::string fd = scaled.get_str(10);
    out += '.';
    out += std::string(digits - fd.size(), '0');
    out += fd;
    return out;
}

LogMag LogMag::point(const Rational& v)
{
    return LogMag{v, v};
}

LogMag LogMag::interval(const Rational& lo, const Rational& hi)
{
    if (lo > hi) {
        throw DomainError("LogMag requires lo <= hi");
    }
    return LogMag{lo, hi};
}

LogMag logmag_from_int(const BigInt& x, const Rational& eps)
{
    if (x < 1) {
        throw DomainError("logmag_from_int requires x >= 1, got " + x.get_str());
    }
    return log10_rational_impl(Rational(x), eps);
}

LogMag logmag_from_rational(const Rational& x, const Rational& eps)
{
    return log10_rational_impl(x, eps);
}

LogMag log10_of_two(const Rational& eps)
{
    return logmag_from_int(BigInt(2), eps);
}

LogMag log10_of_e(const Rational& eps)
{
    unsigned long bits = detail::bits_for(eps) + 16;
    for (;;) {
        const auto l10 = constants().ln10(bits);
        const Rational lo = detail::round_down(Rational(shl(BigInt(1), bits), l10.hi), bits);
        const Rational hi = detail::round_up(Rational(shl(BigInt(1), bits), l10.lo), bits);
        LogMag r = LogMag::interval(lo, hi);
        if (r.width() <= eps) {
            return r;
        }
        bits += 32;
    }
}

LogMag logmag_factorial_summed(unsigned long m, const Rational& eps)
{
    if (m <= 1) {
        return LogMag::point(Rational(0));
    }
    unsigned long bits = detail::bits_for(eps) + bit_length(BigInt(m)) + 24;
    for (;;) {
        detail::LnBounds total;
        total.bits = bits;
        BigInt chunk = 1;
        for (unsigned long j = 2; j <= m; ++j) {
            chunk *= j;
            if (bit_length(chunk) >= 256 || j == m) {
                const auto ln = detail::ln_bounds(Rational(chunk), bits);
                total.lo += ln.lo;
                total.hi += ln.hi;
                chunk = 1;
            }
        }
        LogMag r = detail::log10_from_ln(total, constants().ln10(bits));
        if (r.width() <= eps) {
            return r;
        }
        bits += 32;
    }
}

LogMag logmag_factorial_robbins(const BigInt& m, const Rational& eps)
{
    if (m < 1) {
        throw DomainError("Robbins bounds need m >= 1");
    }
    const BigInt pi_lo_num = pi_scaled_floor();
    const BigInt scale = pow10_int(100);
    const Rational two_pi_lo(2 * pi_lo_num, scale);
    const Rational two_pi_hi(2 * (pi_lo_num + 1), scale);
    const Rational m_r(m);
    const Rational intrinsic_lo = Rational(1, 12 * m + 1);
    const Rational intrinsic_hi = Rational(1, 12 * m);

    unsigned long bits = detail::bits_for(eps) + 2 * bit_length(m) + 24;
    for (int attempt = 0;; ++attempt) {
        const auto ln_m = detail::ln_bounds(m_r, bits);
        const auto ln_2pi_lo = detail::ln_bounds(two_pi_lo, bits);
        const auto ln_2pi_hi = detail::ln_bounds(two_pi_hi, bits);
        const Rational half = Rational(1, 2);
        const Rational m_half = m_r + half;

        const Rational ln_lo = dyadic(ln_2pi_lo.lo, bits) * half + m_half * dyadic(ln_m.lo, bits) -
                               m_r + intrinsic_lo;
        const Rational ln_hi = dyadic(ln_2pi_hi.hi, bits) * half + m_half * dyadic(ln_m.hi, bits) -
                               m_r + intrinsic_hi;

        const auto l10 = constants().ln10(bits);
        const Rational l10_lo = dyadic(l10.lo, bits);
        const Rational l10_hi = dyadic(l10.hi, bits);
        const Rational lo = ln_lo / (ln_lo >= 0 ? l10_hi : l10_lo);
        const Rational hi = ln_hi / (ln_hi >= 0 ? l10_lo : l10_hi);
        LogMag r = LogMag::interval(detail::round_down(lo, bits), detail::round_up(hi, bits));

        // The Robbins gap itself cannot shrink; only the computational slack can.
        const Rational slack = r.width() - (intrinsic_hi - intrinsic_lo) / l10_hi;
        if (slack <= eps || attempt >= 4) {
            return r;
        }
        bits += 32;
    }
}

LogMag logmag_factorial(const BigInt& m, const FactorialOptions& opts)
{
    if (m < 0) {
        throw DomainError("factorial of a negative number");
    }
    if (m == 0) {
        if (opts.zero_is_error) {
            throw DomainError("logmag_factorial(0) disabled by configuration");
        }
        return LogMag::point(Rational(0));
    }
    if (m <= opts.exact_threshold && m.fits_ulong_p()) {
        return logmag_factorial_summed(m.get_ui(), opts.eps);
    }
    return logmag_factorial_robbins(m, opts.eps);
}

LogMag product(const LogMag& a, const LogMag& b)
{
    return LogMag{a.lo + b.lo, a.hi + b.hi};
}

LogMag quotient(const LogMag& a, const LogMag& b)
{
    return LogMag{a.lo - b.hi, a.hi - b.lo};
}

LogMag int_power(const LogMag& a, const BigInt& k)
{
    const Rational kr(k);
    if (k >= 0) {
        return LogMag{a.lo * kr, a.hi * kr};
    }
    return LogMag{a.hi * kr, a.lo * kr};
}

LogMag shift(const LogMag& a, const Rational& by)
{
    return LogMag{a.lo + by, a.hi + by};
}

Order verify_strict_less(const LogMag& a, const LogMag& b)
{
    if (a.hi < b.lo) {
        return Order::Less;
    }
    if (b.hi < a.lo) {
        return Order::Greater;
    }
    return Order::Undecided;
}

LogMag sum_upper(const LogMag& a, const LogMag& b, const Rational& eps)
{
    const Rational top = std::max(a.hi, b.hi);
    const Rational d = top - std::min(a.hi, b.hi);
    const unsigned long cap = decimal_cap(eps);
    Rational add;
    if (d >= cap) {
        // log10(1+x) <= x/ln 10 < x/2.
        add = Rational(1, 2 * pow10_int(cap));
    } else {
        add = logmag_from_rational(1 + pow10_upper(-d), eps / 4).hi;
    }
    return LogMag{std::max(a.lo, b.lo), top + add};
}

LogMag difference(const LogMag& a, const LogMag& b, const Rational& eps)
{
    if (!(b.hi < a.lo)) {
        throw PreconditionError("difference: operands not separated in magnitude");
    }
    const Rational d = a.lo - b.hi;
    const unsigned long cap = decimal_cap(eps);
    Rational sub;
    if (d >= cap) {
        // -log10(1-x) <= x/((1-x) ln 10) <= x for x <= 1/2.
        sub = -Rational(1, pow10_int(cap));
    } else {
        const Rational x = pow10_upper(-d);
        if (x >= 1) {
            throw PreconditionError("difference: operands too close in magnitude");
        }
        sub = logmag_from_rational(1 - x, eps / 4).lo;
    }
    return LogMag{a.lo + sub, a.hi};
}

LogMag geometric_tail_upper(const LogMag& first_log, const Rational& ratio_hi, const Rational& eps)
{
    bool ok = false;
    Rational e = eps;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
        const LogMag l2 = log10_of_two(e);
        if (ratio_hi <= -l2.hi) {
            ok = true;
        } else if (ratio_hi > -l2.lo) {
            break;
        }
        e /= pow10_int(20);
    }
    if (!ok) {
        throw PreconditionError("geometric_tail_upper: domination margin insufficient (ratio " +
                                format_decimal(ratio_hi, 6) + " > -log10 2)");
    }
    const unsigned long cap = decimal_cap(eps);
    Rational add;
    if (-ratio_hi >= cap) {
        // log10(1/(1-x)) <= x/((1-x) ln 10) <= x.
        add = Rational(1, pow10_int(cap));
    } else {
        const Rational x = pow10_upper(ratio_hi);
        if (x >= 1) {
            throw PreconditionError("geometric_tail_upper: ratio bound not below 1");
        }
        add = logmag_from_rational(1 / (1 - x), eps / 2).hi;
    }
    return LogMag{first_log.lo, first_log.hi + add};
}

namespace {

Rational pow10_bound(const Rational& r, bool upper)
{
    if (abs(r) > 1000000) {
        throw PreconditionError("pow10 bound: exponent magnitude above 10^6");
    }
    BigInt n;
    mpz_fdiv_q(n.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    const Rational f = r - n;
    const long ne = n.get_si();
    const Rational scale = ne >= 0 ? Rational(pow10_int(static_cast<unsigned long>(ne)))
                                   : Rational(1, pow10_int(static_cast<unsigned long>(-ne)));
    if (f == 0) {
        return scale;
    }
    const long double guess = std::pow(10.0L, static_cast<long double>(f.get_d()));
    long double nudge = 1e-15L;
    const Rational tight = Rational(1, pow10_int(30));
    for (int attempt = 0; attempt < 60; ++attempt) {
        const double g = static_cast<double>(upper ? guess * (1 + nudge) : guess * (1 - nudge));
        Rational gr(g);
        const LogMag lg = logmag_from_rational(gr, tight);
        if (upper ? lg.lo >= f : lg.hi <= f) {
            return gr * scale;
        }
        nudge *= 4;
    }
    // 10^f lies in [1, 10).
    return upper ? 10 * scale : scale;
}

} // namespace

Rational pow10_upper(const Rational& r)
{
    return pow10_bound(r, true);
}

Rational pow10_lower(const Rational& r)
{
    return pow10_bound(r, false);
}

} // namespace liouville
