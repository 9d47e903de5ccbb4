#ifndef LIOUVILLE_CONTINUED_FRACTION_HPP
#define LIOUVILLE_CONTINUED_FRACTION_HPP

#include "liouville/bigmath.hpp"
#include "liouville/verdict.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

// Partial quotients a_1..a_N of [0; a_1, ..., a_N]; a_0 is fixed to 0.
class PartialQuotients {
public:
    // Throws DomainError when empty or when some a_i < 1.
    explicit PartialQuotients(std::vector<BigInt> terms);

    // Comma-separated decimal strings, e.g. "1,1,1,8".
    static PartialQuotients parse(std::string_view csv);
    std::string to_string() const;

    std::size_t depth() const { return terms_.size(); }
    // 1-based: a(1) .. a(N).
    const BigInt& a(std::size_t j) const;
    const std::vector<BigInt>& terms() const { return terms_; }

private:
    std::vector<BigInt> terms_;
};

struct Convergent {
    std::size_t n = 0;
    BigInt p;
    BigInt q;

    Rational value() const;
};

// p_0/q_0 = 0/1, p_1/q_1 = 1/a_1, then the usual three-term recurrence.
std::vector<Convergent> convergents(const PartialQuotients& cf);

// Partial quotients together with their convergents 0..N.
class ContinuedFraction {
public:
    explicit ContinuedFraction(PartialQuotients terms);

    const PartialQuotients& terms() const { return terms_; }
    std::size_t depth() const { return terms_.depth(); }
    const BigInt& a(std::size_t j) const { return terms_.a(j); }
    const Convergent& convergent(std::size_t n) const;
    const BigInt& p(std::size_t n) const { return convergent(n).p; }
    const BigInt& q(std::size_t n) const { return convergent(n).q; }
    std::span<const Convergent> all() const { return convergents_; }

private:
    PartialQuotients terms_;
    std::vector<Convergent> convergents_;
};

// Every infinite extension of the prefix lies in the open interval (lo, hi).
struct RationalInterval {
    Rational lo;
    Rational hi;

    bool contains_open(const Rational& x) const { return lo < x && x < hi; }
    Rational width() const { return hi - lo; }
};

// Interval between p_n/q_n and p_{n+1}/q_{n+1}; n <= N-1, else IndexError.
RationalInterval enclosure(const ContinuedFraction& cf, std::size_t n);

// The tightest enclosure the prefix allows: enclosure(cf, N-1).
RationalInterval tightest_enclosure(const ContinuedFraction& cf);

struct GapBounds {
    Rational lower; // 1/(q_n (q_{n+1} + q_n))
    Rational upper; // 1/(q_n q_{n+1})
};

GapBounds gap_bounds(const ContinuedFraction& cf, std::size_t n);

// (a_1 + 1)...(a_n + 1) > q_n, exactly.
Status check_quotient_product(const ContinuedFraction& cf, std::size_t n);

// q_m > e^((m-3)!), decided in log10 with margin. m >= 3.
Verdict check_q_growth(const ContinuedFraction& cf, std::size_t m,
                       const Rational& eps = default_epsilon());

} // namespace liouville

#endif
