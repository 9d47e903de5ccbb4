#include "liouville/continued_fraction.hpp"

#include <sstream>
#include <utility>

namespace liouville {

PartialQuotients::PartialQuotients(std::vector<BigInt> terms) : terms_(std::move(terms))
{
    if (terms_.empty()) {
        throw DomainError("continued fraction needs at least one partial quotient");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i] < 1) {
            throw DomainError("partial quotient a_" + std::to_string(i + 1) + " = " +
                              terms_[i].get_str() + " is not positive");
        }
    }
}

PartialQuotients PartialQuotients::parse(std::string_view csv)
{
    std::vector<BigInt> terms;
    std::string item;
    std::istringstream in{std::string(csv)};
    while (std::getline(in, item, ',')) {
        terms.push_back(parse_bigint(item));
    }
    return PartialQuotients(std::move(terms));
}

std::string PartialQuotients::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += terms_[i].get_str();
    }
    return out;
}

const BigInt& PartialQuotients::a(std::size_t j) const
{
    if (j < 1 || j > terms_.size()) {
        throw IndexError("partial quotient index " + std::to_string(j) + " outside 1.." +
                         std::to_string(terms_.size()));
    }
    return terms_[j - 1];
}

Rational Convergent::value() const
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::vector<Convergent> convergents(const PartialQuotients& cf)
{
    std::vector<Convergent> out;
    out.reserve(cf.depth() + 1);
    out.push_back({0, BigInt(0), BigInt(1)});
    out.push_back({1, BigInt(1), cf.a(1)});
    for (std::size_t n = 2; n <= cf.depth(); ++n) {
        const auto& prev = out[n - 1];
        const auto& prev2 = out[n - 2];
        const BigInt& an = cf.a(n);
        out.push_back({n, an * prev.p + prev2.p, an * prev.q + prev2.q});
    }
    return out;
}

ContinuedFraction::ContinuedFraction(PartialQuotients terms)
    : terms_(std::move(terms)), convergents_(convergents(terms_))
{
}

const Convergent& ContinuedFraction::convergent(std::size_t n) const
{
    if (n >= convergents_.size()) {
        throw IndexError("convergent index " + std::to_string(n) + " beyond depth " +
                         std::to_string(depth()));
    }
    return convergents_[n];
}

RationalInterval enclosure(const ContinuedFraction& cf, std::size_t n)
{
    if (n + 1 > cf.depth()) {
        throw IndexError("enclosure needs n <= N-1 (n = " + std::to_string(n) +
                         ", N = " + std::to_string(cf.depth()) + ")");
    }
    Rational a = cf.convergent(n).value();
    Rational b = cf.convergent(n + 1).value();
    if (b < a) {
        std::swap(a, b);
    }
    return {a, b};
}

RationalInterval tightest_enclosure(const ContinuedFraction& cf)
{
    return enclosure(cf, cf.depth() - 1);
}

GapBounds gap_bounds(const ContinuedFraction& cf, std::size_t n)
{
    if (n + 1 > cf.depth()) {
        throw IndexError("gap_bounds needs n <= N-1 (n = " + std::to_string(n) +
                         ", N = " + std::to_string(cf.depth()) + ")");
    }
    const BigInt& qn = cf.q(n);
    const BigInt& qn1 = cf.q(n + 1);
    return {Rational(BigInt(1), qn * (qn1 + qn)), Rational(BigInt(1), qn * qn1)};
}

Status check_quotient_product(const ContinuedFraction& cf, std::size_t n)
{
    if (n > cf.depth()) {
        throw IndexError("check_quotient_product needs n <= N");
    }
    BigInt prod = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        prod *= cf.a(k) + 1;
    }
    return prod > cf.q(n) ? Status::Verified : Status::Failed;
}

Verdict check_q_growth(const ContinuedFraction& cf, std::size_t m, const Rational& eps)
{
    if (m < 3) {
        throw DomainError("check_q_growth: (m-3)! undefined for m < 3");
    }
    if (m > cf.depth()) {
        throw IndexError("check_q_growth needs m <= N");
    }
    const BigInt exponent = factorial_int(m - 3);
    Rational e = eps;
    Verdict v;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const LogMag lhs = int_power(log10_of_e(e / exponent), exponent);
        const LogMag rhs = logmag_from_int(cf.q(m), e);
        v = verdict_less(lhs, rhs, Tier::Log);
        if (v.status != Status::Undecided) {
            break;
        }
        e /= pow10_int(20);
    }
    return v;
}

} // namespace liouville
