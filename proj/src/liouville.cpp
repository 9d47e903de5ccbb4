#include "liouville/liouville.hpp"

#include <algorithm>

namespace liouville {

namespace {

// n^k compared against a small value without materializing huge powers.
bool power_at_least(std::size_t n, unsigned long k, unsigned long value)
{
    if (n <= 1) {
        return 1 >= value;
    }
    if (k >= 64) {
        return true;
    }
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), n, k);
    return p >= value;
}

} // namespace

BranchChoices BranchChoices::parse(std::string_view text)
{
    BranchChoices out;
    for (const char c : text) {
        if (c != '0' && c != '1') {
            throw DomainError("branch choices must be a string over {0,1}, got '" +
                              std::string(text) + "'");
        }
        out.bits.push_back(c == '1');
    }
    return out;
}

BranchChoices BranchChoices::zeros(std::size_t count)
{
    return BranchChoices{std::vector<bool>(count, false)};
}

std::string BranchChoices::to_string() const
{
    std::string out;
    for (const bool b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

PartialQuotients generate_ultra_strong(const BranchChoices& choices, std::size_t depth)
{
    if (depth < 3) {
        throw DomainError("ultra-strong construction needs depth >= 3");
    }
    if (choices.bits.size() < depth - 3) {
        throw DomainError("need " + std::to_string(depth - 3) + " branch bits for depth " +
                          std::to_string(depth) + ", got " +
                          std::to_string(choices.bits.size()));
    }
    std::vector<BigInt> a(3, BigInt(1));
    BigInt running = 8; // (a_1 + 1)(a_2 + 1)(a_3 + 1)
    for (std::size_t j = 4; j <= depth; ++j) {
        BigInt v;
        mpz_pow_ui(v.get_mpz_t(), running.get_mpz_t(), j - 3);
        BigInt aj = v + (choices.bits[j - 4] ? 1 : 0);
        running *= aj + 1;
        a.push_back(std::move(aj));
    }
    return PartialQuotients(std::move(a));
}

std::vector<AuditRow> verify_ultra_strong(const ContinuedFraction& cf, std::size_t up_to,
                                          const UltraStrongOptions& opts)
{
    if (up_to + 1 > cf.depth()) {
        throw IndexError("verify_ultra_strong needs up_to <= N-1 (N = " +
                         std::to_string(cf.depth()) + ")");
    }
    // base^exponent <= target (or < when strict), exact when small enough.
    auto compare_power = [&](const BigInt& base, std::size_t exponent, const BigInt& target,
                             bool strict) {
        const std::size_t digits = decimal_digits(base) * std::max<std::size_t>(exponent, 1);
        if (!opts.force_log && digits <= opts.exact_digit_limit) {
            BigInt power;
            mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), exponent);
            return exact_less(Rational(power), Rational(target), !strict, opts.eps);
        }
        return refine(
            [&](const Rational& e) {
                const LogMag lhs =
                    int_power(logmag_from_int(base, e / (exponent + 1)), BigInt(exponent));
                const LogMag rhs = logmag_from_int(target, e);
                return strict ? verdict_less(lhs, rhs, Tier::Log)
                              : verdict_less_equal(lhs, rhs, Tier::Log);
            },
            opts.eps);
    };

    std::vector<AuditRow> rows;
    for (std::size_t n = 1; n <= up_to; ++n) {
        const auto n_ll = static_cast<long long>(n);
        rows.push_back(AuditRow::from("US.definition", {n_ll},
                                      compare_power(cf.q(n), n - 1, cf.q(n + 1), false)));
        if (n >= 3) {
            rows.push_back(
                AuditRow::from("US.chain", {n_ll}, compare_power(cf.q(n), n - 2, cf.a(n + 1), true)));
        }
    }
    return rows;
}

Status verify_witness(const RationalInterval& xi, const LiouvilleWitness& w)
{
    if (w.q < 1 || w.exponent < 1) {
        throw DomainError("witness needs q >= 1 and exponent >= 1");
    }
    if (xi.lo > xi.hi) {
        throw DomainError("empty enclosure");
    }
    Rational r(w.p, w.q);
    r.canonicalize();
    if (xi.contains_open(r)) {
        return Status::Undecided;
    }
    BigInt qn;
    mpz_pow_ui(qn.get_mpz_t(), w.q.get_mpz_t(), w.exponent);
    const Rational bound(BigInt(1), qn);
    const Rational d_lo = abs(xi.lo - r);
    const Rational d_hi = abs(xi.hi - r);
    if (std::max(d_lo, d_hi) <= bound) {
        return Status::Verified;
    }
    if (std::min(d_lo, d_hi) >= bound) {
        return Status::Failed;
    }
    return Status::Undecided;
}

unsigned long phi(const BigInt& q)
{
    if (q < 1) {
        throw DomainError("phi needs q >= 1");
    }
    const std::size_t d = decimal_digits(q);
    unsigned long k = 1;
    std::size_t fact = 1;
    for (;;) {
        if (d <= fact) {
            return k;
        }
        if (d == fact + 1 && q == pow10_int(fact)) {
            return k;
        }
        ++k;
        fact *= k;
    }
}

std::vector<PhiValue> phi_values(const ContinuedFraction& cf, std::size_t first, std::size_t last)
{
    if (first < 1 || first > last || last > cf.depth()) {
        throw IndexError("phi window must satisfy 1 <= first <= last <= N");
    }
    std::vector<PhiValue> out;
    for (std::size_t n = first; n <= last; ++n) {
        out.push_back({n, phi(cf.q(n))});
    }
    return out;
}

CaseClassification classify_case(std::span<const PhiValue> phis, unsigned long k)
{
    if (phis.empty()) {
        throw DomainError("classify_case needs a nonempty window");
    }
    if (k < 1) {
        throw DomainError("classify_case needs k >= 1");
    }
    for (std::size_t i = 1; i < phis.size(); ++i) {
        if (phis[i].n != phis[i - 1].n + 1) {
            throw DomainError("classify_case needs consecutive indices");
        }
    }
    CaseClassification out;
    out.case1_evidence = std::all_of(phis.begin(), phis.end(), [k](const PhiValue& v) {
        return power_at_least(v.n, k, v.phi);
    });
    for (std::size_t i = 0; i + 1 < phis.size(); ++i) {
        const auto& cur = phis[i];
        const auto& next = phis[i + 1];
        if (power_at_least(cur.n, k, cur.phi) && !power_at_least(next.n, k, next.phi)) {
            out.pairs.emplace_back(cur.n, k);
        }
    }
    return out;
}

} // namespace liouville
