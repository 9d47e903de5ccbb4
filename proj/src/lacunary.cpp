#include "liouville/lacunary.hpp"

#include "liouville/liouville.hpp"

#include <algorithm>

namespace liouville {

namespace {

unsigned long bit_length(const BigInt& x)
{
    return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

BigInt power(const BigInt& base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

void check_stop(const std::stop_token& stop)
{
    if (stop.stop_requested()) {
        throw Cancelled();
    }
}

} // namespace

std::vector<unsigned long> parse_bases(std::string_view text)
{
    std::vector<unsigned long> out;
    for (const char c : text) {
        if (c < '0' || c > '9') {
            throw DomainError("gap bases must be decimal digits, got '" + std::string(text) + "'");
        }
        out.push_back(static_cast<unsigned long>(c - '0'));
    }
    return out;
}

GapSequence GapSequence::from_bases(const std::vector<unsigned long>& bases, const GapOptions& opts)
{
    if (bases.empty()) {
        throw DomainError("gap sequence needs at least one base");
    }
    GapSequence seq;
    BigInt fact = 1;
    for (std::size_t n = 1; n <= bases.size(); ++n) {
        const unsigned long b = bases[n - 1];
        if (b < 2 || (!opts.allow_custom_bases && b != 2 && b != 3)) {
            throw DomainError("gap base " + std::to_string(b) + " at index " + std::to_string(n) +
                              " not in {2,3}" +
                              (b >= 2 ? " (custom bases need an explicit flag)" : ""));
        }
        fact *= n;
        Term t;
        t.base = b;
        t.exponent = fact;
        if (n <= opts.materialize_up_to) {
            BigInt v;
            mpz_ui_pow_ui(v.get_mpz_t(), b, fact.get_ui());
            t.value = std::move(v);
        }
        seq.terms_.push_back(std::move(t));
    }
    for (std::size_t j = 2; j <= seq.size(); ++j) {
        const Verdict v = seq.materialized(j)
                              ? exact_less(Rational(seq.value(j - 1)), Rational(seq.value(j)))
                              : refine(
                                    [&](const Rational& e) {
                                        return verdict_less(seq.log10_term(j - 1, e),
                                                            seq.log10_term(j, e), Tier::Log);
                                    },
                                    default_epsilon());
        if (v.status != Status::Verified) {
            throw DomainError("gap sequence not strictly increasing at index " + std::to_string(j));
        }
    }
    return seq;
}

GapSequence GapSequence::custom(std::vector<BigInt> values)
{
    if (values.empty()) {
        throw DomainError("custom gap sequence is empty");
    }
    if (values.front() < 2) {
        throw DomainError("custom gap sequence needs s_1 >= 2");
    }
    GapSequence seq;
    seq.custom_ = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && values[i] <= *seq.terms_.back().value) {
            throw DomainError("custom gap sequence not strictly increasing at index " +
                              std::to_string(i + 1));
        }
        Term t;
        t.value = std::move(values[i]);
        seq.terms_.push_back(std::move(t));
    }
    return seq;
}

const GapSequence::Term& GapSequence::term(std::size_t j) const
{
    if (j < 1 || j > terms_.size()) {
        throw IndexError("gap index " + std::to_string(j) + " outside 1.." +
                         std::to_string(terms_.size()));
    }
    return terms_[j - 1];
}

bool GapSequence::materialized(std::size_t j) const
{
    return term(j).value.has_value();
}

const BigInt& GapSequence::value(std::size_t j) const
{
    const Term& t = term(j);
    if (!t.value) {
        throw BudgetError("gap term s_" + std::to_string(j) + " = " + std::to_string(t.base) +
                          "^(" + std::to_string(j) + "!) is symbolic beyond the budget");
    }
    return *t.value;
}

unsigned long GapSequence::base(std::size_t j) const
{
    if (custom_) {
        throw DomainError("custom gap sequences have no base/exponent form");
    }
    return term(j).base;
}

const BigInt& GapSequence::exponent(std::size_t j) const
{
    if (custom_) {
        throw DomainError("custom gap sequences have no base/exponent form");
    }
    return term(j).exponent;
}

LogMag GapSequence::log10_term(std::size_t j, const Rational& eps) const
{
    const Term& t = term(j);
    if (t.value) {
        return logmag_from_int(*t.value, eps);
    }
    return int_power(logmag_from_int(BigInt(t.base), eps / t.exponent), t.exponent);
}

int GapSequence::compare(std::size_t j, const BigInt& k) const
{
    const Term& t = term(j);
    if (t.value) {
        return sgn(*t.value - k);
    }
    if (k < 1 || bit_length(k) <= t.exponent) {
        // s_j >= 2^(j!) > k.
        return 1;
    }
    const Verdict v = refine(
        [&](const Rational& e) { return verdict_less(logmag_from_int(k, e), log10_term(j, e), Tier::Log); },
        default_epsilon());
    if (v.status == Status::Verified) {
        return 1;
    }
    const Verdict w = refine(
        [&](const Rational& e) { return verdict_less(log10_term(j, e), logmag_from_int(k, e), Tier::Log); },
        default_epsilon());
    if (w.status == Status::Verified) {
        return -1;
    }
    throw DomainError("cannot decide s_" + std::to_string(j) + " against " + k.get_str());
}

std::optional<std::size_t> GapSequence::first_exceeding(const BigInt& k) const
{
    for (std::size_t j = 1; j <= size(); ++j) {
        if (compare(j, k) > 0) {
            return j;
        }
    }
    return std::nullopt;
}

std::string GapSequence::describe() const
{
    std::string out;
    if (custom_) {
        out = "custom ";
        for (std::size_t j = 1; j <= size(); ++j) {
            out += (j > 1 ? "," : "") + value(j).get_str();
        }
        return out;
    }
    out = "bases ";
    for (const auto& t : terms_) {
        out += std::to_string(t.base);
    }
    return out;
}

GapSequence gap_terms(const std::vector<unsigned long>& bases, std::size_t count,
                      const GapOptions& opts)
{
    if (count < 1) {
        throw DomainError("gap_terms needs M >= 1");
    }
    if (count > bases.size()) {
        throw DomainError("gap_terms: " + std::to_string(count) + " terms requested, " +
                          std::to_string(bases.size()) + " bases given");
    }
    return GapSequence::from_bases(std::vector<unsigned long>(bases.begin(), bases.begin() + count),
                                   opts);
}

GapGrowthResult check_gap_growth(const GapSequence& gaps, unsigned long k, std::size_t first,
                                 std::size_t last, const Rational& eps)
{
    if (k < 1) {
        throw DomainError("check_gap_growth needs k >= 1");
    }
    if (first < 1 || last > gaps.size() || first > last || last - first + 1 < 3) {
        throw DomainError("check_gap_growth needs a window of at least 3 known terms");
    }
    GapGrowthResult out;
    Rational e = eps;
    for (int attempt = 0; attempt < 4; ++attempt) {
        out.steps.clear();
        for (std::size_t n = first + 1; n <= last; ++n) {
            GapStep step;
            step.n = n;
            const LogMag cur = gaps.log10_term(n, e);
            const LogMag prev = int_power(gaps.log10_term(n - 1, e / k), BigInt(k));
            step.margin = LogMag::interval(cur.lo - prev.hi, cur.hi - prev.lo);
            if (gaps.materialized(n) && bit_length(gaps.value(n - 1)) * k <= 10000000) {
                step.step = exact_less(Rational(power(gaps.value(n - 1), k)), Rational(gaps.value(n)),
                                       false, e);
            } else {
                step.step = verdict_less(prev, cur, Tier::Log);
            }
            out.steps.push_back(std::move(step));
        }
        bool undecided = false;
        bool increasing = true;
        for (std::size_t i = 1; i < out.steps.size(); ++i) {
            const Order o = verify_strict_less(out.steps[i - 1].margin, out.steps[i].margin);
            if (o == Order::Undecided) {
                undecided = true;
            } else if (o == Order::Greater) {
                increasing = false;
            }
        }
        const LogMag& last_margin = out.steps.back().margin;
        out.margins_increasing = increasing && !undecided;
        if (!increasing || last_margin.hi <= 0) {
            out.status = Status::Failed;
        } else if (undecided || last_margin.lo <= 0) {
            out.status = Status::Undecided;
        } else {
            out.status = Status::Verified;
        }
        if (out.status != Status::Undecided) {
            break;
        }
        e /= pow10_int(20);
    }
    return out;
}

int alpha(const BigInt& k, const GapSequence& gaps)
{
    if (k < 1) {
        throw DomainError("alpha needs k >= 1");
    }
    for (std::size_t j = 1; j <= gaps.size(); ++j) {
        const int c = gaps.compare(j, k);
        if (c == 0) {
            return 1;
        }
        if (c > 0) {
            return 0;
        }
    }
    throw DomainError("insufficient gap terms to decide alpha(" + k.get_str() + ")");
}

BigInt CanonicalDenominator::value(std::size_t digit_limit) const
{
    if (!ten_exponent.fits_ulong_p() || !q_exponent.fits_ulong_p()) {
        throw BudgetError("canonical denominator exponent too large to materialize");
    }
    const unsigned long e10 = ten_exponent.get_ui();
    const unsigned long qe = q_exponent.get_ui();
    const double digits = static_cast<double>(e10) +
                          static_cast<double>(qe) * static_cast<double>(decimal_digits(q));
    if (digits > static_cast<double>(digit_limit)) {
        throw BudgetError("canonical denominator would have about " +
                          std::to_string(static_cast<unsigned long long>(digits)) +
                          " digits, above the limit " + std::to_string(digit_limit));
    }
    return pow10_int(e10) * power(q, qe);
}

LogMag CanonicalDenominator::log10(const Rational& eps) const
{
    LogMag out = LogMag::point(Rational(ten_exponent));
    if (q > 1 && q_exponent > 0) {
        out = product(out, int_power(logmag_from_int(q, eps / q_exponent), q_exponent));
    }
    return out;
}

bool Approximant::reduced_divides_canonical() const
{
    BigInt d = value.get_den();
    if (d == 1) {
        return true;
    }
    const BigInt qn = power(canonical_den.q, canonical_den.q_exponent.get_ui());
    BigInt g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), qn.get_mpz_t());
    d /= g;
    const unsigned long twos = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), BigInt(2).get_mpz_t());
    const unsigned long fives = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), BigInt(5).get_mpz_t());
    return d == 1 && canonical_den.ten_exponent >= twos && canonical_den.ten_exponent >= fives;
}

BigInt Approximant::canonical_numerator() const
{
    Rational scaled = value * Rational(canonical_den.value());
    scaled.canonicalize();
    if (scaled.get_den() != 1) {
        throw DomainError("reduced denominator does not divide the canonical one");
    }
    return scaled.get_num();
}

Approximant eval_truncation_exact(const Rational& z, const BigInt& n, const GapSequence& gaps,
                                  const TruncationOptions& opts)
{
    if (n < 0) {
        throw DomainError("truncation index must be nonnegative");
    }
    if (n > 100000) {
        throw BudgetError("exact tier unavailable: canonical exponent " + n.get_str() +
                          "! is beyond reach; use the tail/log tier");
    }
    const unsigned long n_ul = n.get_ui();

    std::vector<unsigned long> nonzero;
    bool reached = false;
    for (std::size_t j = 1; j <= gaps.size(); ++j) {
        if (gaps.compare(j, n) > 0) {
            reached = true;
            break;
        }
        nonzero.push_back(gaps.value(j).get_ui());
    }
    if (!reached) {
        throw DomainError("gap terms end at or below the truncation index " + n.get_str() +
                          "; cannot tell which alpha_k vanish");
    }

    const BigInt& p = z.get_num();
    const BigInt& q = z.get_den();
    Rational value = 0;
    if (!nonzero.empty() && z != 0) {
        const unsigned long top = nonzero.back();
        const BigInt top_fact = factorial_int(top);
        if (top_fact > opts.budget) {
            throw BudgetError("exact tier unavailable: exponent " + std::to_string(top) +
                              "! = " + top_fact.get_str() + " exceeds budget " +
                              opts.budget.get_str() + "; use the tail/log tier");
        }
        const unsigned long top_e = top_fact.get_ui();
        BigInt numerator = 0;
        for (const unsigned long k : nonzero) {
            check_stop(opts.stop);
            const unsigned long kf = factorial_int(k).get_ui();
            numerator += power(p, k) * power(q, top - k) * pow10_int(top_e - kf);
        }
        check_stop(opts.stop);
        value = Rational(numerator, pow10_int(top_e) * power(q, top));
        value.canonicalize();
    }

    Approximant out;
    out.value = value;
    out.truncation_index = n;
    out.canonical_den.ten_exponent = factorial_int(n_ul);
    out.canonical_den.q = q;
    out.canonical_den.q_exponent = n;
    return out;
}

Rational factorial_weight_sum(unsigned long count)
{
    if (count > 9) {
        throw BudgetError("factorial_weight_sum materializes 10^(k!) only for k <= 9");
    }
    Rational sum = 0;
    for (unsigned long k = 1; k <= count; ++k) {
        sum += make_rational(BigInt(k), pow10_int(factorial_int(k).get_ui()));
    }
    return sum;
}

namespace {

struct FirstOmitted {
    BigInt s;
    BigInt fact;
};

FirstOmitted first_omitted(const BigInt& m, const GapSequence& gaps, const TailOptions& opts)
{
    const auto j = gaps.first_exceeding(m);
    if (!j) {
        throw DomainError("no gap term beyond truncation index " + m.get_str() + " is known");
    }
    if (!gaps.materialized(*j) || gaps.value(*j) > opts.factorial_limit) {
        throw BudgetError("first omitted gap term s_" + std::to_string(*j) +
                          " is above the factorial limit " + opts.factorial_limit.get_str() +
                          "; its exponent s! cannot be written as an exact rational");
    }
    const BigInt& s = gaps.value(*j);
    return {s, factorial_int(s.get_ui())};
}

} // namespace

LogMag tail_bound(const Rational& z_abs_log_hi, const BigInt& m, const GapSequence& gaps,
                  const TailOptions& opts)
{
    const FirstOmitted f = first_omitted(m, gaps, opts);
    const LogMag first = LogMag::point(Rational(f.s) * z_abs_log_hi - f.fact);
    Rational ratio = z_abs_log_hi - Rational(f.s * f.fact);
    if (ratio < -60) {
        ratio = -60;
    }
    return geometric_tail_upper(first, ratio, opts.eps);
}

LogMag tail_enclosure(const Rational& z_log_lo, const Rational& z_log_hi, const BigInt& m,
                      const GapSequence& gaps, const TailOptions& opts)
{
    if (z_log_lo > z_log_hi) {
        throw DomainError("tail_enclosure: empty magnitude range");
    }
    const FirstOmitted f = first_omitted(m, gaps, opts);
    const LogMag upper = tail_bound(z_log_hi, m, gaps, opts);
    return LogMag::interval(Rational(f.s) * z_log_lo - f.fact, upper.hi);
}

LogMag power_difference_bound(const Rational& max_abs_log_hi, const Rational& z,
                              const Rational& delta_log_hi, const BigInt& k, const Rational& eps)
{
    if (k < 1) {
        throw DomainError("power_difference_bound needs k >= 1");
    }
    if (k == 1) {
        return LogMag::point(delta_log_hi);
    }
    Rational top = max_abs_log_hi;
    if (z != 0) {
        top = std::max(top, logmag_from_rational(abs(z), eps).hi);
    }
    return shift(logmag_from_int(k, eps), delta_log_hi + Rational(k - 1) * top);
}

Case1Approximant build_case1_approximant(const ContinuedFraction& cf, std::size_t n,
                                         const GapSequence& gaps, const TruncationOptions& opts)
{
    if (n < 1) {
        throw DomainError("Case-1 approximants start at n = 1");
    }
    const std::size_t idx = 2 * n * n;
    if (idx > cf.depth()) {
        throw DomainError("gamma_" + std::to_string(n) + " needs convergent " +
                          std::to_string(idx) + " but the depth is " + std::to_string(cf.depth()));
    }
    Case1Approximant out;
    out.convergent_index = idx;
    out.approximant = eval_truncation_exact(cf.convergent(idx).value(), BigInt(n), gaps, opts);
    out.approximant.source = ApproximantSource::Case1;
    out.approximant.source_index = n;
    return out;
}

std::size_t case2_index(const GapSequence& gaps, unsigned long phi_value)
{
    const auto t = gaps.first_exceeding(BigInt(phi_value));
    if (!t) {
        throw DomainError("no known gap term exceeds phi = " + std::to_string(phi_value));
    }
    return *t;
}

Case2Approximant build_case2_approximant(const ContinuedFraction& cf, std::size_t n_j,
                                         const GapSequence& gaps, const TruncationOptions& opts)
{
    if (n_j < 1 || n_j > cf.depth()) {
        throw IndexError("n_j outside 1..N");
    }
    Case2Approximant out;
    out.phi = phi(cf.q(n_j));
    out.t = case2_index(gaps, out.phi);
    if (out.t == 1) {
        throw DomainError("t_j = 1 (s_1 > phi_{n_j} = " + std::to_string(out.phi) +
                          "): s_{t_j - 1} does not exist");
    }
    out.truncation = gaps.value(out.t - 1);
    out.approximant = eval_truncation_exact(cf.convergent(n_j).value(), out.truncation, gaps, opts);
    out.approximant.source = ApproximantSource::Case2;
    out.approximant.source_index = n_j;
    return out;
}

} // namespace liouville
