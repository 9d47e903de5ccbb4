#include "liouville/audit.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <future>
#include <sstream>

namespace liouville {

namespace {

using Index = std::vector<long long>;

constexpr unsigned long kExactFactorialLimit = 100000;

long long ll(std::size_t v)
{
    return static_cast<long long>(v);
}

BigInt ipow(const BigInt& base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& x, unsigned long e)
{
    Rational r(ipow(x.get_num(), e), ipow(x.get_den(), e));
    r.canonicalize();
    return r;
}

LogMag negate(const LogMag& a)
{
    return LogMag::interval(-a.hi, -a.lo);
}


std::optional<BigInt> factorial_if_small(const BigInt& x)
{
    if (x < 0 || x > kExactFactorialLimit) {
        return std::nullopt;
    }
    return factorial_int(x.get_ui());
}

// Runs f; budget and precondition failures become an Undecided row instead
// of aborting the whole audit.
AuditRow guarded(const std::string& id, const Index& index, Tier tier,
                 const std::function<AuditRow()>& f)
{
    try {
        return f();
    } catch (const BudgetError& e) {
        AuditRow r;
        r.check_id = id;
        r.index = index;
        r.tier = tier;
        r.note = std::string("budget: ") + e.what();
        return r;
    } catch (const PreconditionError& e) {
        AuditRow r;
        r.check_id = id;
        r.index = index;
        r.tier = tier;
        r.note = std::string("precondition: ") + e.what();
        return r;
    }
}

std::string join_note(const std::string& a, const std::string& b)
{
    return a.empty() ? b : b + "; " + a;
}

AuditRow row(std::string id, Index index, Verdict v, std::string note = {})
{
    if (!note.empty()) {
        v.note = v.note.empty() ? note : note + "; " + v.note;
    }
    return AuditRow::from(std::move(id), std::move(index), v);
}

// Quantity known to lie in [lo, hi] (nonnegative rationals) against q < target.
// With hi_open the supremum hi is not attained, so hi = target still verifies.
Verdict two_sided_exact(const Rational& lo, const Rational& hi, const Rational& target,
                        const Rational& eps, bool hi_open = false)
{
    Verdict up = exact_less(hi, target, hi_open, eps);
    if (up.status == Status::Verified) {
        return up;
    }
    Verdict down = exact_less(lo, target, false, eps);
    if (down.status == Status::Failed) {
        return down;
    }
    up.status = Status::Undecided;
    return up;
}

// Enclosure of log10 of a positive quantity bracketed by rationals [lo, hi];
// the lower end is absent when lo = 0.
struct LogRange {
    std::optional<LogMag> lower;
    LogMag upper;
};

LogRange log_range(const Rational& lo, const Rational& hi, const Rational& eps)
{
    LogRange r;
    r.upper = logmag_from_rational(hi, eps);
    if (lo > 0) {
        r.lower = logmag_from_rational(lo, eps);
    }
    return r;
}

// x in [lo, hi), hi approached but not attained, against x < factor / den^power.
Verdict below_inverse_power(const Rational& lo, const Rational& hi,
                            const CanonicalDenominator& den, unsigned long power,
                            unsigned long factor, const AuditOptions& opts)
{
    const double digits =
        (den.ten_exponent.get_d() + den.q_exponent.get_d() * static_cast<double>(decimal_digits(den.q))) *
        static_cast<double>(power);
    if (digits <= 2000000.0) {
        const Rational target(BigInt(factor), ipow(den.value(), power));
        return two_sided_exact(lo, hi, target, opts.eps, true);
    }
    if (hi == 0) {
        Verdict v;
        v.status = Status::Verified;
        v.tier = Tier::Log;
        return v;
    }
    return refine(
        [&](const Rational& e) {
            const LogRange r = log_range(lo, hi, e);
            const LogMag rhs = negate(int_power(den.log10(e / power), BigInt(power)));
            const LogMag target =
                factor == 1 ? rhs : product(rhs, logmag_from_int(BigInt(factor), e));
            return bounded_less(r.lower, r.upper, target, Tier::Log);
        },
        opts.eps);
}

// Admissible xi relative to the convergent z = p_n/q_n: the tightest
// enclosure cut by the gap lower bound |xi - z| > 1/(q_n (q_{n+1} + q_n)).
// The far end is always an open enclosure endpoint.
struct XiRange {
    Rational lo;
    Rational hi;
    Rational z;
    bool z_below = true;

    const Rational& near() const { return z_below ? lo : hi; }
    const Rational& far() const { return z_below ? hi : lo; }
};

XiRange xi_range(const ContinuedFraction& cf, std::size_t n)
{
    const RationalInterval e = tightest_enclosure(cf);
    if (e.lo <= 0) {
        throw DomainError("audit needs xi > 0 (a_1 >= 1)");
    }
    XiRange r;
    r.z = cf.convergent(n).value();
    const Rational delta = gap_bounds(cf, n).lower;
    r.z_below = r.z <= e.lo;
    if (r.z_below) {
        r.lo = std::max(e.lo, Rational(r.z + delta));
        r.hi = e.hi;
    } else {
        r.lo = e.lo;
        r.hi = std::min(e.hi, Rational(r.z - delta));
    }
    if (r.lo > r.hi) {
        throw DomainError("empty admissible range for xi");
    }
    return r;
}

Rational eval_f(const Rational& x, const BigInt& n, const GapSequence& gaps, const AuditOptions& opts)
{
    TruncationOptions t;
    t.budget = opts.budget;
    t.stop = opts.stop;
    return eval_truncation_exact(x, n, gaps, t).value;
}

// |F_m(xi) - F_m(z)| over the admissible range (F_m increasing for x > 0).
struct DiffRange {
    Rational lo;
    Rational hi;
};

DiffRange truncation_difference(const XiRange& xi, const BigInt& m, const GapSequence& gaps,
                                const AuditOptions& opts)
{
    const Rational fz = eval_f(xi.z, m, gaps, opts);
    Rational a = abs(eval_f(xi.near(), m, gaps, opts) - fz);
    Rational b = abs(eval_f(xi.far(), m, gaps, opts) - fz);
    if (b < a) {
        std::swap(a, b);
    }
    return {a, b};
}

LogMag xi_tail(const XiRange& xi, const BigInt& m, const GapSequence& gaps, const Rational& eps)
{
    TailOptions t;
    t.eps = eps;
    return tail_enclosure(logmag_from_rational(xi.lo, eps).lo, logmag_from_rational(xi.hi, eps).hi, m,
                          gaps, t);
}

// q < 10^E; E absent means E is too large to write but at least e_floor.
Verdict q_below_pow10(const BigInt& q, const std::optional<BigInt>& e, const BigInt& e_floor,
                      const Rational& eps)
{
    if (e) {
        return refine(
            [&](const Rational& w) {
                Verdict v = verdict_less(logmag_from_int(q, w), LogMag::point(Rational(*e)), Tier::Log);
                v.tier = Tier::Exact;
                return v;
            },
            eps);
    }
    if (BigInt(static_cast<unsigned long>(decimal_digits(q))) <= e_floor) {
        Verdict v;
        v.status = Status::Verified;
        v.tier = Tier::Log;
        v.margin = Rational(e_floor) - logmag_from_int(q, eps).hi;
        return v;
    }
    throw BudgetError("exponent beyond exact reach and q has more digits than its floor");
}

// q > 10^E, same conventions.
Verdict q_above_pow10(const BigInt& q, const std::optional<BigInt>& e, const BigInt& e_floor,
                      const Rational& eps)
{
    if (e) {
        return refine(
            [&](const Rational& w) {
                Verdict v = verdict_less(LogMag::point(Rational(*e)), logmag_from_int(q, w), Tier::Log);
                v.tier = Tier::Exact;
                return v;
            },
            eps);
    }
    if (BigInt(static_cast<unsigned long>(decimal_digits(q))) <= e_floor) {
        Verdict v;
        v.status = Status::Failed;
        v.tier = Tier::Log;
        v.margin = logmag_from_int(q, eps).hi - Rational(e_floor);
        return v;
    }
    throw BudgetError("exponent beyond exact reach and q has more digits than its floor");
}

RowApproximant describe(const Approximant& a)
{
    return {a.canonical_numerator().get_str(), a.canonical_den.ten_exponent.get_str(),
            a.canonical_den.q.get_str(), a.canonical_den.q_exponent.get_str()};
}

// Combines a chain of verdicts: Failed wins, then Undecided; the margin is
// that of the deciding part (the smallest one when all are Verified).
Verdict chain(const std::vector<std::pair<std::string, Verdict>>& parts, std::string* note)
{
    Verdict out;
    out.status = Status::Verified;
    out.tier = Tier::Exact;
    for (const auto& [name, v] : parts) {
        out.status = worst(out.status, v.status);
        if (v.tier == Tier::Log) {
            out.tier = Tier::Log;
        }
    }
    for (const auto& [name, v] : parts) {
        if (v.status == out.status &&
            (!out.margin || (v.margin && *v.margin < *out.margin))) {
            out.margin = v.margin;
        }
        if (note) {
            *note += (note->empty() ? "" : "; ") + name + ": " + std::string(to_string(v.status));
        }
    }
    return out;
}

std::size_t gap_index_of(const GapSequence& gaps, const BigInt& n)
{
    for (std::size_t j = 1; j <= gaps.size(); ++j) {
        const int c = gaps.compare(j, n);
        if (c == 0) {
            return j;
        }
        if (c > 0) {
            break;
        }
    }
    return 0;
}

} // namespace

IndexWindow IndexWindow::parse(std::string_view text)
{
    auto number = [&](std::string_view s) {
        std::size_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
            throw DomainError("bad window '" + std::string(text) + "', expected a..b");
        }
        return v;
    };
    IndexWindow w;
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        w.first = w.last = number(text);
    } else {
        w.first = number(text.substr(0, dots));
        w.last = number(text.substr(dots + 2));
    }
    if (w.first < 1 || w.first > w.last) {
        throw DomainError("conflicting window bounds '" + std::string(text) + "'");
    }
    return w;
}

std::size_t max_case1_index(std::size_t depth)
{
    std::size_t n = 0;
    while (2 * (n + 1) * (n + 1) + 1 <= depth) {
        ++n;
    }
    return n;
}

std::vector<AuditRow> audit_case1(const ContinuedFraction& cf, const GapSequence& gaps,
                                  const Case1Config& cfg, const AuditOptions& opts)
{
    if (cfg.k < 1) {
        throw DomainError("Case-1 exponent k must be >= 1");
    }
    const std::size_t depth = cf.depth();
    if (cfg.n_window && 2 * cfg.n_window->last * cfg.n_window->last + 1 > depth) {
        throw DomainError("Case-1 window up to n = " + std::to_string(cfg.n_window->last) +
                          " needs N >= 2n^2+1 = " +
                          std::to_string(2 * cfg.n_window->last * cfg.n_window->last + 1) +
                          "; max feasible n for N = " + std::to_string(depth) + " is " +
                          std::to_string(max_case1_index(depth)));
    }
    if (cfg.growth_window && (cfg.growth_window->first < 3 || cfg.growth_window->last > depth)) {
        throw DomainError("C1.growth window must lie in 3..N");
    }
    const Rational& eps = opts.eps;
    std::vector<AuditRow> rows;
    if (!cfg.n_window && !cfg.growth_window) {
        return rows;
    }

    for (std::size_t n = 1; n <= depth; ++n) {
        const unsigned long ph = phi(cf.q(n));
        const BigInt bound = ipow(BigInt(static_cast<unsigned long>(n)), cfg.k);
        rows.push_back(row("C1.pre-phi", {ll(n)},
                           exact_less(Rational(BigInt(ph)), Rational(bound), true, eps),
                           "phi = " + std::to_string(ph)));
    }

    if (cfg.growth_window) {
        for (std::size_t m = cfg.growth_window->first; m <= cfg.growth_window->last; ++m) {
            rows.push_back(row("C1.growth", {ll(m)}, check_q_growth(cf, m, eps)));
        }
    }

    {
        // sum_k k/10^(k!) through k = 4, plus the tail sum_{k>=5} <= 2*5/10^120.
        const Rational s4 = factorial_weight_sum(4);
        const Rational upper = s4 + make_rational(BigInt(10), pow10_int(120));
        const std::string shown = format_decimal(s4, 7);
        Verdict v = exact_less(upper, Rational(BigInt(1200031), pow10_int(7)), false, eps);
        if (s4 < make_rational(BigInt(1200030), pow10_int(7))) {
            v.status = Status::Failed;
        }
        rows.push_back(row("C1.const", {}, v, "sum_{k<=4} k/10^(k!) = " + shown + "..."));
    }

    if (!cfg.n_window) {
        return rows;
    }

    TruncationOptions topts;
    topts.budget = opts.budget;
    topts.stop = opts.stop;
    std::vector<Rational> gammas;
    for (std::size_t n = cfg.n_window->first; n <= cfg.n_window->last; ++n) {
        const Index idx{ll(n)};
        const BigInt nb(static_cast<unsigned long>(n));
        const std::size_t ci = 2 * n * n;
        const Case1Approximant c1 = build_case1_approximant(cf, n, gaps, topts);
        const Approximant& g = c1.approximant;
        gammas.push_back(g.value);
        const XiRange xi = xi_range(cf, ci);
        const BigInt& qc = cf.q(ci);

        if (n >= 2) {
            // q_{2n^2}^2 > e^(n^2 (2n^2-3)!) > (1+|xi|)^(n-1) 10^(n n!).
            const BigInt e_exp = BigInt(static_cast<unsigned long>(n * n)) * factorial_int(ci - 3);
            rows.push_back(row("C1.bigq", idx, refine([&](const Rational& e) {
                                   const LogMag lhs = int_power(logmag_from_int(qc, e / 2), 2);
                                   const LogMag rhs = int_power(log10_of_e(e / e_exp), e_exp);
                                   return verdict_less(rhs, lhs, Tier::Log);
                               }, eps)));
            rows.push_back(row("C1.bigq-rhs", idx, refine([&](const Rational& e) {
                                   const BigInt nm1(static_cast<unsigned long>(n - 1));
                                   const LogMag one_plus =
                                       logmag_from_rational(1 + xi.hi, e / (nm1 + 1));
                                   const LogMag lhs = shift(int_power(one_plus, nm1),
                                                            Rational(nb * factorial_int(n)));
                                   const LogMag rhs = int_power(log10_of_e(e / e_exp), e_exp);
                                   return verdict_less(lhs, rhs, Tier::Log);
                               }, eps)));
        }

        {
            // sum_{k<=n, alpha_k=1} k M^(k-1)/10^(k!) < (1+|xi|)^(n-1).
            const Rational m_lo = std::max(xi.lo, xi.z);
            const Rational m_hi = std::max(xi.hi, xi.z);
            Rational lhs_lo = 0, lhs_hi = 0;
            for (std::size_t j = 1; j <= gaps.size() && gaps.compare(j, nb) <= 0; ++j) {
                const unsigned long k = gaps.value(j).get_ui();
                const Rational w(BigInt(k), pow10_int(factorial_int(k).get_ui()));
                lhs_lo += w * rpow(m_lo, k - 1);
                lhs_hi += w * rpow(m_hi, k - 1);
            }
            const Rational rhs_lo = rpow(1 + xi.lo, n - 1);
            const Rational rhs_hi = rpow(1 + xi.hi, n - 1);
            Verdict v = exact_less(lhs_hi, rhs_lo, false, eps);
            if (v.status != Status::Verified) {
                const Verdict f = exact_less(lhs_lo, rhs_hi, false, eps);
                v = f.status == Status::Failed ? f : Verdict{Status::Undecided, v.margin, Tier::Exact, {}};
            }
            rows.push_back(row("C1.fn-diff", idx, v,
                               "sum_k alpha_k k M^(k-1)/10^(k!) < (1+|xi|)^(n-1)"));
        }

        const DiffRange diff = truncation_difference(xi, nb, gaps, opts);
        {
            AuditRow r = row("C1.21", idx,
                             below_inverse_power(diff.lo, diff.hi, g.canonical_den, n, 1, opts),
                             "den = 10^" + g.canonical_den.ten_exponent.get_str() + " * q_" +
                                 std::to_string(ci) + "^" + std::to_string(n));
            try {
                r.approximant = describe(g);
            } catch (const BudgetError&) {
            }
            rows.push_back(std::move(r));
        }

        std::optional<LogMag> tail_at;
        const auto tail_for = [&](const Rational& e) { return xi_tail(xi, nb, gaps, e); };
        rows.push_back(guarded("C1.22", idx, Tier::Log, [&] {
            return row("C1.22", idx, refine([&](const Rational& e) {
                           const LogMag tail = tail_for(e);
                           tail_at = tail;
                           const LogMag rhs = negate(int_power(g.canonical_den.log10(e / n), nb));
                           return bounded_less(tail, tail, rhs, Tier::Log);
                       }, eps));
        }));

        if (const std::size_t j1 = gap_index_of(gaps, nb); j1 != 0 && j1 < gaps.size()) {
            // The printed exponent: tail <= 2/10^(s_{j-1}! - s_{j-1} s_j) < 1/den^n.
            rows.push_back(guarded("C1.22-literal", idx, Tier::Log, [&] {
                const BigInt& sj = gaps.value(j1 + 1);
                const Rational lit_exp = Rational(factorial_int(n) - nb * sj);
                std::string note;
                Verdict v = refine([&](const Rational& e) {
                    note.clear();
                    const LogMag tail = tail_for(e);
                    const LogMag lit = shift(log10_of_two(e), -lit_exp);
                    const LogMag rhs = negate(int_power(g.canonical_den.log10(e / n), nb));
                    Verdict a = verdict_less_equal(LogMag::point(tail.hi), lit, Tier::Log);
                    if (a.status != Status::Verified && tail.lo > lit.hi) {
                        a.status = Status::Failed;
                        a.margin = lit.hi - tail.lo;
                    } else if (a.status != Status::Verified) {
                        a.status = Status::Undecided;
                    }
                    const Verdict b = verdict_less(lit, rhs, Tier::Log);
                    return chain({{"tail <= 2/10^(s_{j-1}! - s_{j-1} s_j)", a},
                                  {"2/10^(s_{j-1}! - s_{j-1} s_j) < den^-n", b}},
                                 &note);
                }, eps);
                return row("C1.22-literal", idx, v, note);
            }));

            const BigInt x(static_cast<unsigned long>(ci));
            const BigInt xk = ipow(x, cfg.k);
            rows.push_back(guarded("C1.qparse-fact", idx, Tier::Exact, [&] {
                return row("C1.qparse-fact", idx, q_below_pow10(qc, factorial_if_small(xk), xk, eps),
                           "q_{2n^2} < 10^(((2n^2)^k)!)");
            }));
            rows.push_back(guarded("C1.qparse-pow", idx, Tier::Exact, [&] {
                std::optional<BigInt> e;
                const BigInt kf = factorial_int(cfg.k);
                if (cfg.k <= 20 && kf.get_d() * static_cast<double>(mpz_sizeinbase(x.get_mpz_t(), 2)) <= 1e6) {
                    e = ipow(x, kf.get_ui());
                }
                return row("C1.qparse-pow", idx, q_below_pow10(qc, e, x, eps), "q_{2n^2} < 10^((2n^2)^(k!))");
            }));
        }

        rows.push_back(guarded("C1.combined", idx, Tier::Log, [&] {
            return row("C1.combined", idx, refine([&](const Rational& e) {
                           const LogMag tail = tail_for(e);
                           const LogMag rhs = product(negate(int_power(g.canonical_den.log10(e / n), nb)),
                                                      log10_of_two(e));
                           if (diff.hi == 0) {
                               return bounded_less(tail, tail, rhs, Tier::Log);
                           }
                           const LogRange d = log_range(diff.lo, diff.hi, e);
                           const LogMag upper = sum_upper(tail, d.upper, e);
                           LogMag lower = tail;
                           if (d.lower && d.lower->lo > lower.lo) {
                               lower = *d.lower;
                           }
                           return bounded_less(lower, upper, rhs, Tier::Log);
                       }, eps));
        }));
    }

    {
        Verdict v;
        v.tier = Tier::Exact;
        v.status = Status::Verified;
        std::ostringstream note;
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            for (std::size_t j = i + 1; j < gammas.size(); ++j) {
                if (gammas[i] == gammas[j]) {
                    v.status = Status::Failed;
                    note << "gamma_" << cfg.n_window->first + i << " = gamma_"
                         << cfg.n_window->first + j << "; ";
                }
            }
        }
        // F(xi) - gamma_n = tail + (F_n(xi) - F_n(z)) with z below xi: both
        // parts are nonnegative and the tail is strictly positive.
        note << "finite analogue: pairwise distinct gamma_n on the window and |F(xi) - gamma_n| > 0 "
                "from the enclosure";
        rows.push_back(row("C1.distinct", {ll(cfg.n_window->first), ll(cfg.n_window->last)}, v,
                           note.str()));
    }
    return rows;
}

std::vector<AuditRow> audit_factorial_chain(std::size_t n, unsigned long k, const AuditOptions& opts)
{
    if (n < 1 || k < 1) {
        throw DomainError("C2.fact needs n >= 1 and k >= 1");
    }
    const Rational& eps = opts.eps;
    const Index idx{ll(n), static_cast<long long>(k)};
    const BigInt nb(static_cast<unsigned long>(n));
    const BigInt x = ipow(nb + 1, k);                                  // (n+1)^k
    const BigInt z = ipow(nb, k);                                      // n^k
    const BigInt y = z + BigInt(k) * ipow(nb, k - 1);                  // n^k + k n^(k-1)
    const unsigned long half = k * (k - 1) / 2;
    const std::string range_note = k < 5 ? "outside the stated range k_j >= 5; diagnostic" : "";

    const auto fact = [](const BigInt& m, const Rational& e) {
        FactorialOptions f;
        f.eps = e;
        return logmag_factorial(m, f);
    };
    const auto log_n_pow = [&](unsigned long e_pow, const Rational& e) {
        return nb == 1 ? LogMag::point(0) : int_power(logmag_from_int(nb, e / (e_pow + 1)), BigInt(e_pow));
    };
    const Tier tier = x > kExactFactorialLimit ? Tier::Log : Tier::Exact;

    std::vector<AuditRow> rows;
    rows.push_back(row("C2.fact", idx, refine([&](const Rational& e) {
                           const LogMag rhs = product(product(logmag_from_int(BigInt(3), e), fact(z, e)),
                                                      log_n_pow(2 * k, e));
                           return verdict_less_equal(rhs, fact(x, e), tier);
                       }, eps),
                       range_note));

    {
        Verdict v;
        v.tier = Tier::Exact;
        v.status = y <= x ? Status::Verified : Status::Failed;
        if (x == y) {
            v.margin = Rational(0);
        } else {
            const Verdict m = refine(
                [&](const Rational& e) {
                    return y < x ? verdict_less(fact(y, e), fact(x, e), tier)
                                 : verdict_less(fact(x, e), fact(y, e), tier);
                },
                eps);
            if (m.margin) {
                v.margin = y < x ? *m.margin : -*m.margin;
            }
        }
        rows.push_back(row("C2.fact.step1", idx, v,
                           join_note(range_note, "((n+1)^k)! >= (n^k + k n^(k-1))!")));
    }

    rows.push_back(row("C2.fact.step2", idx, refine([&](const Rational& e) {
                           const LogMag rhs = product(product(fact(z, e), logmag_from_int(BigInt(k), e)),
                                                      log_n_pow(half, e));
                           return verdict_less_equal(rhs, fact(y, e), tier);
                       }, eps),
                       join_note(range_note, "(n^k + k n^(k-1))! >= (n^k)! k n^(k(k-1)/2)")));

    {
        Verdict v;
        const double bits = static_cast<double>(half + 2 * k) *
                            static_cast<double>(mpz_sizeinbase(nb.get_mpz_t(), 2));
        if (bits <= 1e7) {
            v = exact_less(Rational(BigInt(3) * ipow(nb, 2 * k)), Rational(BigInt(k) * ipow(nb, half)), true,
                           eps);
        } else {
            v = refine(
                [&](const Rational& e) {
                    return verdict_less_equal(product(logmag_from_int(BigInt(3), e), log_n_pow(2 * k, e)),
                                              product(logmag_from_int(BigInt(k), e), log_n_pow(half, e)),
                                              Tier::Log);
                },
                eps);
        }
        rows.push_back(row("C2.fact.step3", idx, v,
                           join_note(range_note, "k n^(k(k-1)/2) >= 3 n^(2k)")));
    }
    return rows;
}

std::vector<AuditRow> audit_case2(const ContinuedFraction& cf, const GapSequence& gaps,
                                  std::pair<std::size_t, unsigned long> pair, const AuditOptions& opts)
{
    const auto [nj, kj] = pair;
    if (nj < 1 || kj < 1) {
        throw DomainError("Case-2 pair needs n_j >= 1 and k_j >= 1");
    }
    if (nj + 2 > cf.depth()) {
        throw DomainError("Case-2 pair (" + std::to_string(nj) + "," + std::to_string(kj) +
                          ") needs N >= n_j + 2, N = " + std::to_string(cf.depth()));
    }
    const Rational& eps = opts.eps;
    const Index idx{ll(nj), static_cast<long long>(kj)};
    const BigInt nb(static_cast<unsigned long>(nj));
    std::vector<AuditRow> rows;

    const unsigned long ph = phi(cf.q(nj));
    const unsigned long ph1 = phi(cf.q(nj + 1));
    {
        Verdict v;
        v.tier = Tier::Exact;
        const bool ok = BigInt(ph) <= ipow(nb, kj) && BigInt(ph1) > ipow(nb + 1, kj);
        v.status = ok ? Status::Verified : Status::Failed;
        rows.push_back(row("C2.pair", idx, v,
                           "phi_n = " + std::to_string(ph) + ", phi_{n+1} = " + std::to_string(ph1)));
    }

    TruncationOptions topts;
    topts.budget = opts.budget;
    topts.stop = opts.stop;
    const Case2Approximant c2 = build_case2_approximant(cf, nj, gaps, topts);
    const Approximant& g = c2.approximant;
    const BigInt& s = c2.truncation;
    const unsigned long s_ul = s.get_ui();
    const std::size_t t = c2.t;

    // s_t >= min / max {s_{t-1}^3, phi + 1, 5}.
    for (const bool use_max : {false, true}) {
        const std::string id = use_max ? "C2.sgrowth-max" : "C2.sgrowth-min";
        rows.push_back(guarded(id, idx, Tier::Exact, [&] {
            const std::vector<BigInt> cand{ipow(s, 3), BigInt(ph + 1), BigInt(5)};
            const BigInt bound = use_max ? *std::max_element(cand.begin(), cand.end())
                                         : *std::min_element(cand.begin(), cand.end());
            Verdict v;
            if (gaps.materialized(t)) {
                v = exact_less(Rational(bound), Rational(gaps.value(t)), true, eps);
            } else {
                v.tier = Tier::Log;
                v.status = gaps.compare(t, bound) >= 0 ? Status::Verified : Status::Failed;
                v.margin = refine([&](const Rational& e) {
                               return verdict_less(logmag_from_int(bound, e), gaps.log10_term(t, e), Tier::Log);
                           }, eps).margin;
            }
            return row(id, idx, v, "t = " + std::to_string(t));
        }));
    }

    const XiRange xi = xi_range(cf, nj);
    const auto tail_for = [&](const Rational& e) { return xi_tail(xi, s, gaps, e); };
    const auto den_pow = [&](const Rational& e) {
        return negate(int_power(g.canonical_den.log10(e / s), s));
    };

    rows.push_back(guarded("C2.23", idx, Tier::Log, [&] {
        return row("C2.23", idx, refine([&](const Rational& e) {
                       const LogMag tail = tail_for(e);
                       return bounded_less(tail, tail, den_pow(e), Tier::Log);
                   }, eps));
    }));

    {
        const Rational d_near = abs(xi.near() - xi.z);
        const Rational d_far = abs(xi.far() - xi.z);
        rows.push_back(row("C2.gap", idx,
                           two_sided_exact(d_near, d_far,
                                           Rational(BigInt(1), cf.q(nj) * cf.q(nj + 1)), eps, true),
                           "|xi - p_n/q_n| < 1/(q_n q_{n+1})"));
    }

    {
        const BigInt x = ipow(nb + 1, kj);
        rows.push_back(guarded("C2.qlower", idx, Tier::Exact, [&] {
            return row("C2.qlower", idx, q_above_pow10(cf.q(nj + 1), factorial_if_small(x), x, eps),
                       "q_{n+1} > 10^(((n+1)^k)!)");
        }));
        rows.push_back(guarded("C2.qlower-literal", idx, Tier::Exact, [&] {
            return row("C2.qlower-literal", idx, q_above_pow10(cf.q(nj + 1), x, x, eps),
                       "q_{n+1} > 10^((n+1)^k)");
        }));
    }

    for (auto& r : audit_factorial_chain(nj, kj, opts)) {
        rows.push_back(std::move(r));
    }

    const DiffRange diff = truncation_difference(xi, s, gaps, opts);
    const BigInt zk = ipow(nb, kj);

    rows.push_back(guarded("C2.24", idx, Tier::Log, [&] {
        const auto zf = factorial_if_small(zk);
        if (!zf) {
            throw BudgetError("(n^k)! with n^k = " + zk.get_str() + " above the exact limit");
        }
        const BigInt expo = BigInt(3) * *zf * ipow(nb, 2 * kj) - s * s;
        if (diff.hi == 0) {
            return row("C2.24", idx, Verdict{Status::Verified, std::nullopt, Tier::Log, {}});
        }
        return row("C2.24", idx, refine([&](const Rational& e) {
                       const LogRange d = log_range(diff.lo, diff.hi, e);
                       return bounded_less(d.lower, d.upper, LogMag::point(Rational(-expo)), Tier::Log);
                   }, eps));
    }));

    rows.push_back(guarded("C2.bridge", idx, Tier::Exact, [&] {
        const auto zf = factorial_if_small(zk);
        const auto pf = factorial_if_small(BigInt(ph));
        if (!zf || !pf) {
            throw BudgetError("factorials in the bridge inequality above the exact limit");
        }
        const BigInt lhs = s * factorial_int(s_ul) + *pf * s * s;
        const BigInt rhs = BigInt(3) * *zf * ipow(nb, 2 * kj) - s * s;
        if (rhs <= 0) {
            return row("C2.bridge", idx, Verdict{Status::Failed, std::nullopt, Tier::Exact, {}},
                       "right side nonpositive");
        }
        return row("C2.bridge", idx, exact_less(Rational(lhs), Rational(rhs), true, eps));
    }));

    {
        AuditRow r = row("C2.25", idx, below_inverse_power(diff.lo, diff.hi, g.canonical_den, s_ul, 1, opts),
                         "t = " + std::to_string(t) + ", s_{t-1} = " + s.get_str());
        try {
            r.approximant = describe(g);
        } catch (const BudgetError&) {
        }
        rows.push_back(std::move(r));
    }

    // F(xi) - gamma = tail + (F_s(xi) - F_s(z)); the second part is negative
    // when z lies above xi.
    rows.push_back(guarded("C2.combined", idx, Tier::Log, [&] {
        return row("C2.combined", idx, refine([&](const Rational& e) {
                       const LogMag tail = tail_for(e);
                       const LogMag rhs = product(den_pow(e), log10_of_two(e));
                       if (diff.hi == 0) {
                           return bounded_less(tail, tail, rhs, Tier::Log);
                       }
                       const LogRange d = log_range(diff.lo, diff.hi, e);
                       const LogMag upper = sum_upper(tail, d.upper, e);
                       std::optional<LogMag> lower;
                       if (xi.z_below) {
                           lower = tail;
                           if (d.lower && d.lower->lo > lower->lo) {
                               lower = *d.lower;
                           }
                       }
                       return bounded_less(lower, upper, rhs, Tier::Log);
                   }, eps));
    }));

    rows.push_back(guarded("C2.positive", idx, Tier::Log, [&] {
        Verdict v;
        v.tier = Tier::Log;
        if (xi.z_below || diff.hi == 0) {
            v.status = Status::Verified;
            return row("C2.positive", idx, v, "both parts nonnegative, tail positive");
        }
        const Verdict sep = refine(
            [&](const Rational& e) {
                const LogMag tail = tail_for(e);
                const LogRange d = log_range(diff.lo, diff.hi, e);
                Verdict w;
                w.tier = Tier::Log;
                if ((d.lower && tail.hi < d.lower->lo) || d.upper.hi < tail.lo) {
                    w.status = Status::Verified;
                }
                return w;
            },
            eps);
        v.status = sep.status;
        return row("C2.positive", idx, v, "tail and truncation difference separated");
    }));
    return rows;
}

FullReportConfig default_full_config()
{
    FullReportConfig cfg;
    cfg.ultra_window = IndexWindow{1, 8};
    cfg.qprod_window = IndexWindow{1, 9};
    cfg.gap_window = IndexWindow{1, 6};
    cfg.gap_k = 2;
    cfg.case1 = Case1Config{};
    cfg.classify_ks = {1, 2, 3};
    cfg.classify_window = IndexWindow{1, 9};
    cfg.fact = FactConfig{};
    return cfg;
}

FullReportConfig empty_full_config()
{
    return FullReportConfig{};
}

namespace {

template <class F>
std::vector<AuditRow> with_context(const std::string& ctx, F&& f)
{
    try {
        return f();
    } catch (const BudgetError& e) {
        throw BudgetError(ctx + ": " + e.what());
    } catch (const IndexError& e) {
        throw IndexError(ctx + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(ctx + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(ctx + ": " + e.what());
    }
}

void check_window(const std::optional<IndexWindow>& w, std::size_t limit, const std::string& what)
{
    if (w && (w->first < 1 || w->first > w->last || w->last > limit)) {
        throw DomainError(what + " window " + std::to_string(w->first) + ".." +
                          std::to_string(w->last) + " must lie in 1.." + std::to_string(limit));
    }
}

} // namespace

AuditReport full_report(const FullReportConfig& cfg)
{
    const ContinuedFraction cf(cfg.cf ? *cfg.cf : generate_ultra_strong(cfg.bits, cfg.depth));
    GapOptions gopts;
    gopts.allow_custom_bases = cfg.custom_bases;
    const GapSequence gaps = GapSequence::from_bases(cfg.gap_bases, gopts);
    const std::size_t depth = cf.depth();
    const AuditOptions& opts = cfg.opts;

    check_window(cfg.ultra_window, depth - 1, "ultra-strong");
    check_window(cfg.qprod_window, depth, "quotient-product");
    check_window(cfg.gap_window, gaps.size(), "gap");
    check_window(cfg.classify_window, depth, "classification");

    std::vector<std::future<std::vector<AuditRow>>> jobs;
    const auto launch = [&](std::string ctx, std::function<std::vector<AuditRow>()> f) {
        jobs.push_back(std::async(std::launch::async, [ctx = std::move(ctx), f = std::move(f)] {
            return with_context(ctx, f);
        }));
    };

    if (cfg.ultra_window) {
        launch("ultra-strong", [&] {
            UltraStrongOptions u;
            u.eps = opts.eps;
            std::vector<AuditRow> rows;
            for (auto& r : verify_ultra_strong(cf, cfg.ultra_window->last, u)) {
                if (r.index.front() >= ll(cfg.ultra_window->first)) {
                    rows.push_back(std::move(r));
                }
            }
            return rows;
        });
    }
    if (cfg.qprod_window) {
        launch("quotient-product", [&] {
            std::vector<AuditRow> rows;
            BigInt prod = 1;
            for (std::size_t n = 1; n <= cfg.qprod_window->last; ++n) {
                prod *= cf.a(n) + 1;
                if (n >= cfg.qprod_window->first) {
                    rows.push_back(row("CF.qprod", {ll(n)},
                                       exact_less(Rational(cf.q(n)), Rational(prod), false, opts.eps),
                                       "(a_1+1)...(a_n+1) > q_n"));
                }
            }
            return rows;
        });
    }
    if (cfg.gap_window) {
        launch("gap growth", [&] {
            const GapGrowthResult res =
                check_gap_growth(gaps, cfg.gap_k, cfg.gap_window->first, cfg.gap_window->last, opts.eps);
            std::vector<AuditRow> rows;
            for (const auto& st : res.steps) {
                rows.push_back(row("GAP.step", {ll(st.n), static_cast<long long>(cfg.gap_k)}, st.step,
                                   "s_n > s_{n-1}^k, log margin ~ " +
                                       format_decimal((st.margin.lo + st.margin.hi) / 2, 4)));
            }
            Verdict v;
            v.status = res.status;
            v.tier = Tier::Log;
            const LogMag& last = res.steps.back().margin;
            v.margin = res.status == Status::Verified ? last.lo : last.hi;
            rows.push_back(row("GAP.growth",
                               {ll(cfg.gap_window->first), ll(cfg.gap_window->last),
                                static_cast<long long>(cfg.gap_k)},
                               v,
                               res.margins_increasing ? "log margins strictly increasing"
                                                      : "log margins not strictly increasing"));
            return rows;
        });
    }
    if (cfg.case1) {
        launch("case 1", [&] { return audit_case1(cf, gaps, *cfg.case1, opts); });
    }
    if (cfg.classify_window && !cfg.classify_ks.empty()) {
        launch("case split", [&] {
            const auto phis = phi_values(cf, cfg.classify_window->first, cfg.classify_window->last);
            std::vector<AuditRow> rows;
            for (const unsigned long k : cfg.classify_ks) {
                const CaseClassification c = classify_case(phis, k);
                std::ostringstream note;
                note << "window " << cfg.classify_window->first << ".." << cfg.classify_window->last
                     << ": ";
                if (c.case1_evidence) {
                    note << "phi_n <= n^k throughout";
                } else {
                    note << "transition pairs";
                    for (const auto& [n, kk] : c.pairs) {
                        note << " (" << n << "," << kk << ")";
                    }
                    if (c.pairs.empty()) {
                        note << " none";
                    }
                }
                Verdict v;
                v.status = Status::Verified;
                rows.push_back(row("CASE.split", {static_cast<long long>(k)}, v, note.str()));
                for (const auto& p : c.pairs) {
                    if (p.first + 2 <= depth) {
                        auto more = audit_case2(cf, gaps, p, opts);
                        rows.insert(rows.end(), more.begin(), more.end());
                    }
                }
            }
            return rows;
        });
    }
    if (cfg.fact) {
        launch("factorial chain", [&] {
            std::vector<AuditRow> rows;
            for (std::size_t n = cfg.fact->window.first; n <= cfg.fact->window.last; ++n) {
                auto more = audit_factorial_chain(n, cfg.fact->k, opts);
                rows.insert(rows.end(), more.begin(), more.end());
            }
            return rows;
        });
    }

    AuditReport report;
    for (auto& j : jobs) {
        report.append(j.get());
    }
    report.sort();
    return report;
}

} // namespace liouville
