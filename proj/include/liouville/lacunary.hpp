#ifndef LIOUVILLE_LACUNARY_HPP
#define LIOUVILLE_LACUNARY_HPP

// The lacunary series F(z) = sum_k alpha_k z^k / 10^(k!), alpha_k = 1 exactly
// on a gap sequence s_1 < s_2 < ..., its exact truncations F_n at rationals,
// rigorous tail bounds, and the two families of rational approximants used
// by the audit.

#include "liouville/bigmath.hpp"
#include "liouville/continued_fraction.hpp"
#include "liouville/verdict.hpp"

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

struct GapOptions {
    // Bases other than 2 and 3 are rejected unless this is set.
    bool allow_custom_bases = false;
    // s_n = base^(n!) is materialized for n up to this index, symbolic beyond.
    std::size_t materialize_up_to = 8;
};

// s_n = base_n^(n!) from bases, or an arbitrary strictly increasing custom
// list. Indices are 1-based.
class GapSequence {
public:
    static GapSequence from_bases(const std::vector<unsigned long>& bases,
                                  const GapOptions& opts = {});
    // Arbitrary strictly increasing sequence with s_1 >= 2 (test oracles).
    static GapSequence custom(std::vector<BigInt> values);

    std::size_t size() const { return terms_.size(); }
    bool is_custom() const { return custom_; }
    bool materialized(std::size_t j) const;
    // Throws BudgetError when s_j is symbolic.
    const BigInt& value(std::size_t j) const;
    // Base and exponent n! of a symbolic or materialized term (from_bases only).
    unsigned long base(std::size_t j) const;
    const BigInt& exponent(std::size_t j) const;

    LogMag log10_term(std::size_t j, const Rational& eps = default_epsilon()) const;

    // Sign of s_j - k. Throws DomainError if it cannot be decided.
    int compare(std::size_t j, const BigInt& k) const;

    // Smallest j with s_j > k, if the known terms reach past k.
    std::optional<std::size_t> first_exceeding(const BigInt& k) const;

    std::string describe() const;

private:
    struct Term {
        unsigned long base = 0;
        BigInt exponent;
        std::optional<BigInt> value;
    };
    std::vector<Term> terms_;
    bool custom_ = false;

    const Term& term(std::size_t j) const;
};

// Parses a string of base digits such as "2223".
std::vector<unsigned long> parse_bases(std::string_view text);

// s_1..s_M from the first M bases.
GapSequence gap_terms(const std::vector<unsigned long>& bases, std::size_t count,
                      const GapOptions& opts = {});

struct GapStep {
    std::size_t n = 0;
    // log10(s_n) - k log10(s_{n-1}).
    LogMag margin;
    Verdict step; // s_n > s_{n-1}^k
};

struct GapGrowthResult {
    Status status = Status::Undecided;
    bool margins_increasing = false;
    std::vector<GapStep> steps;
};

// Finite proxy for s_n / s_{n-1}^k -> infinity over terms first..last
// (1-based, at least 3 terms): Verified iff the log margins strictly
// increase and the last one is positive. Per-step inequalities are
// reported alongside.
GapGrowthResult check_gap_growth(const GapSequence& gaps, unsigned long k, std::size_t first,
                                 std::size_t last, const Rational& eps = default_epsilon());

// 1 iff k is a gap term. Throws DomainError when the known terms end below k.
int alpha(const BigInt& k, const GapSequence& gaps);

// 10^ten_exponent * q^q_exponent, kept factored.
struct CanonicalDenominator {
    BigInt ten_exponent;
    BigInt q;
    BigInt q_exponent;

    // Materializes the product; BudgetError above digit_limit digits.
    BigInt value(std::size_t digit_limit = 10000000) const;
    LogMag log10(const Rational& eps = default_epsilon()) const;
};

enum class ApproximantSource { Direct, Case1, Case2 };

struct Approximant {
    Rational value;
    CanonicalDenominator canonical_den;
    BigInt truncation_index;
    ApproximantSource source = ApproximantSource::Direct;
    std::size_t source_index = 0;

    bool reduced_divides_canonical() const;
    // value * canonical denominator.
    BigInt canonical_numerator() const;
};

struct TruncationOptions {
    // Largest exponent k! allowed for a materialized 10^(k!).
    BigInt budget = 1000000;
    std::stop_token stop;
};

// Exact F_n(z) = sum_{k <= n, alpha_k = 1} z^k / 10^(k!). Canonical
// denominator 10^(n!) q^n with q the reduced denominator of z.
Approximant eval_truncation_exact(const Rational& z, const BigInt& n, const GapSequence& gaps,
                                  const TruncationOptions& opts = {});

// sum_{k=1}^{count} k / 10^(k!).
Rational factorial_weight_sum(unsigned long count);

struct TailOptions {
    Rational eps = default_epsilon();
    // Largest gap term whose factorial is materialized for the exponent.
    BigInt factorial_limit = 10000;
};

// Upper bound on log10 |F(z) - F_m(z)| for |z| <= 10^z_abs_log_hi: the
// first omitted term s_J (smallest gap > m) times the geometric factor
// 1/(1 - 10^r), where r = z_abs_log_hi - s_J * s_J! bounds the ratio of any
// two consecutive nonzero terms from s_J on. The lower end of the returned
// interval is the log of the first-term bound.
LogMag tail_bound(const Rational& z_abs_log_hi, const BigInt& m, const GapSequence& gaps,
                  const TailOptions& opts = {});

// Two-sided enclosure of log10(F(z) - F_m(z)) for real z in
// [10^z_log_lo, 10^z_log_hi], z > 0.
LogMag tail_enclosure(const Rational& z_log_lo, const Rational& z_log_hi, const BigInt& m,
                      const GapSequence& gaps, const TailOptions& opts = {});

// Bound for |xi^k - z^k| <= |xi - z| * k * M^(k-1), M >= max(|xi|, |z|).
// max_abs_log_hi bounds log10 |xi|; z folds into the maximum; delta_log_hi
// bounds log10 |xi - z|. The result encloses log10 of the bound itself.
LogMag power_difference_bound(const Rational& max_abs_log_hi, const Rational& z,
                              const Rational& delta_log_hi, const BigInt& k,
                              const Rational& eps = default_epsilon());

struct Case1Approximant {
    Approximant approximant;
    std::size_t convergent_index = 0; // 2n^2
};

// gamma_n = F_n(p_{2n^2} / q_{2n^2}); needs N >= 2n^2.
Case1Approximant build_case1_approximant(const ContinuedFraction& cf, std::size_t n,
                                         const GapSequence& gaps,
                                         const TruncationOptions& opts = {});

struct Case2Approximant {
    Approximant approximant;
    unsigned long phi = 0;
    std::size_t t = 0;     // smallest t with s_t > phi_{n_j}
    BigInt truncation;     // s_{t-1}
};

// Smallest t with s_t > phi; DomainError when no known term exceeds phi.
std::size_t case2_index(const GapSequence& gaps, unsigned long phi);

// gamma_j = F_{s_{t-1}}(p_{n_j} / q_{n_j}). t = 1 is a DomainError.
Case2Approximant build_case2_approximant(const ContinuedFraction& cf, std::size_t n_j,
                                         const GapSequence& gaps,
                                         const TruncationOptions& opts = {});

} // namespace liouville

#endif
