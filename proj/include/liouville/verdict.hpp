#ifndef LIOUVILLE_VERDICT_HPP
#define LIOUVILLE_VERDICT_HPP

#include "liouville/bigmath.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace liouville {

enum class Status { Verified, Failed, Undecided };
enum class Tier { Exact, Log };

std::string_view to_string(Status s);
std::string_view to_string(Tier t);

// Outcome of one inequality check. The margin is log10(rhs) - log10(lhs),
// reported conservatively: a certified lower bound on the slack when
// Verified, a certified upper bound (negative) when Failed, the midpoint
// estimate when Undecided. Absent when a side is zero or the check is
// structural.
struct Verdict {
    Status status = Status::Undecided;
    std::optional<Rational> margin;
    Tier tier = Tier::Exact;
    std::string note;
};

// lhs < rhs, where lhs and rhs enclose the log10 of the two sides.
Verdict verdict_less(const LogMag& lhs, const LogMag& rhs, Tier tier);

// lhs <= rhs for enclosures. Equal point enclosures verify with margin 0.
Verdict verdict_less_equal(const LogMag& lhs, const LogMag& rhs, Tier tier);

// Exact comparison of nonnegative rationals, lhs < rhs (or <= when
// allow_equal). The margin is computed through LogMag.
Verdict exact_less(const Rational& lhs, const Rational& rhs, bool allow_equal = false,
                   const Rational& eps = default_epsilon());

// Two-sided check of a quantity q against a bound: q is known to lie in
// [lower, upper] (log10 enclosures of those bounds), and the claim is q < rhs.
// Verified if upper < rhs, Failed if lower >= rhs, Undecided otherwise.
// A missing lower bound means the quantity may be arbitrarily small.
Verdict bounded_less(const std::optional<LogMag>& lower, const LogMag& upper, const LogMag& rhs,
                     Tier tier);

Status worst(Status a, Status b);

// Re-runs an enclosure-based check at tighter precision while it is
// Undecided. f takes the working epsilon and returns a Verdict.
template <class F>
Verdict refine(F&& f, const Rational& eps, int attempts = 4)
{
    Rational e = eps;
    Verdict v = f(e);
    for (int i = 1; i < attempts && v.status == Status::Undecided; ++i) {
        e /= pow10_int(20);
        v = f(e);
    }
    return v;
}

} // namespace liouville

#endif
