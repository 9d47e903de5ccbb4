#include "liouville/verdict.hpp"

namespace liouville {

namespace {

Rational midpoint(const LogMag& a)
{
    return (a.lo + a.hi) / 2;
}

} // namespace

std::string_view to_string(Status s)
{
    switch (s) {
    case Status::Verified:
        return "Verified";
    case Status::Failed:
        return "Failed";
    case Status::Undecided:
        return "Undecided";
    }
    return "Undecided";
}

std::string_view to_string(Tier t)
{
    return t == Tier::Exact ? "Exact" : "Log";
}

Status worst(Status a, Status b)
{
    if (a == Status::Failed || b == Status::Failed) {
        return Status::Failed;
    }
    if (a == Status::Undecided || b == Status::Undecided) {
        return Status::Undecided;
    }
    return Status::Verified;
}

Verdict verdict_less(const LogMag& lhs, const LogMag& rhs, Tier tier)
{
    Verdict v;
    v.tier = tier;
    if (lhs.hi < rhs.lo) {
        v.status = Status::Verified;
        v.margin = rhs.lo - lhs.hi;
    } else if (rhs.hi <= lhs.lo && (rhs.hi < lhs.lo || (lhs.width() == 0 && rhs.width() == 0))) {
        v.status = Status::Failed;
        v.margin = rhs.hi - lhs.lo;
    } else {
        v.status = Status::Undecided;
        v.margin = midpoint(rhs) - midpoint(lhs);
    }
    return v;
}

Verdict verdict_less_equal(const LogMag& lhs, const LogMag& rhs, Tier tier)
{
    Verdict v;
    v.tier = tier;
    if (lhs.hi <= rhs.lo) {
        v.status = Status::Verified;
        v.margin = rhs.lo - lhs.hi;
    } else if (rhs.hi < lhs.lo) {
        v.status = Status::Failed;
        v.margin = rhs.hi - lhs.lo;
    } else {
        v.status = Status::Undecided;
        v.margin = midpoint(rhs) - midpoint(lhs);
    }
    return v;
}

Verdict bounded_less(const std::optional<LogMag>& lower, const LogMag& upper, const LogMag& rhs,
                     Tier tier)
{
    Verdict v;
    v.tier = tier;
    if (upper.hi < rhs.lo) {
        v.status = Status::Verified;
        v.margin = rhs.lo - upper.hi;
    } else if (lower && lower->lo >= rhs.hi) {
        v.status = Status::Failed;
        v.margin = rhs.hi - lower->lo;
    } else {
        v.status = Status::Undecided;
        v.margin = midpoint(rhs) - midpoint(upper);
    }
    return v;
}

Verdict exact_less(const Rational& lhs, const Rational& rhs, bool allow_equal, const Rational& eps)
{
    if (lhs < 0 || rhs < 0) {
        throw DomainError("exact_less expects nonnegative operands");
    }
    Verdict v;
    v.tier = Tier::Exact;
    const bool holds = lhs < rhs || (allow_equal && lhs == rhs);
    v.status = holds ? Status::Verified : Status::Failed;
    if (lhs == 0 || rhs == 0) {
        return v;
    }
    if (lhs == rhs) {
        v.margin = Rational(0);
        return v;
    }
    Rational e = eps;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const LogMag l = logmag_from_rational(lhs, e);
        const LogMag r = logmag_from_rational(rhs, e);
        const Rational m = holds ? r.lo - l.hi : r.hi - l.lo;
        if ((holds && m > 0) || (!holds && m < 0) || attempt == 3) {
            v.margin = m;
            break;
        }
        e /= pow10_int(30);
    }
    return v;
}

} // namespace liouville
