#ifndef LIOUVILLE_LIOUVILLE_HPP
#define LIOUVILLE_LIOUVILLE_HPP

// Ultra-strong Liouville numbers xi_A = [0; 1, 1, 1, a_4, a_5, ...] with
// a_j in {v_{j-1}, v_{j-1} + 1}, v_{j-1} = (prod_{k<j} (a_k + 1))^(j-3),
// plus witness checks and the phi_n statistic that splits the audit into
// its two cases.

#include "liouville/bigmath.hpp"
#include "liouville/continued_fraction.hpp"
#include "liouville/report.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liouville {

// One bit per index j >= 4: a_j = v_{j-1} + bit.
struct BranchChoices {
    std::vector<bool> bits;

    // Throws DomainError on characters other than '0' and '1'.
    static BranchChoices parse(std::string_view text);
    static BranchChoices zeros(std::size_t count);
    std::string to_string() const;
};

// Needs depth >= 3 and at least depth - 3 bits; extra bits are ignored.
PartialQuotients generate_ultra_strong(const BranchChoices& choices, std::size_t depth);

struct UltraStrongOptions {
    Rational eps = default_epsilon();
    // Exact comparisons are used while q_n^(n-1) has at most this many digits.
    std::size_t exact_digit_limit = 1000000;
    bool force_log = false;
};

// Rows "US.definition" (q_{n+1} >= q_n^(n-1), 1 <= n <= up_to) and
// "US.chain" (a_{n+1} > q_n^(n-2), 3 <= n <= up_to). up_to <= N-1.
std::vector<AuditRow> verify_ultra_strong(const ContinuedFraction& cf, std::size_t up_to,
                                          const UltraStrongOptions& opts = {});

struct LiouvilleWitness {
    BigInt p;
    BigInt q;
    unsigned long exponent = 1;
};

// xi ranges over the open interval; Verified iff p/q is not inside it and
// every point of it is within 1/q^n of p/q. Undecided when p/q is inside.
Status verify_witness(const RationalInterval& xi, const LiouvilleWitness& w);

// Smallest k >= 1 with q <= 10^(k!).
unsigned long phi(const BigInt& q);

struct PhiValue {
    std::size_t n = 0;
    unsigned long phi = 1;
};

std::vector<PhiValue> phi_values(const ContinuedFraction& cf, std::size_t first, std::size_t last);

struct CaseClassification {
    // phi_n <= n^k at every index of the window.
    bool case1_evidence = false;
    // (n_j, k_j) with phi_{n_j} <= n_j^k and phi_{n_j+1} > (n_j+1)^k.
    std::vector<std::pair<std::size_t, unsigned long>> pairs;
};

// Window-scoped; phis must cover consecutive indices.
CaseClassification classify_case(std::span<const PhiValue> phis, unsigned long k);

} // namespace liouville

#endif
