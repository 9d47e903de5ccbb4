#ifndef LIOUVILLE_AUDIT_HPP
#define LIOUVILLE_AUDIT_HPP

// Concrete-index audit of the transcendence argument: every named inequality
// of both cases is decided at chosen indices and reported as a row with a
// log10 margin.

#include "liouville/bigmath.hpp"
#include "liouville/continued_fraction.hpp"
#include "liouville/lacunary.hpp"
#include "liouville/liouville.hpp"
#include "liouville/report.hpp"

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liouville {

// Inclusive 1-based index range, first <= last.
struct IndexWindow {
    std::size_t first = 1;
    std::size_t last = 1;

    // "a..b" or a single index. Throws DomainError when first > last or 0.
    static IndexWindow parse(std::string_view text);
    std::size_t size() const { return last - first + 1; }
};

struct AuditOptions {
    Rational eps = default_epsilon();
    // Largest k! materialized as 10^(k!).
    BigInt budget = 1000000;
    std::stop_token stop;
};

struct Case1Config {
    unsigned long k = 1;
    // Approximant indices n (gamma_n uses convergent 2n^2).
    std::optional<IndexWindow> n_window = IndexWindow{1, 2};
    // Indices m for q_m > e^((m-3)!).
    std::optional<IndexWindow> growth_window = IndexWindow{3, 6};
};

std::vector<AuditRow> audit_case1(const ContinuedFraction& cf, const GapSequence& gaps,
                                  const Case1Config& cfg, const AuditOptions& opts = {});

// Rows for one transition pair (n_j, k_j). The pair must satisfy
// phi_{n_j} <= n_j^k_j < ... < phi_{n_j+1}; it is re-checked as C2.pair.
std::vector<AuditRow> audit_case2(const ContinuedFraction& cf, const GapSequence& gaps,
                                  std::pair<std::size_t, unsigned long> pair,
                                  const AuditOptions& opts = {});

// ((n+1)^k)! >= (n^k + k n^(k-1))! >= (n^k)! k n^(k(k-1)/2) >= 3 (n^k)! n^(2k):
// one "C2.fact" row for the whole chain plus one row per step.
std::vector<AuditRow> audit_factorial_chain(std::size_t n, unsigned long k,
                                            const AuditOptions& opts = {});

struct FactConfig {
    unsigned long k = 5;
    IndexWindow window{1, 6};
};

struct FullReportConfig {
    // Continued fraction: explicit quotients, else generated from bits.
    std::optional<PartialQuotients> cf;
    BranchChoices bits = BranchChoices::zeros(6);
    std::size_t depth = 9;

    std::vector<unsigned long> gap_bases{2, 2, 2, 2, 2, 2};
    bool custom_bases = false;

    // Unset windows produce no rows.
    std::optional<IndexWindow> ultra_window;  // n for US.* rows, up to N-1
    std::optional<IndexWindow> qprod_window;  // CF.qprod
    std::optional<IndexWindow> gap_window;    // GAP.* rows
    unsigned long gap_k = 2;
    std::optional<Case1Config> case1;
    // Case split over classify_window for each k; every pair found is
    // audited as Case 2.
    std::vector<unsigned long> classify_ks;
    std::optional<IndexWindow> classify_window;
    std::optional<FactConfig> fact;

    AuditOptions opts;
};

// The default run: xi_A with bits 000000 at depth 9, gaps 222222.
FullReportConfig default_full_config();

// A configuration with every window unset (empty report).
FullReportConfig empty_full_config();

// Runs the sub-audits concurrently and merges rows in (check id, index) order.
AuditReport full_report(const FullReportConfig& cfg);

// Largest n with 2n^2 + 1 <= N.
std::size_t max_case1_index(std::size_t depth);

} // namespace liouville

#endif
