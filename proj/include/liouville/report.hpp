#ifndef LIOUVILLE_REPORT_HPP
#define LIOUVILLE_REPORT_HPP

#include "liouville/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liouville {

// Approximant attached to a row: numerator over 10^ten_exponent * q^q_exponent.
struct RowApproximant {
    std::string numerator;
    std::string ten_exponent;
    std::string q;
    std::string q_exponent;

    bool operator==(const RowApproximant&) const = default;
};

struct AuditRow {
    // Index n, a pair (n_j, k_j), or empty for index-free checks.
    std::vector<long long> index;
    std::string check_id;
    Status status = Status::Undecided;
    std::optional<Rational> margin;
    Tier tier = Tier::Exact;
    std::string note;
    std::optional<RowApproximant> approximant;

    static AuditRow from(std::string check_id, std::vector<long long> index, const Verdict& v);
};

struct AuditReport {
    std::vector<AuditRow> rows;

    void append(std::vector<AuditRow> more);
    // By check id, then index.
    void sort();
    std::size_t count(Status s) const;
    const AuditRow* find(const std::string& check_id, const std::vector<long long>& index) const;
    std::vector<const AuditRow*> rows_for(const std::string& check_id) const;
};

// Digits after the decimal point in rendered margins.
inline constexpr unsigned MARGIN_DIGITS = 6;

std::string to_json(const AuditReport& report);
std::string to_table(const AuditReport& report);
AuditReport report_from_json(const std::string& text);

// 0 all Verified, 1 any Failed, 3 any Undecided and none Failed.
int exit_code(const AuditReport& report);

} // namespace liouville

#endif
