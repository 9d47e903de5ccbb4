#include "liouville/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <utility>

namespace liouville {

namespace {

std::string index_label(const std::vector<long long>& index)
{
    if (index.empty()) {
        return "-";
    }
    if (index.size() == 1) {
        return std::to_string(index.front());
    }
    std::string out = "(";
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(index[i]);
    }
    return out + ")";
}

Status parse_status(const std::string& s)
{
    if (s == "Verified") {
        return Status::Verified;
    }
    if (s == "Failed") {
        return Status::Failed;
    }
    if (s == "Undecided") {
        return Status::Undecided;
    }
    throw DomainError("unknown status '" + s + "'");
}

Tier parse_tier(const std::string& s)
{
    if (s == "Exact") {
        return Tier::Exact;
    }
    if (s == "Log") {
        return Tier::Log;
    }
    throw DomainError("unknown tier '" + s + "'");
}

} // namespace

AuditRow AuditRow::from(std::string check_id, std::vector<long long> index, const Verdict& v)
{
    AuditRow row;
    row.check_id = std::move(check_id);
    row.index = std::move(index);
    row.status = v.status;
    row.margin = v.margin;
    row.tier = v.tier;
    row.note = v.note;
    return row;
}

void AuditReport::append(std::vector<AuditRow> more)
{
    rows.insert(rows.end(), std::make_move_iterator(more.begin()),
                std::make_move_iterator(more.end()));
}

void AuditReport::sort()
{
    std::stable_sort(rows.begin(), rows.end(), [](const AuditRow& a, const AuditRow& b) {
        if (a.check_id != b.check_id) {
            return a.check_id < b.check_id;
        }
        return a.index < b.index;
    });
}

std::size_t AuditReport::count(Status s) const
{
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [s](const AuditRow& r) { return r.status == s; }));
}

const AuditRow* AuditReport::find(const std::string& check_id,
                                  const std::vector<long long>& index) const
{
    for (const auto& r : rows) {
        if (r.check_id == check_id && r.index == index) {
            return &r;
        }
    }
    return nullptr;
}

std::vector<const AuditRow*> AuditReport::rows_for(const std::string& check_id) const
{
    std::vector<const AuditRow*> out;
    for (const auto& r : rows) {
        if (r.check_id == check_id) {
            out.push_back(&r);
        }
    }
    return out;
}

std::string to_json(const AuditReport& report)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["check_id"] = r.check_id;
        row["index"] = r.index;
        row["status"] = std::string(to_string(r.status));
        row["tier"] = std::string(to_string(r.tier));
        if (r.margin) {
            row["margin"] = format_decimal(*r.margin, MARGIN_DIGITS);
        } else {
            row["margin"] = nullptr;
        }
        row["note"] = r.note;
        if (r.approximant) {
            row["approximant"] = {{"numerator", r.approximant->numerator},
                                  {"ten_exponent", r.approximant->ten_exponent},
                                  {"q", r.approximant->q},
                                  {"q_exponent", r.approximant->q_exponent}};
        } else {
            row["approximant"] = nullptr;
        }
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

AuditReport report_from_json(const std::string& text)
{
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) {
        throw DomainError("report JSON must be an array of rows");
    }
    AuditReport report;
    for (const auto& row : arr) {
        AuditRow r;
        r.check_id = row.at("check_id").get<std::string>();
        r.index = row.at("index").get<std::vector<long long>>();
        r.status = parse_status(row.at("status").get<std::string>());
        r.tier = parse_tier(row.at("tier").get<std::string>());
        if (!row.at("margin").is_null()) {
            r.margin = parse_rational(row.at("margin").get<std::string>());
        }
        r.note = row.at("note").get<std::string>();
        if (row.contains("approximant") && !row.at("approximant").is_null()) {
            const auto& a = row.at("approximant");
            r.approximant = RowApproximant{a.at("numerator").get<std::string>(),
                                           a.at("ten_exponent").get<std::string>(),
                                           a.at("q").get<std::string>(),
                                           a.at("q_exponent").get<std::string>()};
        }
        report.rows.push_back(std::move(r));
    }
    return report;
}

std::string to_table(const AuditReport& report)
{
    struct Cells {
        std::string id, index, status, tier, margin, note;
    };
    std::vector<Cells> cells;
    cells.push_back({"check", "index", "status", "tier", "margin_log10", "note"});
    for (const auto& r : report.rows) {
        cells.push_back({r.check_id, index_label(r.index), std::string(to_string(r.status)),
                         std::string(to_string(r.tier)),
                         r.margin ? format_decimal(*r.margin, MARGIN_DIGITS) : "-", r.note});
    }
    std::size_t w[5] = {0, 0, 0, 0, 0};
    for (const auto& c : cells) {
        w[0] = std::max(w[0], c.id.size());
        w[1] = std::max(w[1], c.index.size());
        w[2] = std::max(w[2], c.status.size());
        w[3] = std::max(w[3], c.tier.size());
        w[4] = std::max(w[4], std::min<std::size_t>(c.margin.size(), 40));
    }
    std::ostringstream out;
    for (const auto& c : cells) {
        out << std::left << std::setw(static_cast<int>(w[0])) << c.id << "  "
            << std::setw(static_cast<int>(w[1])) << c.index << "  "
            << std::setw(static_cast<int>(w[2])) << c.status << "  "
            << std::setw(static_cast<int>(w[3])) << c.tier << "  " << std::right
            << std::setw(static_cast<int>(w[4])) << c.margin;
        if (!c.note.empty()) {
            out << "  " << c.note;
        }
        out << '\n';
    }
    out << report.rows.size() << " rows: " << report.count(Status::Verified) << " Verified, "
        << report.count(Status::Failed) << " Failed, " << report.count(Status::Undecided)
        << " Undecided\n";
    return out.str();
}

int exit_code(const AuditReport& report)
{
    if (report.count(Status::Failed) > 0) {
        return 1;
    }
    if (report.count(Status::Undecided) > 0) {
        return 3;
    }
    return 0;
}

} // namespace liouville
