#include "liouville/audit.hpp"
#include "liouville/report.hpp"

#include <gtest/gtest.h>

using namespace liouville;

namespace {

AuditRow make_row(std::string id, std::vector<long long> index, Status s)
{
    AuditRow r;
    r.check_id = std::move(id);
    r.index = std::move(index);
    r.status = s;
    return r;
}

} // namespace

TEST(ExitCodes, PartitionOutcomes)
{
    AuditReport r;
    EXPECT_EQ(exit_code(r), 0);
    r.rows.push_back(make_row("A", {1}, Status::Verified));
    EXPECT_EQ(exit_code(r), 0);
    r.rows.push_back(make_row("B", {1}, Status::Undecided));
    EXPECT_EQ(exit_code(r), 3);
    r.rows.push_back(make_row("C", {1}, Status::Failed));
    EXPECT_EQ(exit_code(r), 1);
}

TEST(Json, RoundTrip)
{
    AuditReport r;
    AuditRow a = make_row("X.one", {2, 5}, Status::Failed);
    a.margin = Rational(-7, 4);
    a.tier = Tier::Log;
    a.note = "quote \" and newline\n";
    a.approximant = RowApproximant{"123", "24", "89", "4"};
    r.rows.push_back(a);
    r.rows.push_back(make_row("X.two", {}, Status::Undecided));

    const std::string text = to_json(r);
    const AuditReport back = report_from_json(text);
    ASSERT_EQ(back.rows.size(), 2u);
    EXPECT_EQ(back.rows[0].check_id, "X.one");
    EXPECT_EQ(back.rows[0].index, (std::vector<long long>{2, 5}));
    EXPECT_EQ(back.rows[0].status, Status::Failed);
    EXPECT_EQ(back.rows[0].tier, Tier::Log);
    ASSERT_TRUE(back.rows[0].margin.has_value());
    EXPECT_EQ(*back.rows[0].margin, Rational(-7, 4));
    EXPECT_EQ(back.rows[0].note, a.note);
    EXPECT_EQ(back.rows[0].approximant, a.approximant);
    EXPECT_FALSE(back.rows[1].margin.has_value());
    EXPECT_FALSE(back.rows[1].approximant.has_value());
    EXPECT_EQ(to_json(back), text);
}

TEST(Json, DefaultReportRoundTrips)
{
    const std::string text = to_json(full_report(default_full_config()));
    EXPECT_EQ(to_json(report_from_json(text)), text);
}

TEST(Json, RejectsMalformed)
{
    EXPECT_ANY_THROW(report_from_json("{"));
    EXPECT_ANY_THROW(report_from_json(R"([{"check_id": "A", "status": "Maybe"}])"));
}

TEST(Table, Summary)
{
    AuditReport r;
    r.rows.push_back(make_row("A", {1}, Status::Verified));
    r.rows.push_back(make_row("B", {1, 2}, Status::Failed));
    const std::string t = to_table(r);
    EXPECT_NE(t.find("2 rows: 1 Verified, 1 Failed, 0 Undecided"), std::string::npos);
    EXPECT_NE(t.find("(1,2)"), std::string::npos);
}

TEST(Report, SortAndFind)
{
    AuditReport r;
    r.rows.push_back(make_row("B", {2}, Status::Verified));
    r.rows.push_back(make_row("A", {10}, Status::Verified));
    r.rows.push_back(make_row("A", {9}, Status::Failed));
    r.sort();
    EXPECT_EQ(r.rows[0].index, std::vector<long long>{9});
    EXPECT_EQ(r.rows[2].check_id, "B");
    ASSERT_NE(r.find("A", {9}), nullptr);
    EXPECT_EQ(r.find("A", {9})->status, Status::Failed);
    EXPECT_EQ(r.find("C", {}), nullptr);
    EXPECT_EQ(r.rows_for("A").size(), 2u);
}
