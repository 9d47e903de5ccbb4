#include "liouville/liouville.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace liouville;

namespace {

std::string bits_of(unsigned v, unsigned width)
{
    std::string s;
    for (unsigned i = 0; i < width; ++i) {
        s += (v >> (width - 1 - i)) & 1U ? '1' : '0';
    }
    return s;
}

// a_j by the defining product formula, computed independently.
std::vector<BigInt> reference_quotients(const std::string& bits, std::size_t depth)
{
    std::vector<BigInt> a{1, 1, 1};
    for (std::size_t j = 4; j <= depth; ++j) {
        BigInt prod = 1;
        for (const auto& x : a) {
            prod *= x + 1;
        }
        BigInt v;
        mpz_pow_ui(v.get_mpz_t(), prod.get_mpz_t(), j - 3);
        a.push_back(v + (bits[j - 4] == '1' ? 1 : 0));
    }
    a.resize(depth);
    return a;
}

} // namespace

TEST(Generate, Examples)
{
    EXPECT_EQ(generate_ultra_strong(BranchChoices::parse("0"), 4).to_string(), "1,1,1,8");
    EXPECT_EQ(generate_ultra_strong(BranchChoices::parse("1"), 4).a(4), 9);
    EXPECT_EQ(generate_ultra_strong(BranchChoices::parse("00"), 5).a(5), 5184);
    EXPECT_EQ(generate_ultra_strong(BranchChoices::parse(""), 3).to_string(), "1,1,1");
    EXPECT_THROW(generate_ultra_strong(BranchChoices::parse("0"), 5), DomainError);
    EXPECT_THROW(BranchChoices::parse("012"), DomainError);
    EXPECT_THROW(generate_ultra_strong(BranchChoices{}, 2), DomainError);
}

TEST(Generate, MatchesProductFormula)
{
    for (unsigned v = 0; v < 32; ++v) {
        const std::string b = bits_of(v, 5);
        const PartialQuotients pq = generate_ultra_strong(BranchChoices::parse(b), 8);
        EXPECT_EQ(pq.terms(), reference_quotients(b, 8)) << b;
    }
}

TEST(Generate, InjectiveDisjointEnclosures)
{
    std::vector<RationalInterval> encl;
    for (unsigned v = 0; v < 64; ++v) {
        // Depth 10 consumes seven bits; the last one is held at 0.
        const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse(bits_of(v, 6) + "0"), 10));
        encl.push_back(tightest_enclosure(cf));
    }
    for (std::size_t i = 0; i < encl.size(); ++i) {
        for (std::size_t j = i + 1; j < encl.size(); ++j) {
            const bool disjoint = encl[i].hi <= encl[j].lo || encl[j].hi <= encl[i].lo;
            ASSERT_TRUE(disjoint) << i << " vs " << j;
        }
    }
}

TEST(UltraStrong, Examples)
{
    const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse("00"), 5));
    const auto rows = verify_ultra_strong(cf, 4);
    auto find = [&](const std::string& id, long long n) -> const AuditRow* {
        for (const auto& r : rows) {
            if (r.check_id == id && r.index == std::vector<long long>{n}) {
                return &r;
            }
        }
        return nullptr;
    };
    ASSERT_NE(find("US.definition", 3), nullptr);
    EXPECT_EQ(find("US.definition", 3)->status, Status::Verified);  // 26 >= 3^2
    EXPECT_EQ(find("US.definition", 1)->status, Status::Verified);  // 2 >= 1
    ASSERT_NE(find("US.chain", 4), nullptr);
    EXPECT_EQ(find("US.chain", 4)->status, Status::Verified);       // 5184 > 26^2
    EXPECT_EQ(find("US.chain", 1), nullptr);
    EXPECT_THROW(verify_ultra_strong(cf, 5), IndexError);
}

TEST(UltraStrong, AllBranchesDepthEight)
{
    for (unsigned v = 0; v < 32; ++v) {
        const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse(bits_of(v, 5)), 8));
        for (const auto& r : verify_ultra_strong(cf, 7)) {
            ASSERT_EQ(r.status, Status::Verified) << r.check_id << " " << r.index[0];
            ASSERT_EQ(r.tier, Tier::Exact);
        }
        // Oracle: q_{n+1} >= q_n^(n-1) by plain integer powering.
        for (std::size_t n = 1; n <= 7; ++n) {
            BigInt pw;
            mpz_pow_ui(pw.get_mpz_t(), cf.q(n).get_mpz_t(), n - 1);
            ASSERT_GE(cf.q(n + 1), pw);
        }
    }
}

TEST(UltraStrong, LogTierNeverContradictsExact)
{
    for (unsigned v = 0; v < 8; ++v) {
        const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse(bits_of(v, 6)), 9));
        UltraStrongOptions log_opts;
        log_opts.force_log = true;
        const auto exact = verify_ultra_strong(cf, 8);
        const auto logged = verify_ultra_strong(cf, 8, log_opts);
        ASSERT_EQ(exact.size(), logged.size());
        for (std::size_t i = 0; i < exact.size(); ++i) {
            EXPECT_EQ(logged[i].tier, Tier::Log);
            if (logged[i].status != Status::Undecided) {
                EXPECT_EQ(logged[i].status, exact[i].status);
            }
        }
    }
}

TEST(Witness, Examples)
{
    const RationalInterval e{Rational(17, 26), Rational(2, 3)};
    EXPECT_EQ(verify_witness(e, {1, 2, 2}), Status::Verified);
    EXPECT_EQ(verify_witness({Rational(1, 3), Rational(1, 2)}, {1, 1, 1}), Status::Verified);

    // Partial sums of sum 10^(-k!): enclosure through k = 5, witness at k = 3.
    Rational s5 = 0;
    for (unsigned long k = 1; k <= 5; ++k) {
        s5 += Rational(BigInt(1), pow10_int(factorial_int(k).get_ui()));
    }
    const RationalInterval lc{s5, s5 + make_rational(BigInt(2), pow10_int(720))};
    EXPECT_EQ(verify_witness(lc, {110001, 1000000, 3}), Status::Verified);
    // Inside the interval: undecided.
    EXPECT_EQ(verify_witness(e, {33, 50, 2}), Status::Undecided);
    // Too far for the exponent.
    EXPECT_EQ(verify_witness(e, {1, 2, 5}), Status::Failed);
}

TEST(Witness, SubEnclosureKeepsVerdict)
{
    std::mt19937_64 rng(17);
    const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse("00000"), 8));
    for (std::size_t n = 1; n <= 6; ++n) {
        const LiouvilleWitness w{cf.p(n), cf.q(n), static_cast<unsigned long>(n)};
        const RationalInterval outer = enclosure(cf, n + 1);
        ASSERT_EQ(verify_witness(outer, w), Status::Verified) << n;
        for (int i = 0; i < 20; ++i) {
            const Rational t1 = make_rational(BigInt(static_cast<unsigned long>(rng() % 1000)), 1000);
            const Rational t2 = make_rational(BigInt(static_cast<unsigned long>(rng() % 1000)), 1000);
            Rational a = outer.lo + outer.width() * std::min(t1, t2);
            Rational b = outer.lo + outer.width() * std::max(t1, t2);
            if (a == b) {
                continue;
            }
            ASSERT_EQ(verify_witness({a, b}, w), Status::Verified);
        }
    }
}

TEST(Phi, Examples)
{
    EXPECT_EQ(phi(5), 1u);
    EXPECT_EQ(phi(26), 2u);
    EXPECT_EQ(phi(1), 1u);
    EXPECT_EQ(phi(10), 1u);
    EXPECT_EQ(phi(11), 2u);
    EXPECT_EQ(phi(pow10_int(6)), 3u);
    EXPECT_EQ(phi(pow10_int(6) + 1), 4u);
    EXPECT_THROW(phi(0), DomainError);
}

TEST(Phi, MinimalityAndMonotone)
{
    std::mt19937_64 rng(23);
    unsigned long prev = 1;
    BigInt q = 1;
    for (int i = 0; i < 400; ++i) {
        q += oracle::random_int(rng, i / 4 + 1);
        const unsigned long k = phi(q);
        ASSERT_GE(k, prev);
        prev = k;
        ASSERT_LE(q, pow10_int(factorial_int(k).get_ui()));
        if (k > 1) {
            ASSERT_GT(q, pow10_int(factorial_int(k - 1).get_ui()));
        }
    }
}

TEST(Classify, Examples)
{
    const std::vector<PhiValue> a{{1, 1}, {2, 1}, {3, 2}, {4, 2}};
    const auto c = classify_case(a, 1);
    EXPECT_TRUE(c.case1_evidence);
    EXPECT_TRUE(c.pairs.empty());

    const std::vector<PhiValue> b{{1, 1}, {2, 8}, {3, 28}};
    const auto d = classify_case(b, 3);
    EXPECT_FALSE(d.case1_evidence);
    ASSERT_EQ(d.pairs.size(), 1u);
    EXPECT_EQ(d.pairs[0], (std::pair<std::size_t, unsigned long>{2, 3}));

    EXPECT_TRUE(classify_case(b, 10).case1_evidence);
    EXPECT_THROW(classify_case(std::vector<PhiValue>{}, 1), DomainError);
    EXPECT_THROW(classify_case(std::vector<PhiValue>{{1, 1}, {3, 1}}, 1), DomainError);
}

TEST(Classify, GeneratedNumberStaysInFirstCase)
{
    const ContinuedFraction cf(generate_ultra_strong(BranchChoices::parse("000000"), 9));
    const auto phis = phi_values(cf, 1, 9);
    for (const auto& p : phis) {
        EXPECT_LE(p.phi, p.n);
    }
    EXPECT_TRUE(classify_case(phis, 1).case1_evidence);
}
