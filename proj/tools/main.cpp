// liouville: construct ultra-strong Liouville numbers, evaluate lacunary
// truncations, verify and audit.

#include "liouville/audit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace liouville;

namespace {

struct Common {
    std::string bits;
    bool bits_set = false;
    std::size_t depth = 8;
    std::string eps_text = "1e-12";
    std::string budget_text;
    std::string format = "table";
};

Rational parse_eps(const std::string& text)
{
    const Rational e = parse_rational(text);
    if (e <= 0) {
        throw DomainError("--eps must be positive");
    }
    return e;
}

BigInt budget_from(const std::string& flag)
{
    std::string text = flag;
    if (text.empty()) {
        if (const char* env = std::getenv("LIOUVILLE_BUDGET")) {
            text = env;
        }
    }
    if (text.empty()) {
        return 1000000;
    }
    const BigInt b = parse_bigint(text);
    if (b < 1) {
        throw DomainError("budget must be >= 1");
    }
    return b;
}

BranchChoices choices_for(const Common& c)
{
    if (!c.bits_set) {
        return BranchChoices::zeros(c.depth > 3 ? c.depth - 3 : 0);
    }
    return BranchChoices::parse(c.bits);
}

std::string radius_text(const Rational& r)
{
    if (r == 0) {
        return "0";
    }
    const LogMag l = logmag_from_rational(r);
    BigInt e;
    mpz_cdiv_q(e.get_mpz_t(), l.hi.get_num_mpz_t(), l.hi.get_den_mpz_t());
    return "10^" + e.get_str();
}

void emit(const AuditReport& report, const std::string& format)
{
    std::cout << (format == "json" ? to_json(report) : to_table(report));
}

int cmd_generate(const Common& c, unsigned digits)
{
    const ContinuedFraction cf(generate_ultra_strong(choices_for(c), c.depth));
    const RationalInterval e = tightest_enclosure(cf);
    const Rational mid = (e.lo + e.hi) / 2;
    // Half-width plus the truncation of the printed digits.
    const Rational radius = (e.hi - e.lo) / 2 + Rational(BigInt(1), pow10_int(digits));
    if (c.format == "json") {
        nlohmann::ordered_json out;
        out["a"] = nlohmann::ordered_json::array();
        for (const auto& a : cf.terms().terms()) {
            out["a"].push_back(a.get_str());
        }
        out["convergents"] = nlohmann::ordered_json::array();
        for (const auto& cv : cf.all()) {
            out["convergents"].push_back({{"n", cv.n}, {"p", cv.p.get_str()}, {"q", cv.q.get_str()}});
        }
        out["midpoint"] = format_decimal(mid, digits);
        out["radius"] = radius_text(radius);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "a = " << cf.terms().to_string() << "\n\n";
    std::cout << "n  p_n  q_n\n";
    for (const auto& cv : cf.all()) {
        std::cout << cv.n << "  " << cv.p << "  " << cv.q << "\n";
    }
    std::cout << "\nxi ~ " << format_decimal(mid, digits) << " (radius < " << radius_text(radius)
              << ")\n";
    return 0;
}

int cmd_eval(const Common& c, const std::string& z_text, const std::string& n_text,
             const std::string& gaps_text, const std::string& custom_text, bool custom_bases,
             unsigned digits)
{
    const Rational z = parse_rational(z_text);
    const BigInt n = parse_bigint(n_text);
    GapSequence gaps = [&] {
        if (!custom_text.empty()) {
            std::vector<BigInt> values;
            std::stringstream ss(custom_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                values.push_back(parse_bigint(item));
            }
            return GapSequence::custom(std::move(values));
        }
        GapOptions g;
        g.allow_custom_bases = custom_bases;
        return GapSequence::from_bases(parse_bases(gaps_text), g);
    }();
    TruncationOptions t;
    t.budget = budget_from(c.budget_text);
    const Approximant a = eval_truncation_exact(z, n, gaps, t);
    const auto& den = a.canonical_den;
    if (c.format == "json") {
        nlohmann::ordered_json out;
        out["value"] = a.value.get_str();
        out["decimal"] = format_decimal(a.value, digits);
        out["canonical_denominator"] = {{"ten_exponent", den.ten_exponent.get_str()},
                                        {"q", den.q.get_str()},
                                        {"q_exponent", den.q_exponent.get_str()}};
        out["reduced_divides_canonical"] = a.reduced_divides_canonical();
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "F_" << n << "(" << z << ") = " << a.value << "\n";
    std::cout << "decimal: " << format_decimal(a.value, digits) << "\n";
    std::cout << "canonical denominator: 10^" << den.ten_exponent << " * " << den.q << "^"
              << den.q_exponent << "\n";
    std::cout << "reduced denominator divides canonical: "
              << (a.reduced_divides_canonical() ? "yes" : "no") << "\n";
    return 0;
}

int cmd_verify(const Common& c, std::size_t up_to)
{
    const ContinuedFraction cf(generate_ultra_strong(choices_for(c), c.depth));
    if (up_to == 0) {
        up_to = c.depth - 1;
    }
    UltraStrongOptions u;
    u.eps = parse_eps(c.eps_text);
    AuditReport report;
    report.rows = verify_ultra_strong(cf, up_to, u);
    BigInt prod = 1;
    for (std::size_t n = 1; n <= cf.depth(); ++n) {
        prod *= cf.a(n) + 1;
        AuditRow r = AuditRow::from("CF.qprod", {static_cast<long long>(n)},
                                    exact_less(Rational(cf.q(n)), Rational(prod), false, u.eps));
        r.note = "(a_1+1)...(a_n+1) > q_n";
        report.rows.push_back(std::move(r));
    }
    report.sort();
    emit(report, c.format);
    return exit_code(report);
}

struct AuditFlags {
    std::string which = "all";
    unsigned long k = 1;
    std::string window;
    std::string growth_window;
    std::string pair;
    std::string cf_text;
    std::string gaps = "222222";
    bool custom_bases = false;
    std::string fact_window;
    unsigned long fact_k = 5;
};

int cmd_audit(Common c, const AuditFlags& f)
{
    FullReportConfig cfg = default_full_config();
    if (f.cf_text.empty()) {
        cfg.bits = choices_for(c);
        cfg.depth = c.depth;
    } else {
        cfg.cf = PartialQuotients::parse(f.cf_text);
    }
    cfg.gap_bases = parse_bases(f.gaps);
    cfg.custom_bases = f.custom_bases;
    cfg.opts.eps = parse_eps(c.eps_text);
    cfg.opts.budget = budget_from(c.budget_text);

    const ContinuedFraction cf(cfg.cf ? *cfg.cf : generate_ultra_strong(cfg.bits, cfg.depth));
    const std::size_t depth = cf.depth();

    Case1Config c1;
    c1.k = f.k;
    if (f.window.empty()) {
        const std::size_t top = std::min<std::size_t>(2, max_case1_index(depth));
        c1.n_window = top >= 1 ? std::optional<IndexWindow>(IndexWindow{1, top}) : std::nullopt;
    } else {
        c1.n_window = IndexWindow::parse(f.window);
    }
    if (f.growth_window.empty()) {
        c1.growth_window = depth >= 3 ? std::optional<IndexWindow>(IndexWindow{3, std::min<std::size_t>(6, depth)})
                                      : std::nullopt;
    } else {
        c1.growth_window = IndexWindow::parse(f.growth_window);
    }

    if (f.which == "1" || f.which == "2") {
        FullReportConfig only = empty_full_config();
        only.cf = cfg.cf;
        only.bits = cfg.bits;
        only.depth = cfg.depth;
        only.gap_bases = cfg.gap_bases;
        only.custom_bases = cfg.custom_bases;
        only.opts = cfg.opts;
        cfg = std::move(only);
    }
    if (f.which == "1") {
        cfg.case1 = c1;
    } else if (f.which == "2") {
        if (!f.pair.empty()) {
            const auto comma = f.pair.find(',');
            if (comma == std::string::npos) {
                throw DomainError("--pair expects n,k");
            }
            const std::size_t n = parse_bigint(f.pair.substr(0, comma)).get_ui();
            const unsigned long k = parse_bigint(f.pair.substr(comma + 1)).get_ui();
            GapOptions g;
            g.allow_custom_bases = cfg.custom_bases;
            const GapSequence gaps = GapSequence::from_bases(cfg.gap_bases, g);
            AuditReport report;
            report.rows = audit_case2(cf, gaps, {n, k}, cfg.opts);
            report.sort();
            emit(report, c.format);
            return exit_code(report);
        }
        cfg.classify_ks = {f.k};
        cfg.classify_window = f.window.empty() ? IndexWindow{1, depth} : IndexWindow::parse(f.window);
    } else {
        cfg.case1 = c1;
        cfg.ultra_window = IndexWindow{1, depth - 1};
        cfg.qprod_window = IndexWindow{1, depth};
        cfg.gap_window = IndexWindow{1, cfg.gap_bases.size()};
        cfg.classify_window = IndexWindow{1, depth};
        if (cfg.gap_bases.size() < 3) {
            cfg.gap_window.reset();
        }
    }
    if (!f.fact_window.empty()) {
        cfg.fact = FactConfig{f.fact_k, IndexWindow::parse(f.fact_window)};
    }
    const AuditReport report = full_report(cfg);
    emit(report, c.format);
    return exit_code(report);
}

void add_common(CLI::App* sub, Common& c, bool with_bits, std::size_t default_depth)
{
    c.depth = default_depth;
    if (with_bits) {
        sub->add_option("--bits", c.bits, "branch bits over {0,1}, one per j >= 4 (default all 0)");
        sub->add_option("--depth", c.depth, "number of partial quotients N")->capture_default_str();
    }
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ultra-strong Liouville numbers and a lacunary series: construct, evaluate, verify, audit"};
    app.require_subcommand(1);

    Common gen_c, eval_c, ver_c, aud_c;
    unsigned gen_digits = 40;
    auto* gen = app.add_subcommand("generate", "print partial quotients, convergents and a decimal enclosure");
    add_common(gen, gen_c, true, 8);
    gen->add_option("--digits", gen_digits, "decimal digits of the midpoint")->capture_default_str();

    std::string z_text, n_text, gaps_text = "222222", custom_text;
    bool eval_custom = false;
    unsigned eval_digits = 40;
    auto* ev = app.add_subcommand("eval", "exact truncation F_n(z) of the lacunary series");
    add_common(ev, eval_c, false, 8);
    ev->add_option("--z", z_text, "rational p/q")->required();
    ev->add_option("--truncate", n_text, "truncation index n")->required();
    ev->add_option("--gaps", gaps_text, "gap bases over {2,3}")->capture_default_str();
    ev->add_option("--custom-gaps", custom_text, "explicit strictly increasing gap terms, comma separated");
    ev->add_flag("--custom", eval_custom, "allow gap bases outside {2,3}");
    ev->add_option("--budget", eval_c.budget_text, "largest k! materialized (env LIOUVILLE_BUDGET)");
    ev->add_option("--digits", eval_digits, "decimal digits")->capture_default_str();

    std::size_t up_to = 0;
    auto* ver = app.add_subcommand("verify", "ultra-strong and quotient-product rows");
    add_common(ver, ver_c, true, 8);
    ver->add_option("--upto", up_to, "largest n (default N-1)");
    ver->add_option("--eps", ver_c.eps_text, "working precision")->capture_default_str();

    AuditFlags af;
    auto* aud = app.add_subcommand("audit", "audit the proof steps at concrete indices");
    add_common(aud, aud_c, true, 9);
    aud->add_option("--case", af.which, "1, 2 or all")
        ->check(CLI::IsMember({"1", "2", "all"}))
        ->capture_default_str();
    aud->add_option("--k", af.k, "Case-1 exponent k, or the k to classify for Case 2")->capture_default_str();
    aud->add_option("--window", af.window, "index window a..b");
    aud->add_option("--growth-window", af.growth_window, "window for q_m > e^((m-3)!)");
    aud->add_option("--pair", af.pair, "Case-2 pair n,k");
    aud->add_option("--cf", af.cf_text, "explicit partial quotients a_1,...,a_N");
    aud->add_option("--gaps", af.gaps, "gap bases")->capture_default_str();
    aud->add_flag("--custom", af.custom_bases, "allow gap bases outside {2,3}");
    aud->add_option("--fact-window", af.fact_window, "standalone factorial-chain window a..b");
    aud->add_option("--fact-k", af.fact_k, "k for the factorial chain")->capture_default_str();
    aud->add_option("--eps", aud_c.eps_text, "working precision")->capture_default_str();
    aud->add_option("--budget", aud_c.budget_text, "largest k! materialized (env LIOUVILLE_BUDGET)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    gen_c.bits_set = gen->count("--bits") > 0;
    ver_c.bits_set = ver->count("--bits") > 0;
    aud_c.bits_set = aud->count("--bits") > 0;

    try {
        if (*gen) {
            return cmd_generate(gen_c, gen_digits);
        }
        if (*ev) {
            return cmd_eval(eval_c, z_text, n_text, gaps_text, custom_text, eval_custom, eval_digits);
        }
        if (*ver) {
            return cmd_verify(ver_c, up_to);
        }
        return cmd_audit(aud_c, af);
    } catch (const BudgetError& e) {
        std::cerr << "error: budget exceeded: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
