#include <cstddef>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expdio/congruence.hpp"
#include "expdio/contfrac.hpp"
#include "expdio/equation.hpp"
#include "expdio/json_out.hpp"
#include "expdio/lemma_verify.hpp"
#include "expdio/scan.hpp"

namespace {

using namespace expdio;

void print_report(const CheckReport& rep) {
    std::cout << "check: " << rep.check << '\n';
    std::cout << "applicable: " << (rep.applicable ? "yes" : "no")
              << (rep.swapped ? " (inputs swapped into order)" : "") << '\n';
    std::cout << "preconditions:\n";
    for (const auto& p : rep.preconditions)
        std::cout << "  [" << (p.holds ? "ok" : "--") << "] " << p.name << '\n';
    std::cout << "conclusions:\n";
    for (const auto& c : rep.conclusions)
        std::cout << "  [" << (c.holds ? "ok" : "FAIL") << (c.asserted ? "][asserted" : "")
                  << "] " << c.name << '\n';
    if (rep.witness)
        std::cout << "witness: t=" << rep.witness->t << " u_power=" << rep.witness->u_power
                  << " v_power=" << rep.witness->v_power << '\n';
}

int run_solve(unsigned long a, unsigned long b, unsigned long c, unsigned long cap, bool json) {
    Triple t{Int(a), Int(b), Int(c)};
    SolutionSet ss = enumerate_solutions(t, cap);
    if (json) {
        std::cout << solution_set_json(ss).dump() << '\n';
        return 0;
    }
    std::cout << a << "^x + " << b << "^y = " << c << "^z  cap=" << ss.cap
              << " complete=" << (ss.complete ? "yes" : "no") << " n=" << ss.solutions.size()
              << '\n';
    for (const auto& s : ss.solutions)
        std::cout << "  x=" << s.x << " y=" << s.y << " z=" << s.z << '\n';
    return 0;
}

int run_scan(const ScanConfig& cfg) {
    ScanReport rep = scan_range(cfg);
    std::cout << "records: " << rep.records << '\n';
    std::cout << "max solutions per triple: " << rep.max_n << '\n';
    std::cout << "triples with at least two solutions: " << rep.multi.size() << '\n';
    for (const auto& m : rep.multi)
        std::cout << "  (" << m.a << ", " << m.b << ", " << m.c << ") n=" << m.n << '\n';
    std::cout << "triples with at least three solutions: " << rep.witnesses.size() << '\n';
    for (const auto& w : rep.witnesses)
        std::cout << "  (" << w.a << ", " << w.b << ", " << w.c << ") n=" << w.n << '\n';
    std::cout << "symmetric base pairs scanned twice: " << rep.symmetric_pairs << '\n';
    std::cout << "check runs skipped on budget: " << rep.skipped_checks << '\n';
    if (rep.failure) {
        std::cerr << "scan aborted at (" << rep.failure->a << ", " << rep.failure->b << ", "
                  << rep.failure->c << "): " << rep.failure->message << '\n';
        return 3;
    }
    return 0;
}

int run_verify(const std::string& path) {
    VerifyResult vr = verify_report(path);
    if (vr.ok) {
        std::cout << "OK: " << vr.records << " records verified\n";
        return 0;
    }
    std::cout << "FAIL: " << vr.issues.size() << " issue(s) across " << vr.records
              << " record(s)\n";
    std::size_t shown = 0;
    for (const auto& is : vr.issues) {
        if (++shown > 50) {
            std::cout << "  ... " << (vr.issues.size() - 50) << " more\n";
            break;
        }
        std::cout << "  line " << is.line << ": " << is.message << '\n';
    }
    return 3;
}

int run_cf(unsigned long c, unsigned long b, unsigned long count, bool json) {
    ContinuedFraction cf = cf_log_ratio(Int(c), Int(b), count);
    std::vector<Convergent> cvs;
    for (std::size_t i = 0; i < cf.certified_count(); ++i) cvs.push_back(cf.convergent(i));
    if (json) {
        Json j;
        j["c"] = c;
        j["b"] = b;
        Json q = Json::array();
        for (const auto& a : cf.quotients()) q.push_back(int_json(a));
        j["quotients"] = std::move(q);
        Json cj = Json::array();
        for (const auto& cv : cvs) cj.push_back({int_json(cv.p), int_json(cv.q)});
        j["convergents"] = std::move(cj);
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "log(" << c << ")/log(" << b << ") = [";
    for (std::size_t i = 0; i < cf.quotients().size(); ++i) {
        if (i == 1) std::cout << "; ";
        else if (i > 1) std::cout << ", ";
        std::cout << cf.quotients()[i];
    }
    std::cout << (cf.finite() ? "]" : ", ...]") << '\n';
    std::cout << "convergents:\n";
    for (const auto& cv : cvs) std::cout << "  " << cv.p << "/" << cv.q << '\n';
    return 0;
}

int run_order(unsigned long r, unsigned long s) {
    OrderRecord rec = least_pm1(Int(r), Int(s));
    std::cout << "r=" << rec.r << " s=" << rec.s << " n1=" << rec.n1
              << " delta1=" << (rec.delta1 > 0 ? "+1" : "-1") << " f=" << rec.f << '\n';
    return 0;
}

int run_gap(const std::string& kind, unsigned long u, unsigned long v, unsigned long k,
            unsigned long cap) {
    bool sum = kind == "sum";
    Int ui{u}, vi{v}, ki{k};
    std::vector<ExponentPair> pairs =
        sum ? solve_sum(ui, vi, ki, cap) : solve_diff(ui, vi, ki, cap);
    std::cout << u << "^l " << (sum ? "+ " : "- ") << v << "^m = " << k << "  cap=" << cap
              << " pairs=" << pairs.size() << '\n';
    for (const auto& p : pairs) std::cout << "  l=" << p.l << " m=" << p.m << '\n';
    if (pairs.size() != 2) {
        std::cout << "gap rule needs exactly two pairs; nothing to check\n";
        return 0;
    }
    CheckReport rep = sum ? gap_sum_check(ui, vi, ki, pairs[0], pairs[1])
                          : gap_diff_check(ui, vi, ki, pairs[0], pairs[1]);
    print_report(rep);
    return rep.asserted_hold() ? 0 : 3;
}

int run_family(unsigned long k) {
    FamilyInstance fi = family(k);
    std::cout << "a=" << fi.triple.a() << " b=" << fi.triple.b() << " c=" << fi.triple.c()
              << '\n';
    for (const auto& s : fi.predicted)
        std::cout << "  x=" << s.x << " y=" << s.y << " z=" << s.z
                  << (satisfies(fi.triple, s) ? "  (verified)" : "  (FAILS)") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and auditor for the exponential equation a^x + b^y = c^z"};
    app.require_subcommand(1);

    unsigned long a = 0, b = 0, c = 0;
    unsigned long cap_solve = 50, cap_gap = 64;
    bool json_solve = false, json_cf = false;

    CLI::App* solve = app.add_subcommand("solve", "Enumerate all solutions of a^x + b^y = c^z");
    solve->add_option("--a", a, "base a (>= 2)")->required();
    solve->add_option("--b", b, "base b (>= 2)")->required();
    solve->add_option("--c", c, "base c (>= 2)")->required();
    solve->add_option("--cap", cap_solve, "exponent cap (default 50)");
    solve->add_flag("--json", json_solve, "emit JSON");

    ScanConfig cfg;
    CLI::App* scan = app.add_subcommand("scan", "Audit all coprime triples in a range");
    scan->add_option("--amax", cfg.amax, "upper bound for a")->required();
    scan->add_option("--bmax", cfg.bmax, "upper bound for b")->required();
    scan->add_option("--cmax", cfg.cmax, "upper bound for c")->required();
    scan->add_option("--cap", cfg.cap, "exponent cap (default 30)");
    scan->add_option("--jobs", cfg.jobs, "worker threads (default 1)");
    scan->add_option("--out", cfg.out_path, "output JSONL file")->required();

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "Re-validate a scan report file");
    verify->add_option("--in", verify_path, "scan report to verify")->required();

    unsigned long cf_count = 0;
    CLI::App* cf = app.add_subcommand("cf", "Certified continued fraction of log(c)/log(b)");
    cf->add_option("--c", c, "numerator base (>= 2)")->required();
    cf->add_option("--b", b, "denominator base (>= 2)")->required();
    cf->add_option("--count", cf_count, "certified partial quotients to produce")
        ->required()
        ->check(CLI::PositiveNumber);
    cf->add_flag("--json", json_cf, "emit JSON");

    unsigned long ord_r = 0, ord_s = 0;
    CLI::App* order = app.add_subcommand(
        "order", "Least n with r^n = +/-1 (mod s), its sign, and the cofactor f");
    order->add_option("--r", ord_r, "base r (>= 2)")->required();
    order->add_option("--s", ord_s, "modulus s (>= 3)")->required();

    std::string gap_kind;
    unsigned long gu = 0, gv = 0, gk = 0;
    CLI::App* gap = app.add_subcommand("gap", "Solve u^l +/- v^m = k and check the gap rule");
    gap->add_option("--kind", gap_kind, "sum (u^l + v^m = k) or diff (u^l - v^m = k)")
        ->required()
        ->check(CLI::IsMember({"sum", "diff"}));
    gap->add_option("--u", gu, "base u (>= 2)")->required();
    gap->add_option("--v", gv, "base v (>= 2)")->required();
    gap->add_option("--k", gk, "target k (>= 2)")->required();
    gap->add_option("--cap", cap_gap, "exponent cap (default 64)");

    unsigned long fam_k = 0;
    CLI::App* fam = app.add_subcommand(
        "family", "The triple (2, 2^k - 1, 2^k + 1) and its two solutions");
    fam->add_option("--k", fam_k, "parameter k (>= 2)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (solve->parsed()) return run_solve(a, b, c, cap_solve, json_solve);
        if (scan->parsed()) return run_scan(cfg);
        if (verify->parsed()) return run_verify(verify_path);
        if (cf->parsed()) return run_cf(c, b, cf_count, json_cf);
        if (order->parsed()) return run_order(ord_r, ord_s);
        if (gap->parsed()) return run_gap(gap_kind, gu, gv, gk, cap_gap);
        if (fam->parsed()) return run_family(fam_k);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return 3;
    } catch (const rational_ratio_error& e) {
        std::cerr << "error: " << e.what() << " (exact value "
                  << e.ratio.get_num() << "/" << e.ratio.get_den() << ")\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
