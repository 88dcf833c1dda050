#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "expdio/scan.hpp"

using namespace expdio;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& tag) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("expdio-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++) + ".jsonl");
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::trunc);
    REQUIRE(out.good());
    for (const auto& l : lines) out << l << '\n';
}

const CheckSummary& summary(const ScanRecord& rec, const std::string& id) {
    auto it = std::find_if(rec.checks.begin(), rec.checks.end(),
                           [&](const CheckSummary& s) { return s.check == id; });
    REQUIRE(it != rec.checks.end());
    return *it;
}

unsigned long coprime_triples(unsigned long amax, unsigned long bmax, unsigned long cmax) {
    unsigned long n = 0;
    for (unsigned long a = 2; a <= amax; ++a)
        for (unsigned long b = 2; b <= bmax; ++b)
            for (unsigned long c = 2; c <= cmax; ++c)
                if (std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1) ++n;
    return n;
}

}  // namespace

TEST_CASE("audit_triple summarizes the three-solution triple (3,5,2)") {
    ScanRecord rec = audit_triple(Triple(Int(3), Int(5), Int(2)), 30, ScanSuites{});
    CHECK(rec.solutions.size() == 3);
    CHECK(rec.flags.three_solution_witness);
    CHECK(rec.flags.odd_c_bound_ok);  // even c: the odd-c bound says nothing
    CHECK_FALSE(rec.flags.family_member);

    // Every enumerated check ran clean.
    for (const auto& s : rec.checks) {
        CHECK(s.violations == 0);
        CHECK(s.skipped == 0);
        CHECK(s.applicable <= s.runs);
    }

    // Two of the three rewrites put a pair of solutions at the same Z, each
    // feeding one two-term difference instance.
    CHECK(summary(rec, "gap-diff").runs == 2);
    CHECK(summary(rec, "gap-sum").runs == 0);
    // One approximation report per solution, one per unordered pair.
    CHECK(summary(rec, "approx-yz").runs == 3);
    CHECK(summary(rec, "pair-approx-yz").runs == 3);
    // Three rewrites, three unordered pairs each.
    CHECK(summary(rec, "pair-congruence").runs == 9);
    CHECK(summary(rec, "pair-congruence").applicable == 9);
    // Descents from the minimal-Z solution: 2 + 1 + 1 across the rewrites.
    CHECK(summary(rec, "descent-divisibility").runs == 4);
    // One three-solution report per rewrite; only the direct form orders.
    CHECK(summary(rec, "triple-descent").runs == 3);
    CHECK(summary(rec, "triple-descent").applicable == 1);
    // Desk-scale bases never reach the size threshold.
    CHECK(summary(rec, "size-threshold").runs == 1);
    CHECK(summary(rec, "size-threshold").applicable == 0);
}

TEST_CASE("audit_triple recognizes family members and odd-c records") {
    ScanRecord fam = audit_triple(Triple(Int(2), Int(3), Int(5)), 30, ScanSuites{});
    CHECK(fam.flags.family_member);  // (2, 2^2 - 1, 2^2 + 1)
    CHECK(fam.flags.odd_c_bound_ok);  // c = 5 odd with 2 solutions
    CHECK_FALSE(fam.flags.three_solution_witness);
    CHECK(fam.solutions.size() == 2);

    ScanRecord fam4 = audit_triple(Triple(Int(2), Int(15), Int(17)), 30, ScanSuites{});
    CHECK(fam4.flags.family_member);

    ScanRecord plain = audit_triple(Triple(Int(2), Int(5), Int(7)), 30, ScanSuites{});
    CHECK_FALSE(plain.flags.family_member);  // b + 2 != c shape
    CHECK(plain.solutions.size() == 1);      // 2 + 5 = 7
}

TEST_CASE("suite toggles limit the checks that run") {
    ScanSuites none{false, false, false};
    ScanRecord rec = audit_triple(Triple(Int(2), Int(3), Int(5)), 30, none);
    REQUIRE(rec.checks.size() == 1);  // the size threshold always runs
    CHECK(rec.checks[0].check == "size-threshold");

    ScanSuites only_gap{true, false, false};
    ScanRecord gaps = audit_triple(Triple(Int(2), Int(3), Int(5)), 30, only_gap);
    for (const auto& s : gaps.checks)
        CHECK((s.check == "size-threshold" || s.check == "gap-sum" || s.check == "gap-diff"));
}

TEST_CASE("scan_range writes one verifiable record per coprime triple") {
    TempFile out("range");
    ScanConfig cfg;
    cfg.amax = cfg.bmax = cfg.cmax = 6;
    cfg.cap = 30;
    cfg.out_path = out.str();

    ScanReport rep = scan_range(cfg);
    CHECK_FALSE(rep.failure.has_value());
    CHECK(rep.records == coprime_triples(6, 6, 6));
    CHECK(rep.violations == 0);
    CHECK(rep.max_n == 3);

    // (3,5,2) and its mirror are the only three-solution triples here.
    REQUIRE(rep.witnesses.size() == 2);
    CHECK(rep.witnesses[0].a == 3);
    CHECK(rep.witnesses[0].b == 5);
    CHECK(rep.witnesses[0].c == 2);
    CHECK(rep.witnesses[1].a == 5);
    CHECK(rep.witnesses[1].b == 3);
    CHECK(rep.witnesses[1].c == 2);

    // (2,3,5) sits among the multi-solution triples.
    CHECK(std::any_of(rep.multi.begin(), rep.multi.end(), [](const TripleCount& m) {
        return m.a == 2 && m.b == 3 && m.c == 5 && m.n == 2;
    }));

    // Mirrored records: one per (a, b, c) with a < b in range.
    unsigned long mirrored = 0;
    for (unsigned long a = 2; a <= 6; ++a)
        for (unsigned long b = a + 1; b <= 6; ++b)
            for (unsigned long c = 2; c <= 6; ++c)
                if (std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1)
                    ++mirrored;
    CHECK(rep.symmetric_pairs == mirrored);

    // Header + one line per record, and independent re-validation passes.
    CHECK(read_lines(out.str()).size() == rep.records + 1);
    VerifyResult vr = verify_report(out.str());
    CHECK(vr.ok);
    CHECK(vr.records == rep.records);
    CHECK(vr.issues.empty());
}

TEST_CASE("scan output is byte-identical across thread counts") {
    TempFile seq("seq"), par("par");
    ScanConfig cfg;
    cfg.amax = cfg.bmax = cfg.cmax = 8;
    cfg.out_path = seq.str();
    cfg.jobs = 1;
    scan_range(cfg);
    cfg.out_path = par.str();
    cfg.jobs = 4;
    scan_range(cfg);

    std::vector<std::string> a = read_lines(seq.str()), b = read_lines(par.str());
    REQUIRE(a.size() == b.size());
    // The header carries a timestamp; every record line must match exactly.
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("scan_range validates its configuration") {
    ScanConfig cfg;
    cfg.amax = 1;
    cfg.bmax = cfg.cmax = 5;
    cfg.out_path = "unused.jsonl";
    CHECK_THROWS_AS((void)scan_range(cfg), std::invalid_argument);

    cfg.amax = 5;
    cfg.cap = 0;
    CHECK_THROWS_AS((void)scan_range(cfg), std::invalid_argument);

    cfg.cap = 30;
    cfg.out_path.clear();
    CHECK_THROWS_AS((void)scan_range(cfg), std::invalid_argument);

    cfg.out_path = "/nonexistent-dir/out.jsonl";
    CHECK_THROWS_AS((void)scan_range(cfg), std::runtime_error);
}

TEST_CASE("verify_report pinpoints corrupted lines") {
    TempFile out("verify");
    ScanConfig cfg;
    cfg.amax = cfg.bmax = cfg.cmax = 6;
    cfg.out_path = out.str();
    scan_range(cfg);
    const std::vector<std::string> clean = read_lines(out.str());

    auto corrupted = [&](std::size_t line_no, const std::string& from,
                         const std::string& to) {
        std::vector<std::string> lines = clean;
        REQUIRE(line_no - 1 < lines.size());
        std::string& l = lines[line_no - 1];
        auto pos = l.find(from);
        REQUIRE(pos != std::string::npos);
        l.replace(pos, from.size(), to);
        write_lines(out.str(), lines);
        return verify_report(out.str());
    };

    SUBCASE("solution count mismatch") {
        // First record line: (2,3,5) with n = 2.
        VerifyResult vr = corrupted(2, "\"n\":2", "\"n\":3");
        CHECK_FALSE(vr.ok);
        REQUIRE(!vr.issues.empty());
        CHECK(vr.issues[0].line == 2);
    }

    SUBCASE("tampered solution fails substitution") {
        VerifyResult vr = corrupted(2, "[1,1,1]", "[1,2,1]");
        CHECK_FALSE(vr.ok);
        CHECK(vr.issues[0].line == 2);
        CHECK(vr.issues[0].message.find("solution") != std::string::npos);
    }

    SUBCASE("flipped flag is recomputed") {
        VerifyResult vr = corrupted(2, "\"family_member\":true", "\"family_member\":false");
        CHECK_FALSE(vr.ok);
        CHECK(vr.issues[0].line == 2);
    }

    SUBCASE("records out of lexicographic order") {
        std::vector<std::string> lines = clean;
        std::swap(lines[1], lines[2]);
        write_lines(out.str(), lines);
        VerifyResult vr = verify_report(out.str());
        CHECK_FALSE(vr.ok);
    }

    SUBCASE("unparseable line") {
        std::vector<std::string> lines = clean;
        lines[1] = "{not json";
        write_lines(out.str(), lines);
        VerifyResult vr = verify_report(out.str());
        CHECK_FALSE(vr.ok);
        CHECK(vr.issues[0].line == 2);
    }

    SUBCASE("duplicate header") {
        std::vector<std::string> lines = clean;
        lines.insert(lines.begin() + 3, lines[0]);
        write_lines(out.str(), lines);
        CHECK_FALSE(verify_report(out.str()).ok);
    }

    SUBCASE("failure marker is surfaced") {
        std::vector<std::string> lines = clean;
        lines.push_back(
            R"({"message":"boom","triple":[2,3,5],"type":"failure"})");
        write_lines(out.str(), lines);
        VerifyResult vr = verify_report(out.str());
        CHECK_FALSE(vr.ok);
        REQUIRE(!vr.issues.empty());
        CHECK(vr.issues[0].message.find("aborted") != std::string::npos);
    }

    SUBCASE("empty file") {
        write_lines(out.str(), {});
        CHECK_FALSE(verify_report(out.str()).ok);
    }

    SUBCASE("missing file throws") {
        CHECK_THROWS_AS((void)verify_report("/nonexistent-dir/nope.jsonl"),
                        std::runtime_error);
    }

    SUBCASE("pristine file still verifies after the harness round-trip") {
        write_lines(out.str(), clean);
        CHECK(verify_report(out.str()).ok);
    }
}
