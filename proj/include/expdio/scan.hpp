#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expdio/equation.hpp"

namespace expdio {

// Which audit suites a scan runs on every enumerated triple.  The size
// threshold is always evaluated; it is cheap and gates the others' meaning.
struct ScanSuites {
    bool gap = true;
    bool approx = true;
    bool congruence = true;
};

// Aggregated outcome of one check id across a single triple's audit.
struct CheckSummary {
    std::string check;
    unsigned long runs = 0;         // times the check was invoked
    unsigned long applicable = 0;   // runs whose preconditions all held
    unsigned long violations = 0;   // runs where an asserted conclusion failed
    unsigned long skipped = 0;      // runs abandoned on certification budget
};

struct ScanFlags {
    bool family_member = false;           // (2, 2^k - 1, 2^k + 1) shape
    bool odd_c_bound_ok = false;          // c odd implies at most two solutions
    bool three_solution_witness = false;  // at least three solutions found
};

struct ScanRecord {
    Triple triple;
    unsigned long cap = 0;
    bool complete = false;
    std::vector<Solution> solutions;
    ScanFlags flags;
    std::vector<CheckSummary> checks;
};

struct ScanConfig {
    unsigned long amax = 0;
    unsigned long bmax = 0;
    unsigned long cmax = 0;
    unsigned long cap = 30;
    unsigned long jobs = 1;
    std::string out_path;
    ScanSuites suites;
};

struct ScanFailure {
    unsigned long a = 0, b = 0, c = 0;
    std::string message;
};

struct TripleCount {
    unsigned long a = 0, b = 0, c = 0;
    unsigned long n = 0;  // solution count
};

struct ScanReport {
    unsigned long records = 0;           // JSONL records written
    unsigned long max_n = 0;             // largest solution count seen
    std::vector<TripleCount> multi;      // records with at least two solutions
    std::vector<TripleCount> witnesses;  // records with at least three solutions
    unsigned long symmetric_pairs = 0;   // unordered {a,b} pairs scanned in both orders
    unsigned long violations = 0;        // violated check runs
    unsigned long skipped_checks = 0;    // check runs abandoned on budget
    std::optional<ScanFailure> failure;  // set when the scan aborted
};

// Audits one triple: enumerates solutions up to `cap` and runs the selected
// check suites over them.  Throws only on internal invariant failures; check
// outcomes, including violations, land in the record's summaries.
ScanRecord audit_triple(const Triple& t, unsigned long cap, const ScanSuites& suites);

// Scans every pairwise-coprime triple with a in [2, amax], b in [2, bmax],
// c in [2, cmax] in lexicographic (a, b, c) order — symmetric (a, b) duplicates
// are both scanned — writing one JSONL record per triple to cfg.out_path.
// Output is deterministic for a given config regardless of cfg.jobs.  A check
// violation or internal error stops the scan after the offending record and
// appends a failure marker line; the report carries the failure.
ScanReport scan_range(const ScanConfig& cfg);

struct VerifyIssue {
    std::size_t line = 0;  // 1-based line number in the report file
    std::string message;
};

struct VerifyResult {
    bool ok = false;
    unsigned long records = 0;
    std::vector<VerifyIssue> issues;
};

// Re-validates a scan report file: parses every line, re-substitutes each
// recorded solution into its equation, recomputes the flags and completeness,
// and checks the per-record summaries and the header shape.  Throws only when
// the file cannot be opened; every content problem becomes an issue naming
// the offending line.
VerifyResult verify_report(const std::string& path);

}  // namespace expdio
