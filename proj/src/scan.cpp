#include "expdio/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "expdio/congruence.hpp"
#include "expdio/contfrac.hpp"
#include "expdio/json_out.hpp"
#include "expdio/lemma_verify.hpp"

namespace expdio {
namespace {

constexpr const char* kCheckOrder[] = {
    "size-threshold",  "gap-sum",        "gap-diff",
    "approx-yz",       "approx-xz",      "pair-approx-yz",
    "pair-approx-xz",  "pair-congruence", "descent-divisibility",
    "triple-descent",
};

// Collects per-check tallies for one triple; emits them in kCheckOrder.
class SummaryTable {
public:
    CheckSummary& at(const std::string& id) {
        auto [it, inserted] = by_id_.try_emplace(id);
        if (inserted) it->second.check = id;
        return it->second;
    }

    void seed(const std::string& id) { at(id); }

    // Runs one check invocation; a blown certification budget is recorded
    // as a skip rather than an error.
    template <typename Fn>
    void run(const std::string& id, Fn&& fn) {
        ++at(id).runs;
        try {
            fn();
        } catch (const budget_error&) {
            ++at(id).skipped;
        }
    }

    void fold(const CheckReport& rep) {
        auto& s = at(rep.check);
        if (rep.applicable) ++s.applicable;
        if (!rep.asserted_hold()) ++s.violations;
    }

    std::vector<CheckSummary> ordered() const {
        std::vector<CheckSummary> out;
        for (const char* id : kCheckOrder) {
            auto it = by_id_.find(id);
            if (it != by_id_.end()) out.push_back(it->second);
        }
        return out;
    }

private:
    std::map<std::string, CheckSummary> by_id_;
};

bool is_family_member(const Triple& t) {
    if (t.a() != 2 || t.c() != t.b() + 2) return false;
    Int m = t.b() + 1;
    return m >= 4 && mpz_popcount(m.get_mpz_t()) == 1;
}

std::string iso_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string header_line(const ScanConfig& cfg) {
    Json j;
    j["type"] = "header";
    j["cap"] = cfg.cap;
    j["log_base"] = "natural";
    j["ranges"] = {{"a", {2, cfg.amax}}, {"b", {2, cfg.bmax}}, {"c", {2, cfg.cmax}}};
    j["suites"] = {{"gap", cfg.suites.gap},
                   {"approx", cfg.suites.approx},
                   {"congruence", cfg.suites.congruence}};
    j["timestamp"] = iso_utc_now();
    return j.dump();
}

std::string record_line(const ScanRecord& rec) {
    Json j = solution_set_json(
        SolutionSet{rec.triple, rec.cap, rec.complete, rec.solutions});
    j["type"] = "record";
    j["flags"] = {{"family_member", rec.flags.family_member},
                  {"odd_c_bound_ok", rec.flags.odd_c_bound_ok},
                  {"three_solution_witness", rec.flags.three_solution_witness}};
    Json checks = Json::array();
    for (const auto& cs : rec.checks)
        checks.push_back({{"check", cs.check},
                          {"runs", cs.runs},
                          {"applicable", cs.applicable},
                          {"violations", cs.violations},
                          {"skipped", cs.skipped}});
    j["checks"] = std::move(checks);
    return j.dump();
}

std::string failure_line(unsigned long a, unsigned long b, unsigned long c,
                         const std::string& message) {
    Json j;
    j["type"] = "failure";
    j["triple"] = {a, b, c};
    j["message"] = message;
    return j.dump();
}

}  // namespace

ScanRecord audit_triple(const Triple& t, unsigned long cap, const ScanSuites& suites) {
    SolutionSet ss = enumerate_solutions(t, cap);
    ScanRecord rec{.triple = t,
                   .cap = cap,
                   .complete = ss.complete,
                   .solutions = std::move(ss.solutions),
                   .flags = {},
                   .checks = {}};
    const std::size_t n = rec.solutions.size();
    rec.flags.family_member = is_family_member(t);
    rec.flags.three_solution_witness = n >= 3;
    rec.flags.odd_c_bound_ok = t.c() % 2 == 0 || n <= 2;

    SummaryTable table;
    table.seed("size-threshold");
    if (suites.gap)
        for (const char* id : {"gap-sum", "gap-diff"}) table.seed(id);
    if (suites.approx)
        for (const char* id : {"approx-yz", "approx-xz", "pair-approx-yz", "pair-approx-xz"})
            table.seed(id);
    if (suites.congruence)
        for (const char* id : {"pair-congruence", "descent-divisibility", "triple-descent"})
            table.seed(id);

    table.run("size-threshold", [&] {
        Verdict v = size_threshold_check(t.max_elem());
        auto& s = table.at("size-threshold");
        if (t.max_elem() >= two_solution_threshold()) {
            ++s.applicable;
            if (v == Verdict::indeterminate)
                ++s.skipped;
            else if (v != Verdict::yes)
                ++s.violations;
        }
    });

    if (suites.approx && n >= 1) {
        std::optional<ContinuedFraction> cf_cb, cf_ca;
        auto cb = [&]() -> ContinuedFraction& {
            if (!cf_cb) cf_cb.emplace(cf_log_ratio(t.c(), t.b(), 1));
            return *cf_cb;
        };
        auto ca = [&]() -> ContinuedFraction& {
            if (!cf_ca) cf_ca.emplace(cf_log_ratio(t.c(), t.a(), 1));
            return *cf_ca;
        };
        for (const auto& s : rec.solutions) {
            table.run("approx-yz", [&] { table.fold(approx_yz_check(t, s, cb())); });
            table.run("approx-xz", [&] { table.fold(approx_xz_check(t, s, ca())); });
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                table.run("pair-approx-yz", [&] {
                    table.fold(pair_approx_yz_check(t, rec.solutions[i], rec.solutions[j], cb()));
                });
                table.run("pair-approx-xz", [&] {
                    table.fold(pair_approx_xz_check(t, rec.solutions[i], rec.solutions[j], ca()));
                });
            }
    }

    if ((suites.gap || suites.congruence) && n >= 2) {
        std::array<TransformedInstance, 3> roles = p_set(t);
        for (const auto& inst : roles) {
            std::vector<TransformedSolution> mapped;
            mapped.reserve(n);
            for (const auto& s : rec.solutions) mapped.push_back(map_solution(inst, s));

            if (suites.gap) {
                std::map<unsigned long, std::vector<std::size_t>> by_z;
                for (std::size_t i = 0; i < mapped.size(); ++i) by_z[mapped[i].Z].push_back(i);
                for (const auto& [zval, idx] : by_z) {
                    if (idx.size() > 2)
                        throw invariant_error(
                            "audit_triple: more than two solutions of a two-term equation");
                    if (idx.size() != 2) continue;
                    Int k = pow_ui(inst.C, zval);
                    ExponentPair p1{mapped[idx[0]].X, mapped[idx[0]].Y};
                    ExponentPair p2{mapped[idx[1]].X, mapped[idx[1]].Y};
                    const char* id = inst.lambda == 1 ? "gap-sum" : "gap-diff";
                    table.run(id, [&] {
                        table.fold(inst.lambda == 1 ? gap_sum_check(inst.A, inst.B, k, p1, p2)
                                                    : gap_diff_check(inst.A, inst.B, k, p1, p2));
                    });
                }
            }

            if (suites.congruence) {
                for (std::size_t i = 0; i < mapped.size(); ++i)
                    for (std::size_t j = i + 1; j < mapped.size(); ++j)
                        table.run("pair-congruence", [&] {
                            PairCongruence pc = pair_congruence_check(inst, mapped[i], mapped[j]);
                            auto& s = table.at("pair-congruence");
                            ++s.applicable;
                            if (!pc.congruence_holds) ++s.violations;
                        });

                std::size_t lo = 0;
                for (std::size_t i = 1; i < mapped.size(); ++i)
                    if (mapped[i].Z < mapped[lo].Z) lo = i;
                for (std::size_t j = 0; j < mapped.size(); ++j) {
                    if (mapped[j].Z <= mapped[lo].Z) continue;
                    table.run("descent-divisibility", [&] {
                        DescentDivisibility dd =
                            descent_divisibility_check(inst, mapped[lo], mapped[j], mapped);
                        auto& s = table.at("descent-divisibility");
                        if (dd.condition_met && dd.determinant_nonzero) {
                            ++s.applicable;
                            if (!dd.divides_y2) ++s.violations;
                        }
                    });
                }

                for (std::size_t i = 0; i < mapped.size(); ++i)
                    for (std::size_t j = i + 1; j < mapped.size(); ++j)
                        for (std::size_t k = j + 1; k < mapped.size(); ++k)
                            table.run("triple-descent", [&] {
                                table.fold(
                                    triple_descent_check(inst, mapped[i], mapped[j], mapped[k]));
                            });
            }
        }
    }

    rec.checks = table.ordered();
    return rec;
}

namespace {

// Everything the ordered writer needs from one audited triple.
struct TaskResult {
    std::optional<std::string> line;  // record line; absent when the audit threw
    unsigned long n = 0;
    unsigned long violations = 0;
    unsigned long skipped = 0;
    std::string first_violation;
    std::optional<std::string> error;
};

TaskResult run_task(const std::array<unsigned long, 3>& t, const ScanConfig& cfg) {
    TaskResult res;
    try {
        Triple trip{Int(t[0]), Int(t[1]), Int(t[2])};
        ScanRecord rec = audit_triple(trip, cfg.cap, cfg.suites);
        res.n = rec.solutions.size();
        for (const auto& cs : rec.checks) {
            res.violations += cs.violations;
            res.skipped += cs.skipped;
            if (cs.violations > 0 && res.first_violation.empty()) res.first_violation = cs.check;
        }
        res.line = record_line(rec);
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

}  // namespace

ScanReport scan_range(const ScanConfig& cfg) {
    if (cfg.amax < 2 || cfg.bmax < 2 || cfg.cmax < 2)
        throw std::invalid_argument("scan_range: range bounds must be at least 2");
    if (cfg.cap < 1) throw std::invalid_argument("scan_range: exponent cap must be at least 1");
    if (cfg.out_path.empty()) throw std::invalid_argument("scan_range: output path required");

    std::vector<std::array<unsigned long, 3>> tasks;
    for (unsigned long a = 2; a <= cfg.amax; ++a)
        for (unsigned long b = 2; b <= cfg.bmax; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (unsigned long c = 2; c <= cfg.cmax; ++c) {
                if (std::gcd(a, c) != 1 || std::gcd(b, c) != 1) continue;
                tasks.push_back({a, b, c});
            }
        }

    std::ofstream out(cfg.out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("scan_range: cannot open output file: " + cfg.out_path);
    out << header_line(cfg) << '\n';

    ScanReport report;
    auto consume = [&](const std::array<unsigned long, 3>& t, const TaskResult& res) {
        if (res.line) {
            out << *res.line << '\n';
            ++report.records;
            report.max_n = std::max(report.max_n, res.n);
            if (res.n >= 2) report.multi.push_back({t[0], t[1], t[2], res.n});
            if (res.n >= 3) report.witnesses.push_back({t[0], t[1], t[2], res.n});
            if (t[0] < t[1] && t[1] <= cfg.amax && t[0] <= cfg.bmax) ++report.symmetric_pairs;
            report.skipped_checks += res.skipped;
        }
        if (res.error) {
            out << failure_line(t[0], t[1], t[2], *res.error) << '\n';
            report.failure = ScanFailure{t[0], t[1], t[2], *res.error};
            return false;
        }
        if (res.violations > 0) {
            report.violations += res.violations;
            std::string msg = "check violation: " + res.first_violation;
            out << failure_line(t[0], t[1], t[2], msg) << '\n';
            report.failure = ScanFailure{t[0], t[1], t[2], msg};
            return false;
        }
        return true;
    };

    if (cfg.jobs <= 1 || tasks.size() <= 1) {
        for (const auto& t : tasks)
            if (!consume(t, run_task(t, cfg))) break;
    } else {
        struct Pool {
            std::mutex mu;
            std::condition_variable cv;
            std::map<std::size_t, TaskResult> ready;
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> stop_after{std::numeric_limits<std::size_t>::max()};
        } pool;

        auto worker = [&] {
            for (;;) {
                std::size_t i = pool.next.fetch_add(1);
                if (i >= tasks.size() || i > pool.stop_after.load()) break;
                TaskResult r = run_task(tasks[i], cfg);
                if (r.error || r.violations > 0) {
                    std::size_t cur = pool.stop_after.load();
                    while (i < cur && !pool.stop_after.compare_exchange_weak(cur, i)) {
                    }
                }
                {
                    std::lock_guard<std::mutex> lk(pool.mu);
                    pool.ready.emplace(i, std::move(r));
                }
                pool.cv.notify_all();
            }
        };

        std::vector<std::thread> threads;
        std::size_t width = std::min<std::size_t>(cfg.jobs, tasks.size());
        threads.reserve(width);
        for (std::size_t w = 0; w < width; ++w) threads.emplace_back(worker);

        for (std::size_t w = 0; w < tasks.size(); ++w) {
            TaskResult res;
            {
                std::unique_lock<std::mutex> lk(pool.mu);
                pool.cv.wait(lk, [&] { return pool.ready.count(w) != 0; });
                res = std::move(pool.ready.at(w));
                pool.ready.erase(w);
            }
            if (!consume(tasks[w], res)) break;
        }
        pool.stop_after.store(0);
        for (auto& th : threads) th.join();
    }

    out.flush();
    if (!out) throw std::runtime_error("scan_range: write failure on " + cfg.out_path);
    return report;
}

namespace {

std::optional<Int> parse_int(const Json& j) {
    if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<unsigned long> parse_uint(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) return std::nullopt;
    return j[key].get<unsigned long>();
}

}  // namespace

VerifyResult verify_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("verify_report: cannot open " + path);

    VerifyResult vr;
    std::size_t lineno = 0;
    auto issue = [&](std::string m) { vr.issues.push_back({lineno, std::move(m)}); };

    bool failure_seen = false;
    unsigned long header_cap = 0;
    bool header_ok = false;
    std::optional<std::tuple<Int, Int, Int>> prev_triple;

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            issue("unparseable line");
            continue;
        }
        std::string type = j.contains("type") && j["type"].is_string()
                               ? j["type"].get<std::string>()
                               : std::string();

        if (lineno == 1) {
            if (type != "header") {
                issue("first line is not a scan header");
                continue;
            }
            if (j.value("log_base", std::string()) != "natural") issue("unexpected log base");
            for (const char* key : {"ranges", "suites", "timestamp"})
                if (!j.contains(key)) issue(std::string("header missing key: ") + key);
            if (auto cap = parse_uint(j, "cap"); cap && *cap >= 1) {
                header_cap = *cap;
                header_ok = true;
            } else {
                issue("header cap missing or invalid");
            }
            continue;
        }

        if (type == "header") {
            issue("duplicate header");
            continue;
        }
        if (type == "failure") {
            failure_seen = true;
            issue("scan aborted: " + j.value("message", std::string("unknown failure")));
            continue;
        }
        if (type != "record") {
            issue("unknown line type");
            continue;
        }
        if (failure_seen) {
            issue("record after failure marker");
            continue;
        }
        ++vr.records;
        try {
        auto a = j.contains("a") ? parse_int(j["a"]) : std::nullopt;
        auto b = j.contains("b") ? parse_int(j["b"]) : std::nullopt;
        auto c = j.contains("c") ? parse_int(j["c"]) : std::nullopt;
        if (!a || !b || !c) {
            issue("record missing a/b/c");
            continue;
        }
        std::optional<Triple> t;
        try {
            t.emplace(*a, *b, *c);
        } catch (const std::invalid_argument& e) {
            issue(std::string("invalid triple: ") + e.what());
            continue;
        }

        if (prev_triple && std::tie(*a, *b, *c) <= *prev_triple) issue("records out of order");
        prev_triple = std::tuple<Int, Int, Int>(*a, *b, *c);

        auto cap = parse_uint(j, "cap");
        if (!cap || *cap < 1) {
            issue("record cap missing or invalid");
            continue;
        }
        if (header_ok && *cap != header_cap) issue("record cap differs from header cap");

        if (!j.contains("solutions") || !j["solutions"].is_array()) {
            issue("record missing solutions");
            continue;
        }
        std::vector<Solution> sols;
        bool shape_ok = true;
        for (const auto& e : j["solutions"]) {
            if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() ||
                !e[1].is_number_unsigned() || !e[2].is_number_unsigned()) {
                shape_ok = false;
                break;
            }
            sols.push_back({e[0].get<unsigned long>(), e[1].get<unsigned long>(),
                            e[2].get<unsigned long>()});
        }
        if (!shape_ok) {
            issue("malformed solution entry");
            continue;
        }

        for (const auto& s : sols) {
            if (s.x < 1 || s.y < 1 || s.z < 1)
                issue("solution has a zero exponent");
            else if (!satisfies(*t, s))
                issue("solution fails its equation");
            if (std::max({s.x, s.y, s.z}) > *cap) issue("solution exceeds the exponent cap");
        }
        for (std::size_t i = 1; i < sols.size(); ++i)
            if (!(sols[i - 1] < sols[i])) issue("solutions not in ascending order");

        if (auto nn = parse_uint(j, "n"); !nn || *nn != sols.size())
            issue("solution count does not match the list");

        bool expected_complete = gelfond_bound(*t) <= Int(*cap);
        if (!j.contains("complete") || !j["complete"].is_boolean() ||
            j["complete"].get<bool>() != expected_complete)
            issue("completeness flag mismatch");

        Json fl = j.value("flags", Json());
        bool witness = sols.size() >= 3;
        bool flags_ok =
            fl.is_object() && fl.contains("family_member") && fl.contains("odd_c_bound_ok") &&
            fl.contains("three_solution_witness") &&
            fl["family_member"] == Json(is_family_member(*t)) &&
            fl["odd_c_bound_ok"] == Json(t->c() % 2 == 0 || sols.size() <= 2) &&
            fl["three_solution_witness"] == Json(witness);
        if (!flags_ok) issue("flag mismatch");
        if (witness && (t->c() % 2 != 0 || t->max_elem() >= two_solution_threshold()))
            issue("three-solution witness contradicts the two-solution theorem");

        if (!j.contains("checks") || !j["checks"].is_array()) {
            issue("record missing checks");
            continue;
        }
        for (const auto& cs : j["checks"]) {
            auto runs = parse_uint(cs, "runs");
            auto applicable = parse_uint(cs, "applicable");
            auto violations = parse_uint(cs, "violations");
            auto skipped = parse_uint(cs, "skipped");
            std::string id = cs.value("check", std::string());
            if (id.empty() || !runs || !applicable || !violations || !skipped) {
                issue("malformed check summary");
                continue;
            }
            if (*applicable > *runs || *violations > *runs || *skipped > *runs)
                issue("inconsistent check summary: " + id);
            if (*violations > 0) issue("check violations recorded: " + id);
        }
        } catch (const Json::exception& e) {
            issue(std::string("malformed record: ") + e.what());
        }
    }

    if (lineno == 0) {
        lineno = 1;
        issue("empty file: missing header");
    }
    vr.ok = vr.issues.empty();
    return vr;
}

}  // namespace expdio
