#include "expdio/lemma_verify.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "expdio/errors.hpp"

namespace expdio {

namespace {

template <typename Probe>
bool escalate_decide(const CertConfig& cfg, Probe&& probe, const char* what) {
    for (mpfr_prec_t prec = cfg.initial_prec;; prec *= 2) {
        if (auto r = probe(prec)) return *r;
        if (prec >= cfg.max_prec)
            throw budget_error(std::string(what) + ": certification budget exhausted");
    }
}

// 0 < alpha - frac < 2 / (K ln w), with alpha enclosed by A and K, w exact.
std::optional<bool> approx_linear_at(const Interval& A, const Rat& frac, const Int& K,
                                     const Int& w, mpfr_prec_t prec) {
    Rat dlo = A.lo - frac, dhi = A.hi - frac;
    if (dhi <= 0) return false;
    if (dlo > 0) {
        Interval L = log_interval(w, prec);
        if (Rat(dhi * K) * L.hi < 2) return true;
        if (Rat(dlo * K) * L.lo >= 2) return false;
    }
    return std::nullopt;
}

// 0 < alpha - frac < 2 / (K c^(z/2) ln w), the square root eliminated by
// squaring: (d K ln w)^2 c^z < 4 with every factor positive.
std::optional<bool> approx_halfpow_at(const Interval& A, const Rat& frac, const Int& K,
                                      const Int& cz, const Int& w, mpfr_prec_t prec) {
    Rat dlo = A.lo - frac, dhi = A.hi - frac;
    if (dhi <= 0) return false;
    if (dlo > 0) {
        Interval L = log_interval(w, prec);
        Rat hi = Rat(dhi * K) * L.hi;
        if (Rat(hi * hi) * cz < 4) return true;
        Rat lo = Rat(dlo * K) * L.lo;
        if (Rat(lo * lo) * cz >= 4) return false;
    }
    return std::nullopt;
}

void require_log_target(const ContinuedFraction& cf, const Int& num_base, const Int& den_base,
                        const char* what) {
    if (cf.target().is_rational())
        throw std::invalid_argument(std::string(what) +
                                    ": continued fraction must expand a log ratio");
    const auto& lr = cf.target().as_log_ratio();
    if (lr.c != num_base || lr.b != den_base)
        throw std::invalid_argument(std::string(what) +
                                    ": continued fraction expands the wrong ratio");
}

Rat reduced(unsigned long num, unsigned long den) {
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

}  // namespace

bool CheckReport::asserted_hold() const {
    for (const auto& c : conclusions)
        if (c.asserted && !c.holds) return false;
    return true;
}

CheckReport gap_sum_check(const Int& u, const Int& v, const Int& k, ExponentPair p1,
                          ExponentPair p2) {
    if (u < 2 || v < 2) throw std::invalid_argument("gap check: bases must be at least 2");
    if (gcd(u, v) != 1) throw std::invalid_argument("gap check: bases must be coprime");
    auto solves = [&](const ExponentPair& p) {
        return p.l >= 1 && p.m >= 1 && pow_ui(u, p.l) + pow_ui(v, p.m) == k;
    };
    if (!solves(p1) || !solves(p2))
        throw std::invalid_argument("gap check: pairs must solve u^l + v^m = k");
    if (p1 == p2) throw std::invalid_argument("gap check: pairs must be distinct");

    CheckReport rep;
    rep.check = "gap-sum";
    rep.swapped = p2.l < p1.l;
    if (rep.swapped) std::swap(p1, p2);
    rep.preconditions = {{"pairs solve u^l + v^m = k", true},
                         {"pairs distinct", true},
                         {"l1 < l2 after sorting", p1.l < p2.l}};
    rep.applicable = p1.l < p2.l;

    bool m_descends = p1.m > p2.m;
    bool size_ok = false;
    bool witness_ok = false;
    if (m_descends) {
        Int up = pow_ui(u, p2.l - p1.l);
        Int vp = pow_ui(v, p1.m - p2.m);
        Int mx = std::max(up, vp);
        size_ok = mx * mx > k;
        Int num = up - 1;
        Int vm2 = pow_ui(v, p2.m);
        if (num % vm2 == 0) {
            Int t = num / vm2;
            if (t >= 1 && vp == pow_ui(u, p1.l) * t + 1)
                rep.witness = GapWitness{GapWitness::Kind::sum, t, up, vp};
        }
        witness_ok = rep.witness.has_value();
    }
    rep.conclusions = {
        {"m1 > m2", m_descends, rep.applicable},
        {"max(u^(l2-l1), v^(m1-m2))^2 > k", size_ok, rep.applicable},
        {"witness t exists", witness_ok, rep.applicable},
    };
    return rep;
}

CheckReport gap_diff_check(const Int& u, const Int& v, const Int& k, ExponentPair p1,
                           ExponentPair p2) {
    if (u < 2 || v < 2) throw std::invalid_argument("gap check: bases must be at least 2");
    if (gcd(u, v) != 1) throw std::invalid_argument("gap check: bases must be coprime");
    auto solves = [&](const ExponentPair& p) {
        return p.l >= 1 && p.m >= 1 && pow_ui(u, p.l) - pow_ui(v, p.m) == k;
    };
    if (!solves(p1) || !solves(p2))
        throw std::invalid_argument("gap check: pairs must solve u^l - v^m = k");
    if (p1 == p2) throw std::invalid_argument("gap check: pairs must be distinct");

    CheckReport rep;
    rep.check = "gap-diff";
    rep.swapped = p2.l < p1.l;
    if (rep.swapped) std::swap(p1, p2);
    rep.preconditions = {{"pairs solve u^l - v^m = k", true},
                         {"pairs distinct", true},
                         {"l1 < l2 after sorting", p1.l < p2.l}};
    rep.applicable = p1.l < p2.l;

    bool m_ascends = p1.m < p2.m;
    bool witness_ok = false;
    bool chain_ok = false;
    bool size_ok = false;
    if (m_ascends) {
        Int up = pow_ui(u, p2.l - p1.l);
        Int vp = pow_ui(v, p2.m - p1.m);
        Int vm1 = pow_ui(v, p1.m);
        Int num = up - 1;
        if (num % vm1 == 0) {
            Int t = num / vm1;
            if (t >= 1 && vp == pow_ui(u, p1.l) * t + 1)
                rep.witness = GapWitness{GapWitness::Kind::diff, t, up, vp};
        }
        witness_ok = rep.witness.has_value();
        chain_ok = vp > up && up > vm1;
        size_ok = vp > k;
    }
    rep.conclusions = {
        {"m1 < m2", m_ascends, rep.applicable},
        {"witness t exists", witness_ok, rep.applicable},
        {"v^(m2-m1) > u^(l2-l1) > v^m1", chain_ok, rep.applicable},
        {"v^(m2-m1) > k", size_ok, rep.applicable},
    };
    return rep;
}

CheckReport approx_yz_check(const Triple& t, const Solution& s, ContinuedFraction& cf) {
    if (!satisfies(t, s))
        throw std::invalid_argument("approx check: solution must solve the triple");
    require_log_target(cf, t.c(), t.b(), "approx check");

    CheckReport rep;
    rep.check = "approx-yz";
    Int cz = pow_ui(t.c(), s.z);
    bool ordering = pow_ui(t.a(), 2 * s.x) < cz;
    rep.preconditions = {{"a^(2x) < c^z", ordering},
                         {"b >= 3", t.b() >= 3},
                         {"c >= 16", t.c() >= 16}};
    rep.applicable = ordering && t.b() >= 3 && t.c() >= 16;

    bool red = gcd(Int(s.y), Int(s.z)) == 1;
    bool member = find_convergent(cf, Int(s.y), Int(s.z)).has_value();
    Rat frac = reduced(s.y, s.z);
    bool ineq = escalate_decide(
        cf.config(),
        [&](mpfr_prec_t prec) {
            return approx_halfpow_at(cf.target().enclosure(prec), frac, Int(s.z), cz, t.b(), prec);
        },
        "approx-yz");
    rep.conclusions = {
        {"gcd(y, z) = 1", red, rep.applicable},
        {"y/z is a convergent of log(c)/log(b)", member, rep.applicable},
        {"0 < log(c)/log(b) - y/z < 2/(z c^(z/2) ln b)", ineq, rep.applicable},
    };
    return rep;
}

CheckReport approx_xz_check(const Triple& t, const Solution& s, ContinuedFraction& cf) {
    if (!satisfies(t, s))
        throw std::invalid_argument("approx check: solution must solve the triple");
    require_log_target(cf, t.c(), t.a(), "approx check");

    CheckReport rep;
    rep.check = "approx-xz";
    Int cz = pow_ui(t.c(), s.z);
    bool ordering = pow_ui(t.b(), 2 * s.y) < cz;
    bool a_big = t.a() >= two_solution_threshold();
    rep.preconditions = {{"b^(2y) < c^z", ordering}, {"a >= 10^62", a_big}};
    rep.applicable = ordering && a_big;

    bool red = gcd(Int(s.x), Int(s.z)) == 1;
    bool member = find_convergent(cf, Int(s.x), Int(s.z)).has_value();
    Rat frac = reduced(s.x, s.z);
    bool ineq = escalate_decide(
        cf.config(),
        [&](mpfr_prec_t prec) {
            return approx_halfpow_at(cf.target().enclosure(prec), frac, Int(s.z), cz, t.a(), prec);
        },
        "approx-xz");
    rep.conclusions = {
        {"gcd(x, z) = 1", red, rep.applicable},
        {"x/z is a convergent of log(c)/log(a)", member, rep.applicable},
        {"0 < log(c)/log(a) - x/z < 2/(z c^(z/2) ln a)", ineq, rep.applicable},
    };
    return rep;
}

CheckReport pair_approx_yz_check(const Triple& t, const Solution& s1, const Solution& s2,
                                 ContinuedFraction& cf) {
    if (!satisfies(t, s1) || !satisfies(t, s2))
        throw std::invalid_argument("pair approx check: solutions must solve the triple");
    if (s1 == s2) throw std::invalid_argument("pair approx check: solutions must be distinct");
    require_log_target(cf, t.c(), t.b(), "pair approx check");

    CheckReport rep;
    rep.check = "pair-approx-yz";
    const Solution* big = &s1;    // plays (x, y, z)
    const Solution* primed = &s2;  // plays (x', y', z')
    auto oriented = [](const Solution* u, const Solution* p) {
        return u->x > p->x && u->z < p->z;
    };
    if (!oriented(big, primed) && oriented(primed, big)) {
        std::swap(big, primed);
        rep.swapped = true;
    }
    bool ordering = oriented(big, primed);
    bool c_is_max = t.max_elem() == t.c();
    bool c_big = t.c() >= two_solution_threshold();
    rep.preconditions = {{"x > x' and z < z'", ordering},
                         {"c = max(a, b, c)", c_is_max},
                         {"c >= 10^62", c_big}};
    rep.applicable = ordering && c_is_max && c_big;

    Rat frac = reduced(primed->y, primed->z);
    Int K = Int(primed->z) * t.a() * t.c();
    bool ineq = escalate_decide(
        cf.config(),
        [&](mpfr_prec_t prec) {
            return approx_linear_at(cf.target().enclosure(prec), frac, K, t.b(), prec);
        },
        "pair-approx-yz");
    bool member = find_convergent(cf, Int(primed->y), Int(primed->z)).has_value();
    rep.conclusions = {
        {"0 < log(c)/log(b) - y'/z' < 2/(z' a c ln b)", ineq, ordering},
        {"reduced y'/z' is a convergent of log(c)/log(b)", member, rep.applicable},
    };
    return rep;
}

CheckReport pair_approx_xz_check(const Triple& t, const Solution& s1, const Solution& s2,
                                 ContinuedFraction& cf) {
    if (!satisfies(t, s1) || !satisfies(t, s2))
        throw std::invalid_argument("pair approx check: solutions must solve the triple");
    if (s1 == s2) throw std::invalid_argument("pair approx check: solutions must be distinct");
    require_log_target(cf, t.c(), t.a(), "pair approx check");

    CheckReport rep;
    rep.check = "pair-approx-xz";
    const Solution* big = &s1;
    const Solution* primed = &s2;
    auto oriented = [](const Solution* u, const Solution* p) {
        return u->y > p->y && u->z <= p->z;
    };
    if (!oriented(big, primed) && oriented(primed, big)) {
        std::swap(big, primed);
        rep.swapped = true;
    }
    bool ordering = oriented(big, primed);
    bool a_is_max = t.max_elem() == t.a();
    bool a_big = t.a() >= two_solution_threshold();
    rep.preconditions = {{"y > y' and z <= z'", ordering},
                         {"a = max(a, b, c)", a_is_max},
                         {"a >= 10^62", a_big}};
    rep.applicable = ordering && a_is_max && a_big;

    Int ax = pow_ui(t.a(), big->x);
    bool x_ascends = big->x < primed->x;
    bool congruence = false;
    if (ordering) {
        Int lhs = mod_pow(t.b(), Int(big->y - primed->y), ax) *
                  mod_pow(t.c(), Int(primed->z - big->z), ax) % ax;
        congruence = lhs == 1;
    }
    Rat frac = reduced(primed->x, primed->z);
    Int strong_K = Int(primed->z) * ax;
    Int weak_K = Int(primed->z) * t.a();
    bool strong_ineq = escalate_decide(
        cf.config(),
        [&](mpfr_prec_t prec) {
            return approx_linear_at(cf.target().enclosure(prec), frac, strong_K, t.a(), prec);
        },
        "pair-approx-xz");
    bool weak_ineq = escalate_decide(
        cf.config(),
        [&](mpfr_prec_t prec) {
            return approx_linear_at(cf.target().enclosure(prec), frac, weak_K, t.a(), prec);
        },
        "pair-approx-xz");
    bool member = find_convergent(cf, Int(primed->x), Int(primed->z)).has_value();
    rep.conclusions = {
        {"x < x'", x_ascends, ordering},
        {"b^(y-y') c^(z'-z) == 1 (mod a^x)", congruence, ordering},
        {"0 < log(c)/log(a) - x'/z' < 2/(z' a^x ln a)", strong_ineq, ordering},
        {"0 < log(c)/log(a) - x'/z' < 2/(z' a ln a)", weak_ineq, rep.applicable},
        {"reduced x'/z' is a convergent of log(c)/log(a)", member, rep.applicable},
    };
    return rep;
}

CheckReport triple_descent_check(const TransformedInstance& inst, const TransformedSolution& s1,
                                 const TransformedSolution& s2, const TransformedSolution& s3) {
    for (const auto* s : {&s1, &s2, &s3})
        if (!satisfies(inst, *s))
            throw std::invalid_argument("triple descent: inputs must solve the instance");
    if (s1 == s2 || s1 == s3 || s2 == s3)
        throw std::invalid_argument("triple descent: solutions must be pairwise distinct");

    std::array<TransformedSolution, 3> v{s1, s2, s3};
    auto key = [](const TransformedSolution& s) { return std::tie(s.Z, s.Y, s.X); };
    std::array<TransformedSolution, 3> sorted = v;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& l, const auto& r) { return key(l) < key(r); });

    CheckReport rep;
    rep.check = "triple-descent";
    rep.swapped = !(sorted[0] == v[0] && sorted[1] == v[1] && sorted[2] == v[2]);

    bool ordering = sorted[0].Z < sorted[1].Z;  // Z2 <= Z3 is true by sorting
    bool condition = inst.C % 2 != 0 || inst.C % 4 == 0 || sorted[0].Z >= 2;
    unsigned long dz = sorted[1].Z - sorted[0].Z;
    const Int& mx = inst.origin.max_elem();
    bool size_ok = ordering && pow_ui(inst.C, 2 * dz) > mx;
    // Zero determinants occur for conjugate-factorization pairs (see the
    // pair congruence check); the descent argument needs both to be nonzero.
    Int det12 = Int(sorted[0].X) * sorted[1].Y - Int(sorted[1].X) * sorted[0].Y;
    Int det23 = Int(sorted[1].X) * sorted[2].Y - Int(sorted[2].X) * sorted[1].Y;
    bool dets = det12 != 0 && det23 != 0;
    rep.preconditions = {{"Z1 < Z2 <= Z3", ordering},
                         {"C odd or 4 | C^Z1", condition},
                         {"X1 Y2 - X2 Y1 != 0 and X2 Y3 - X3 Y2 != 0", dets},
                         {"C^(2(Z2-Z1)) > max(a, b, c)", size_ok}};
    rep.applicable = ordering && condition && dets && size_ok;

    bool intermediate = Int(sorted[1].Y) * abs(det23) >= pow_ui(inst.C, dz);
    bool below = mx < two_solution_threshold();
    rep.conclusions = {
        {"Y2 |X2 Y3 - X3 Y2| >= C^(Z2-Z1)", intermediate, ordering && condition && dets},
        {"max(a, b, c) < 10^62", below, rep.applicable},
    };
    return rep;
}

Verdict size_threshold_check(const Int& t, const CertConfig& cfg) {
    if (t < 2) throw std::invalid_argument("size threshold: value must be at least 2");
    static const Int K = pow_ui(Int(6500), 6);
    for (mpfr_prec_t prec = cfg.initial_prec;; prec *= 2) {
        Interval L = log_interval(t, prec);
        Rat hi = L.hi * L.hi;  // build (ln t)^18 by squaring: 18 = 16 + 2
        Rat lo = L.lo * L.lo;
        Rat hi2 = hi, lo2 = lo;
        for (int i = 0; i < 3; ++i) {
            hi = hi * hi;
            lo = lo * lo;
        }
        hi *= hi2;
        lo *= lo2;
        if (Rat(t) > Rat(K) * hi) return Verdict::yes;
        if (Rat(t) <= Rat(K) * lo) return Verdict::no;
        if (prec >= cfg.max_prec) return Verdict::indeterminate;
    }
}

const Int& two_solution_threshold() {
    static const Int v = pow_ui(Int(10), 62);
    return v;
}

}  // namespace expdio
