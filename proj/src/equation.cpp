#include "expdio/equation.hpp"

#include "expdio/contfrac.hpp"

namespace expdio {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool coprime(const Int& x, const Int& y) {
    Int g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return g == 1;
}

Int rat_ceil(const Rat& x) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

}  // namespace

Triple::Triple(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    require(a_ >= 2 && b_ >= 2 && c_ >= 2, "Triple: bases must be >= 2");
    require(coprime(a_, b_) && coprime(a_, c_) && coprime(b_, c_),
            "Triple: bases must be pairwise coprime");
}

const Int& Triple::max_elem() const {
    const Int* m = &a_;
    if (b_ > *m) m = &b_;
    if (c_ > *m) m = &c_;
    return *m;
}

bool satisfies(const Triple& t, const Solution& s) {
    if (s.x < 1 || s.y < 1 || s.z < 1) return false;
    return pow_ui(t.a(), s.x) + pow_ui(t.b(), s.y) == pow_ui(t.c(), s.z);
}

Int gelfond_bound(const Triple& t) {
    Interval ln = log_interval(t.max_elem(), 128);
    Rat bound = ln.hi * ln.hi * ln.hi * 6500;
    return rat_ceil(bound);
}

SolutionSet enumerate_solutions(const Triple& t, unsigned long cap) {
    require(cap >= 1, "enumerate_solutions: cap must be >= 1");
    Int gb = gelfond_bound(t);
    unsigned long eff = cap;
    bool complete = false;
    if (gb.fits_ulong_p() && gb.get_ui() <= cap) {
        eff = gb.get_ui();
        complete = true;
    }

    SolutionSet out{t, cap, complete, {}};
    Int reach = pow_ui(t.a(), eff) + pow_ui(t.b(), eff);
    Int cz = 1;
    for (unsigned long z = 1; z <= eff; ++z) {
        cz *= t.c();
        if (cz > reach) break;
        Int by = 1;
        for (unsigned long y = 1; y <= eff; ++y) {
            by *= t.b();
            if (by >= cz) break;
            Int diff = cz - by;
            if (diff < 2) continue;
            auto x = perfect_power_exponent(diff, t.a());
            if (x && *x <= eff) out.solutions.push_back({*x, y, z});
        }
    }
    for (const Solution& s : out.solutions)
        if (!satisfies(t, s)) throw invariant_error("enumerate_solutions: unsound candidate");
    return out;
}

namespace {

std::vector<ExponentPair> solve_two_term(const Int& u, const Int& v, const Int& k,
                                         unsigned long cap, bool diff_kind) {
    require(u >= 2 && v >= 2 && k >= 2, "two-term solve: u, v, k must all be >= 2");
    require(coprime(u, v), "two-term solve: u and v must be coprime");
    require(cap >= 1, "two-term solve: cap must be >= 1");
    std::vector<ExponentPair> out;
    Int ul = 1;
    for (unsigned long l = 1; l <= cap; ++l) {
        ul *= u;
        Int rem;
        if (diff_kind) {
            rem = ul - k;
            if (rem < 2) continue;
        } else {
            if (ul + v > k) break;
            rem = k - ul;
        }
        auto m = perfect_power_exponent(rem, v);
        if (m && *m <= cap) {
            out.push_back({l, *m});
            if (out.size() > 2)
                throw invariant_error(
                    "two-term equation yielded a third solution; the two-solution "
                    "bound is violated");
        }
    }
    return out;
}

}  // namespace

std::vector<ExponentPair> solve_sum(const Int& u, const Int& v, const Int& k,
                                    unsigned long cap) {
    return solve_two_term(u, v, k, cap, false);
}

std::vector<ExponentPair> solve_diff(const Int& u, const Int& v, const Int& k,
                                     unsigned long cap) {
    return solve_two_term(u, v, k, cap, true);
}

bool satisfies(const TransformedInstance& inst, const TransformedSolution& s) {
    if (s.X < 1 || s.Y < 1 || s.Z < 1) return false;
    Int lhs = pow_ui(inst.A, s.X);
    if (inst.lambda == 1)
        lhs += pow_ui(inst.B, s.Y);
    else
        lhs -= pow_ui(inst.B, s.Y);
    return lhs == pow_ui(inst.C, s.Z);
}

std::array<TransformedInstance, 3> p_set(const Triple& t) {
    return {{{t.a(), t.b(), t.c(), +1, t, Role::direct},
             {t.c(), t.a(), t.b(), -1, t, Role::isolate_b},
             {t.c(), t.b(), t.a(), -1, t, Role::isolate_a}}};
}

TransformedSolution map_solution(const TransformedInstance& inst, const Solution& s) {
    TransformedSolution m;
    switch (inst.role) {
        case Role::direct: m = {s.x, s.y, s.z}; break;
        case Role::isolate_b: m = {s.z, s.x, s.y}; break;
        case Role::isolate_a: m = {s.z, s.y, s.x}; break;
    }
    if (!satisfies(inst, m))
        throw std::invalid_argument("map_solution: input does not solve the origin equation");
    return m;
}

FamilyInstance family(unsigned long k) {
    require(k >= 2, "family: k must be >= 2");
    Int b = pow_ui(Int(2), k) - 1;
    Triple t(Int(2), b, b + 2);
    FamilyInstance out{t, {Solution{1, 1, 1}, Solution{k + 2, 2, 2}}};
    for (const Solution& s : out.predicted)
        if (!satisfies(t, s)) throw invariant_error("family: predicted solution fails");
    return out;
}

}  // namespace expdio
