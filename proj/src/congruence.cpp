#include "expdio/congruence.hpp"

#include <algorithm>
#include <stdexcept>

#include "expdio/errors.hpp"

namespace expdio {

namespace {

// Hard ceiling on the bit size of an exactly materialized power, so a
// pathological modulus fails loudly instead of exhausting memory.
constexpr unsigned long kMaxPowerBits = 1ul << 26;  // 8 MiB

Int checked_pow(const Int& base, const Int& exp, const char* what) {
    if (!exp.fits_ulong_p())
        throw budget_error(std::string(what) + ": exponent too large to materialize");
    unsigned long e = exp.get_ui();
    if (e * mpz_sizeinbase(base.get_mpz_t(), 2) > kMaxPowerBits)
        throw budget_error(std::string(what) + ": power too large to materialize");
    return pow_ui(base, e);
}

}  // namespace

OrderRecord least_pm1(const Int& r, const Int& s, const FactorBudget& budget) {
    if (r < 2) throw std::invalid_argument("least_pm1: base must be at least 2");
    if (s < 3) throw std::invalid_argument("least_pm1: modulus must be at least 3");
    if (gcd(r, s) != 1) throw std::invalid_argument("least_pm1: base and modulus must be coprime");

    Int d = multiplicative_order(r, s, budget);
    Int n1 = d;
    int delta1 = 1;
    if (d % 2 == 0) {
        Int half = d / 2;
        if (mod_pow(r, half, s) == s - 1) {
            n1 = half;
            delta1 = -1;
        }
    }
    Int want = delta1 == 1 ? Int(1) : Int(s - 1);
    if (mod_pow(r, n1, s) != want)
        throw invariant_error("least_pm1: computed exponent fails its own congruence");

    Int power = checked_pow(r, n1, "least_pm1");
    Int f = (power - delta1) / s;
    if (f < 1 || s * f + delta1 != power)
        throw invariant_error("least_pm1: cofactor identity failed");
    return OrderRecord{r, s, n1, delta1, f};
}

LiftQuery make_lift_query(const Int& r, const Int& s, const Int& t, const Int& n_prime,
                          const FactorBudget& budget) {
    if (t < 2) throw std::invalid_argument("lift query: t must exceed 1");
    if (n_prime < 1) throw std::invalid_argument("lift query: exponent must be positive");
    if (s % 4 == 2) throw std::invalid_argument("lift query: modulus congruent to 2 mod 4");

    Int rest = t;
    while (rest > 1) {
        Int g = gcd(rest, s);
        if (g == 1)
            throw std::invalid_argument("lift query: t has a prime divisor outside the modulus");
        rest /= g;
    }

    LiftQuery q;
    q.base = least_pm1(r, s, budget);
    q.t = t;
    q.n_prime = n_prime;
    Int st = s * t;
    Int residue = mod_pow(r, n_prime, st);
    if (residue == 1)
        q.delta_prime = 1;
    else if (residue == st - 1)
        q.delta_prime = -1;
    return q;
}

LiftFacts verify_order_lift(const LiftQuery& q) {
    LiftFacts facts;
    facts.congruence_holds = q.delta_prime.has_value();
    facts.base_divides = q.n_prime % q.base.n1 == 0;
    facts.quotient = facts.base_divides ? Int(q.n_prime / q.base.n1) : Int(0);
    facts.required_divisor = q.t / gcd(q.t, q.base.f);
    facts.quotient_divides = facts.base_divides && facts.quotient % facts.required_divisor == 0;
    return facts;
}

PairCongruence pair_congruence_check(const TransformedInstance& inst,
                                     const TransformedSolution& s1,
                                     const TransformedSolution& s2) {
    if (!satisfies(inst, s1) || !satisfies(inst, s2))
        throw std::invalid_argument("pair congruence: inputs must solve the instance");
    if (s1.X == s2.X && s1.Y == s2.Y && s1.Z == s2.Z)
        throw std::invalid_argument("pair congruence: solutions must be distinct");

    const TransformedSolution* lo = &s1;
    const TransformedSolution* hi = &s2;
    if (hi->Z < lo->Z) std::swap(lo, hi);

    PairCongruence out;
    out.determinant = Int(lo->X) * hi->Y - Int(hi->X) * lo->Y;
    out.determinant_nonzero = out.determinant != 0;
    out.modulus = checked_pow(inst.C, lo->Z, "pair congruence");
    bool odd_parity = (lo->Y + hi->Y) % 2 != 0;
    out.expected = (inst.lambda == 1 && odd_parity) ? Int(out.modulus - 1) : Int(1);
    out.actual = mod_pow(inst.A, abs(out.determinant), out.modulus);
    out.congruence_holds = out.actual == out.expected;
    return out;
}

DescentDivisibility descent_divisibility_check(const TransformedInstance& inst,
                                               const TransformedSolution& lo,
                                               const TransformedSolution& hi,
                                               const std::vector<TransformedSolution>& all,
                                               const FactorBudget& budget) {
    if (!satisfies(inst, lo) || !satisfies(inst, hi))
        throw std::invalid_argument("descent divisibility: inputs must solve the instance");
    if (lo.Z >= hi.Z)
        throw std::invalid_argument("descent divisibility: first solution must have smaller Z");
    for (const auto& s : all) {
        if (!satisfies(inst, s))
            throw std::invalid_argument("descent divisibility: solution set contains a non-solution");
        if (s.Z < lo.Z)
            throw std::invalid_argument("descent divisibility: first solution must have minimal Z");
    }

    DescentDivisibility out;
    out.condition_met = inst.C % 2 != 0 || inst.C % 4 == 0 || lo.Z >= 2;
    out.determinant_nonzero = Int(lo.X) * hi.Y - Int(hi.X) * lo.Y != 0;
    out.divides_y2 = false;

    Int modulus = checked_pow(inst.C, lo.Z, "descent divisibility");
    if (modulus < 3) return out;  // sign of the order record undefined mod 2

    out.order = least_pm1(inst.A, modulus, budget);

    // gcd(C^{Z2-Z1}, f) = prod over primes p of C of p^min(v_p(f), v_p(C)*(Z2-Z1)).
    Int dz = hi.Z - lo.Z;
    Int g = 1;
    for (const auto& [p, e] : factorize(inst.C, budget).factors) {
        Int cap = dz * static_cast<unsigned long>(e);
        Int use = std::min(Int(p_adic_valuation(p, out.order->f)), cap);
        if (!use.fits_ulong_p())
            throw budget_error("descent divisibility: gcd exponent too large");
        g *= pow_ui(p, use.get_ui());
    }
    out.gcd_with_f = g;
    out.divides_y2 = hi.Y % g == 0;
    return out;
}

}  // namespace expdio
