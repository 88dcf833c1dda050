#pragma once

#include <optional>
#include <vector>

#include "expdio/equation.hpp"
#include "expdio/numeric.hpp"

namespace expdio {

// Least exponent data for r modulo s: the smallest n1 >= 1 with
// r^n1 = +-1 (mod s), together with the realized sign delta1 and the
// exact cofactor f defined by r^n1 = s*f + delta1.  Such n1 always
// exists when gcd(r, s) = 1; s <= 2 is rejected because +1 and -1
// coincide there and the sign is meaningless.
struct OrderRecord {
    Int r;
    Int s;
    Int n1;
    int delta1;  // +1 or -1
    Int f;       // (r^n1 - delta1) / s, always >= 1
};

// Compute the OrderRecord for r mod s.  Requires r >= 2, s >= 3,
// gcd(r, s) = 1.  Throws budget_error if the exact cofactor f would
// need an exponent too large to materialize.
OrderRecord least_pm1(const Int& r, const Int& s, const FactorBudget& budget = {});

// A query against the order-lifting rule: given the OrderRecord for
// r mod s and a multiplier t > 1 whose primes all divide s (with s
// not congruent to 2 mod 4), any n' >= 1 with r^{n'} = +-1 (mod s*t)
// must satisfy n1 | n' and (t / gcd(t, f)) | (n' / n1).
struct LiftQuery {
    OrderRecord base;
    Int t;
    Int n_prime;
    // Sign of r^{n'} mod s*t when that residue is +-1; empty when the
    // residue is something else (the lifting rule then says nothing).
    std::optional<int> delta_prime;
};

// Build a LiftQuery, validating the structural hypotheses: t > 1,
// every prime of t divides s, s is odd or divisible by 4, n' >= 1.
// The sign delta_prime is discovered, not supplied; its absence is
// recorded, not an error.  Throws std::invalid_argument when a
// structural hypothesis fails.
LiftQuery make_lift_query(const Int& r, const Int& s, const Int& t, const Int& n_prime,
                          const FactorBudget& budget = {});

// Independent facts about a query.  The lifting rule promises:
// congruence_holds implies base_divides and quotient_divides.
struct LiftFacts {
    bool congruence_holds;  // r^{n'} = +-1 (mod s*t)
    bool base_divides;      // n1 | n'
    Int quotient;           // n' / n1 when base_divides, else 0
    Int required_divisor;   // t / gcd(t, f)
    bool quotient_divides;  // base_divides and required_divisor | quotient
};

LiftFacts verify_order_lift(const LiftQuery& q);

// Congruence linking two solutions of A^X + lambda * B^Y = C^Z for the
// same transformed instance: with Z = min(Z1, Z2),
//   A^{|X1*Y2 - X2*Y1|} == (-lambda)^{Y1+Y2}  (mod C^Z).
// The congruence holds for every genuine pair of solutions and is the
// asserted fact.  The determinant X1*Y2 - X2*Y1 is reported alongside
// but can genuinely vanish: conjugate-factorization pairs such as
// 5^1 - 3^1 = 2^1 and 5^2 - 3^2 = 2^4 (both A^X - B^Y differences of
// powers of C = 2) have proportional (X, Y), which requires A^X - B^Y
// and A^X + B^Y to both be powers of C and so can only happen for
// even C at small scale.  Identical solutions are rejected.
struct PairCongruence {
    Int determinant;  // X1*Y2 - X2*Y1 (after sorting by Z)
    Int modulus;      // C^min(Z1,Z2)
    Int expected;     // 1 or modulus - 1
    Int actual;       // A^|determinant| mod modulus
    bool determinant_nonzero;
    bool congruence_holds;
};

PairCongruence pair_congruence_check(const TransformedInstance& inst,
                                     const TransformedSolution& s1,
                                     const TransformedSolution& s2);

// Divisibility forced by the order-lifting rule on two solutions of
// the same transformed instance with Z1 < Z2, where Z1 must be minimal
// over all known solutions (the full set is supplied so minimality is
// checkable): when C is odd or 4 | C^Z1, and the pair's determinant
// X1*Y2 - X2*Y1 is nonzero (zero-determinant pairs exist, see
// PairCongruence, and carry no order information),
//   gcd(C^{Z2-Z1}, f) | Y2
// with f from the OrderRecord of A mod C^Z1.  The gcd is assembled
// prime-by-prime from valuations of f, so C^{Z2-Z1} is never
// materialized.  The order data is computed whenever C^Z1 >= 3, even
// if the evenness condition fails, so reports can show it.
struct DescentDivisibility {
    bool condition_met;         // C odd, or 4 | C^Z1
    bool determinant_nonzero;   // X1*Y2 - X2*Y1 != 0
    std::optional<OrderRecord> order;
    std::optional<Int> gcd_with_f;  // gcd(C^{Z2-Z1}, f), when order present
    bool divides_y2;                // gcd_with_f | Y2, when present
};

DescentDivisibility descent_divisibility_check(const TransformedInstance& inst,
                                               const TransformedSolution& lo,
                                               const TransformedSolution& hi,
                                               const std::vector<TransformedSolution>& all,
                                               const FactorBudget& budget = {});

}  // namespace expdio
