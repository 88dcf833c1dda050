#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expdio/congruence.hpp"
#include "expdio/contfrac.hpp"
#include "expdio/equation.hpp"

namespace expdio {

// A named hypothesis that was tested on the inputs.
struct Precondition {
    std::string name;
    bool holds = false;
};

// A named consequence that was evaluated. `asserted` marks conclusions
// that are theorems under the preconditions that held: a false asserted
// conclusion means the implementation (or the mathematics) is broken,
// and harnesses treat it as a build-stopping violation.  Unasserted
// conclusions are diagnostics computed outside their hypotheses.
struct Conclusion {
    std::string name;
    bool holds = false;
    bool asserted = false;
};

// Witness t for a pair of exponent solutions of u^l +- v^m = k:
//   sum:  u^(l2-l1) = v^m2 * t + 1  and  v^(m1-m2) = u^l1 * t + 1
//   diff: u^(l2-l1) = v^m1 * t + 1  and  v^(m2-m1) = u^l1 * t + 1
struct GapWitness {
    enum class Kind { sum, diff };
    Kind kind;
    Int t;
    Int u_power;  // u^(l2-l1)
    Int v_power;  // v^(m1-m2) for sum, v^(m2-m1) for diff
};

struct CheckReport {
    std::string check;  // stable identifier, e.g. "gap-sum"
    std::vector<Precondition> preconditions;
    std::vector<Conclusion> conclusions;
    bool applicable = false;  // all preconditions hold
    bool swapped = false;     // inputs reordered into canonical orientation
    std::optional<GapWitness> witness;

    bool asserted_hold() const;
};

// Structural constraints on two distinct solutions of u^l + v^m = k,
// auto-sorted so l1 < l2: then m1 > m2, max{u^(l2-l1), v^(m1-m2)}^2 > k,
// and the witness t exists.  All arithmetic exact.
CheckReport gap_sum_check(const Int& u, const Int& v, const Int& k, ExponentPair p1,
                          ExponentPair p2);

// Constraints on two distinct solutions of u^l - v^m = k, auto-sorted so
// l1 < l2: then m1 < m2, the witness t exists, v^(m2-m1) > u^(l2-l1) > v^m1,
// and v^(m2-m1) > k.
CheckReport gap_diff_check(const Int& u, const Int& v, const Int& k, ExponentPair p1,
                           ExponentPair p2);

// Rational-approximation constraints a single solution places on
// log(c)/log(b): under a^2x < c^z, b >= 3, c >= 16, the fraction y/z is
// reduced, is a convergent, and 0 < log(c)/log(b) - y/z < 2/(z c^(z/2) ln b).
// cf must expand log(c)/log(b); conclusions are evaluated even when not
// applicable, but asserted only when applicable.
CheckReport approx_yz_check(const Triple& t, const Solution& s, ContinuedFraction& cf);

// Mirror image for x/z against log(c)/log(a): under b^2y < c^z and
// a >= 10^62, x/z is reduced, a convergent, and
// 0 < log(c)/log(a) - x/z < 2/(z c^(z/2) ln a).  The size hypothesis is
// out of reach at desk scale, so desk reports are diagnostics.
CheckReport approx_xz_check(const Triple& t, const Solution& s, ContinuedFraction& cf);

// Two-solution constraint on log(c)/log(b): with the pair oriented so
// x > x' and z < z', the inequality
//   0 < log(c)/log(b) - y'/z' < 2/(z' a c ln b)
// holds under the ordering alone (asserted); when additionally
// c = max(a,b,c) >= 10^62, the reduced y'/z' is a convergent (asserted
// only then).  cf must expand log(c)/log(b).
CheckReport pair_approx_yz_check(const Triple& t, const Solution& s1, const Solution& s2,
                                 ContinuedFraction& cf);

// Two-solution constraint on log(c)/log(a): with the pair oriented so
// y > y' and z <= z', the ordering alone forces x < x', the congruence
// b^(y-y') c^(z'-z) == 1 (mod a^x), and
//   0 < log(c)/log(a) - x'/z' < 2/(z' a^x ln a)      (all asserted);
// under a = max(a,b,c) >= 10^62 additionally the reduced x'/z' is a
// convergent and the weaker bound 2/(z' a ln a) applies.
CheckReport pair_approx_xz_check(const Triple& t, const Solution& s1, const Solution& s2,
                                 ContinuedFraction& cf);

// Constraint on three solutions of a transformed instance, sorted by Z:
// when Z1 < Z2 <= Z3, C is odd or 4 | C^Z1, the determinants X1 Y2 - X2 Y1
// and X2 Y3 - X3 Y2 are nonzero (zero determinants occur for
// conjugate-factorization pairs and carry no order information), and
// C^(2(Z2-Z1)) > max(a,b,c), the origin bases satisfy max(a,b,c) < 10^62.
// The intermediate bound Y2 * |X2 Y3 - X3 Y2| >= C^(Z2-Z1) is asserted
// under the first three hypotheses alone.
CheckReport triple_descent_check(const TransformedInstance& inst, const TransformedSolution& s1,
                                 const TransformedSolution& s2, const TransformedSolution& s3);

// Certified three-way verdict for the threshold inequality
// t > 6500^6 * (ln t)^18, decided with outward-rounded interval
// arithmetic; true for every t >= 10^62.
enum class Verdict { yes, no, indeterminate };

Verdict size_threshold_check(const Int& t, const CertConfig& cfg = {});

// The paper-level size threshold 10^62 above which at most two solutions
// exist; shared by checks and scan flags.
const Int& two_solution_threshold();

}  // namespace expdio
