#pragma once

#include <array>
#include <tuple>
#include <vector>

#include "expdio/numeric.hpp"

namespace expdio {

// Bases of a^x + b^y = c^z: each >= 2 and pairwise coprime.
class Triple {
public:
    Triple(Int a, Int b, Int c);
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& max_elem() const;
    friend bool operator==(const Triple&, const Triple&) = default;

private:
    Int a_, b_, c_;
};

struct Solution {
    unsigned long x = 0, y = 0, z = 0;
    friend bool operator==(const Solution&, const Solution&) = default;
};

// Listing order for solution sets: ascending (z, y, x).
inline bool operator<(const Solution& l, const Solution& r) {
    return std::tie(l.z, l.y, l.x) < std::tie(r.z, r.y, r.x);
}

bool satisfies(const Triple& t, const Solution& s);

// Ceiling of 6500 * ln(max{a,b,c})^3, rounded outward; every solution has
// max{x,y,z} below this.
Int gelfond_bound(const Triple& t);

struct SolutionSet {
    Triple triple;
    unsigned long cap;  // requested exponent cap
    bool complete;      // true when cap covered the full exponent bound
    std::vector<Solution> solutions;  // ascending (z, y, x)
};

// All solutions with max{x,y,z} <= min(cap, gelfond_bound(t)), each
// re-verified by exact substitution.
SolutionSet enumerate_solutions(const Triple& t, unsigned long cap);

struct ExponentPair {
    unsigned long l = 0, m = 0;
    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

// Solutions (l, m) of u^l + v^m = k (resp. u^l - v^m = k) with l, m <= cap.
// Preconditions: u, v, k >= 2 and gcd(u, v) = 1; under these at most two
// solutions exist, and a third is reported as an invariant violation.
std::vector<ExponentPair> solve_sum(const Int& u, const Int& v, const Int& k,
                                    unsigned long cap);
std::vector<ExponentPair> solve_diff(const Int& u, const Int& v, const Int& k,
                                     unsigned long cap);

// The three associated equations A^X + lambda B^Y = C^Z derived from a
// triple: the equation itself, and the two rearrangements isolating b^y
// (c^z - a^x = b^y) and a^x (c^z - b^y = a^x).
enum class Role { direct, isolate_b, isolate_a };

struct TransformedInstance {
    Int A, B, C;
    int lambda;  // +1 or -1
    Triple origin;
    Role role;
};

struct TransformedSolution {
    unsigned long X = 0, Y = 0, Z = 0;
    friend bool operator==(const TransformedSolution&, const TransformedSolution&) = default;
};

bool satisfies(const TransformedInstance& inst, const TransformedSolution& s);

std::array<TransformedInstance, 3> p_set(const Triple& t);

// Rewrites a solution of the origin equation for the given role; the result
// is verified by substitution.
TransformedSolution map_solution(const TransformedInstance& inst, const Solution& s);

// The triple (2, 2^k - 1, 2^k + 1), which has the two solutions (1,1,1) and
// (k+2, 2, 2). k >= 2.
struct FamilyInstance {
    Triple triple;
    std::array<Solution, 2> predicted;
};

FamilyInstance family(unsigned long k);

}  // namespace expdio
