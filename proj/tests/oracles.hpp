#pragma once

// Independent reference implementations used only by the test suites.
// Everything here favors obviousness over speed: brute-force loops and
// exact big-integer arithmetic, sharing no code paths with the library
// beyond the basic value types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "expdio/equation.hpp"
#include "expdio/numeric.hpp"

namespace oracle {

using expdio::Int;
using expdio::Rat;

// ---------------------------------------------------------------------------
// Brute-force enumeration of a^x + b^y = c^z with 1 <= x, y, z <= cap:
// precomputed power tables and a triple loop with monotonicity breaks.
// ---------------------------------------------------------------------------

inline std::vector<expdio::Solution> naive_enumerate(const Int& a, const Int& b, const Int& c,
                                                     unsigned long cap) {
    std::vector<Int> pa(cap + 1), pb(cap + 1), pc(cap + 1);
    pa[0] = pb[0] = pc[0] = 1;
    for (unsigned long e = 1; e <= cap; ++e) {
        pa[e] = pa[e - 1] * a;
        pb[e] = pb[e - 1] * b;
        pc[e] = pc[e - 1] * c;
    }
    std::vector<expdio::Solution> out;
    for (unsigned long z = 1; z <= cap; ++z) {
        for (unsigned long x = 1; x <= cap && pa[x] < pc[z]; ++x) {
            const Int rem = pc[z] - pa[x];
            for (unsigned long y = 1; y <= cap && pb[y] <= rem; ++y)
                if (pb[y] == rem) out.push_back({x, y, z});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Shanks-style continued fraction of log(c)/log(b) by exact power
// comparison.  Every level's value is ln(H)/ln(L) where H and L are exact
// rationals of the form c^s * b^t; only the signed exponent pairs (s, t)
// are carried, so each comparison is a cross-multiplied big-integer power
// comparison and nothing is ever reduced.  The partial quotient is the
// largest e with L^e <= H, and the next level is (H / L^e, L).
// ---------------------------------------------------------------------------

struct LogMono {
    long sc = 0, sb = 0;  // exponents of c and b
};

namespace detail {

// Fixed-point value m * 2^e with a directed-rounding mantissa.  Deep levels
// of the recurrence need powers with exponents in the billions, far too big
// to materialize, so comparisons are decided by bracketing each side between
// a rounded-down and a rounded-up product and retrying at double the
// mantissa width whenever the brackets overlap without being exact.
struct Fix {
    Int m;
    long e = 0;
};

inline Fix trim(Fix v, unsigned long width, bool up) {
    const std::size_t bits = mpz_sizeinbase(v.m.get_mpz_t(), 2);
    if (bits > width) {
        const unsigned long s = bits - width;
        const bool inexact = up && mpz_scan1(v.m.get_mpz_t(), 0) < s;
        v.m >>= s;
        if (inexact) v.m += 1;
        v.e += static_cast<long>(s);
    }
    return v;
}

inline Fix mul_dir(const Fix& x, const Fix& y, unsigned long width, bool up) {
    return trim(Fix{x.m * y.m, x.e + y.e}, width, up);
}

inline Fix pow_dir(const Int& base, unsigned long exp, unsigned long width, bool up) {
    Fix acc{Int(1), 0};
    Fix sq{base, 0};
    while (exp > 0) {
        if (exp & 1) acc = mul_dir(acc, sq, width, up);
        exp >>= 1;
        if (exp > 0) sq = mul_dir(sq, sq, width, up);
    }
    return acc;
}

inline int cmp_fix(const Fix& x, const Fix& y) {
    const long bx = static_cast<long>(mpz_sizeinbase(x.m.get_mpz_t(), 2));
    const long by = static_cast<long>(mpz_sizeinbase(y.m.get_mpz_t(), 2));
    // x < 2^(x.e+bx) and y >= 2^(y.e+by-1); decide by exponent when the
    // binades are disjoint so no astronomically long shift is ever needed.
    if (x.e + bx <= y.e + by - 1) return -1;
    if (y.e + by <= x.e + bx - 1) return 1;
    const long d = x.e - y.e;  // now |d| <= max mantissa width + 1
    if (d >= 0) return cmp(Int(x.m << static_cast<unsigned long>(d)), y.m);
    return cmp(x.m, Int(y.m << static_cast<unsigned long>(-d)));
}

}  // namespace detail

// Sign of c^lc * b^lb - 1: positive exponents multiply onto the left of the
// comparison, negative ones onto the right.
inline int cmp_power_mono(const Int& c, const Int& b, long lc, long lb) {
    if (lc == 0 && lb == 0) return 0;
    const unsigned long lhs_c = lc > 0 ? static_cast<unsigned long>(lc) : 0;
    const unsigned long rhs_c = lc < 0 ? static_cast<unsigned long>(-lc) : 0;
    const unsigned long lhs_b = lb > 0 ? static_cast<unsigned long>(lb) : 0;
    const unsigned long rhs_b = lb < 0 ? static_cast<unsigned long>(-lb) : 0;
    using detail::cmp_fix;
    using detail::mul_dir;
    using detail::pow_dir;
    for (unsigned long width = 96; width <= (1ul << 20); width *= 2) {
        const detail::Fix llo = mul_dir(pow_dir(c, lhs_c, width, false),
                                        pow_dir(b, lhs_b, width, false), width, false);
        const detail::Fix rhi = mul_dir(pow_dir(c, rhs_c, width, true),
                                        pow_dir(b, rhs_b, width, true), width, true);
        if (cmp_fix(llo, rhi) > 0) return 1;
        const detail::Fix lhi = mul_dir(pow_dir(c, lhs_c, width, true),
                                        pow_dir(b, lhs_b, width, true), width, true);
        const detail::Fix rlo = mul_dir(pow_dir(c, rhs_c, width, false),
                                        pow_dir(b, rhs_b, width, false), width, false);
        if (cmp_fix(lhi, rlo) < 0) return -1;
        // Brackets overlap: equal only if both sides were computed exactly.
        if (cmp_fix(llo, lhi) == 0 && cmp_fix(rlo, rhi) == 0 && cmp_fix(llo, rlo) == 0)
            return 0;
    }
    throw expdio::invariant_error("power comparison failed to separate");
}

// Largest e >= 1 with lo^e <= hi; both monomials represent values > 1 with
// ln(hi)/ln(lo) >= 1.  Doubling overshoot then binary search.
inline unsigned long floor_log_mono(const Int& c, const Int& b, LogMono lo, LogMono hi) {
    const auto fits = [&](unsigned long e) {
        const long lc = static_cast<long>(e) * lo.sc - hi.sc;
        const long lb = static_cast<long>(e) * lo.sb - hi.sb;
        return cmp_power_mono(c, b, lc, lb) <= 0;  // lo^e <= hi
    };
    unsigned long e = 1;
    while (fits(2 * e)) e *= 2;
    for (unsigned long step = e / 2; step > 0; step /= 2)
        if (fits(e + step)) e += step;
    return e;
}

// First `count` partial quotients of log(c)/log(b) for 2 <= b < c; stops
// early (returning fewer) if the ratio turns out to be rational.
inline std::vector<Int> shanks_quotients(const Int& c, const Int& b, std::size_t count) {
    std::vector<Int> out;
    LogMono lo{0, 1}, hi{1, 0};  // b and c themselves
    while (out.size() < count) {
        const unsigned long e = floor_log_mono(c, b, lo, hi);
        out.emplace_back(e);
        const LogMono next{hi.sc - static_cast<long>(e) * lo.sc,
                           hi.sb - static_cast<long>(e) * lo.sb};
        // hi / lo^e == 1 exactly means b and c share a power relation.
        if (cmp_power_mono(c, b, next.sc, next.sb) == 0) break;
        hi = lo;
        lo = next;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force least exponent n with r^n = +-1 (mod s): repeated modular
// multiplication, nothing else.
// ---------------------------------------------------------------------------

struct Pm1 {
    unsigned long n1 = 0;
    int delta1 = 0;
    Int f;  // (r^n1 - delta1) / s
};

// Word-sized moduli only (every caller is far below 2^32): the residue walk
// runs in machine integers, and only the final cofactor touches bignums.
inline Pm1 exhaustive_pm1(unsigned long r, unsigned long s) {
    unsigned long residue = r % s;
    for (unsigned long n = 1;; ++n) {
        if (residue == 1 || residue == s - 1) {
            const int delta = residue == 1 ? 1 : -1;
            return {n, delta, (expdio::pow_ui(Int(r), n) - delta) / s};
        }
        residue = residue * r % s;
    }
}

// ---------------------------------------------------------------------------
// Randomized but reproducible material for the order-lifting rule: moduli
// s with s odd or divisible by 4, bases coprime to s, multipliers t built
// from the primes of s, and exponents biased toward genuine +-1 hits.
// ---------------------------------------------------------------------------

struct LiftSample {
    unsigned long r, s, t, n_prime;
};

inline std::vector<LiftSample> lift_samples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned long> pick_s(3, 400);
    std::uniform_int_distribution<unsigned long> pick_r(2, 50);
    std::uniform_int_distribution<unsigned long> pick_n(1, 5000);
    std::uniform_int_distribution<unsigned long> pick_k(1, 40);
    std::uniform_int_distribution<int> coin(0, 1);

    std::vector<LiftSample> out;
    out.reserve(count);
    while (out.size() < count) {
        const unsigned long s = pick_s(rng);
        if (s % 4 == 2) continue;
        const unsigned long r = pick_r(rng);
        if (std::gcd(r, s) != 1) continue;

        // t: a product of primes dividing s, possibly repeated, capped small.
        std::vector<unsigned long> primes;
        for (unsigned long p = 2, m = s; p <= m; ++p)
            if (m % p == 0) {
                primes.push_back(p);
                while (m % p == 0) m /= p;
            }
        unsigned long t = 1;
        for (unsigned long p : primes) {
            const int reps = coin(rng) + coin(rng);  // 0..2 copies of each prime
            for (int i = 0; i < reps && t <= 5000 / p; ++i) t *= p;
        }
        if (t < 2) t = primes.front();

        unsigned long n_prime;
        if (coin(rng)) {
            // Biased draw: a multiple of the brute-force least +-1 exponent
            // modulo s*t, so the congruence side of the rule actually fires.
            const Pm1 base = exhaustive_pm1(r, s * t);
            n_prime = base.n1 * pick_k(rng);
        } else {
            n_prime = pick_n(rng);
        }
        out.push_back({r, s, t, n_prime});
    }
    return out;
}

}  // namespace oracle
