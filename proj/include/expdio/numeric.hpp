#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "expdio/errors.hpp"

namespace expdio {

using Int = mpz_class;
using Rat = mpq_class;

Int pow_ui(const Int& base, unsigned long e);

// Largest e with base^e == n, if n is an exact power of base.
// n >= 2, base >= 2. The decision is made by exact big-integer comparison.
std::optional<unsigned long> perfect_power_exponent(const Int& n, const Int& base);

// r^e mod m for e >= 0, m >= 2.
Int mod_pow(const Int& r, const Int& e, const Int& m);

struct FactorBudget {
    unsigned long trial_limit = 1'000'000;  // trial division bound
    unsigned rho_rounds = 64;               // distinct polynomial offsets
    unsigned long rho_iters = 1'000'000;    // iterations per round
};

struct PrimeFactorization {
    std::vector<std::pair<Int, unsigned long>> factors;  // (prime, exponent), primes ascending
    Int value() const;
};

// Trial division up to the budget's limit, then deterministic Brent-cycle
// splitting of the remaining cofactor. Throws budget_error when the cofactor
// resists within the configured effort.
PrimeFactorization factorize(const Int& n, const FactorBudget& budget = {});

bool is_probable_prime(const Int& n);

// Largest k with p^k | n. p must be a prime >= 2, n >= 1.
unsigned long p_adic_valuation(const Int& p, const Int& n);

// lcm of lambda(p^k) over the factorization of n; exponent of the unit group
// when it is cyclic, and a multiple of every element order in general.
Int carmichael(const Int& n, const FactorBudget& budget = {});

// Least n >= 1 with r^n == 1 (mod s), gcd(r, s) = 1. Divides carmichael(s);
// computed by descending through the prime factors of that bound.
Int multiplicative_order(const Int& r, const Int& s, const FactorBudget& budget = {});

// Writes n = g^e with e maximal (so g is not itself a perfect power).
// n >= 2. Two integers are multiplicatively dependent iff their kernels g
// coincide.
std::pair<Int, unsigned long> power_kernel(const Int& n);

}  // namespace expdio
