#include "expdio/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace expdio {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Largest e >= 0 with base^e <= n, via binary search on exact powers.
unsigned long floor_log(const Int& n, const Int& base) {
    if (n < base) return 0;
    size_t nb = mpz_sizeinbase(n.get_mpz_t(), 2);
    size_t bb = mpz_sizeinbase(base.get_mpz_t(), 2);
    unsigned long lo = 1, hi = (nb - 1) / (bb - 1) + 1;
    Int pw;
    while (lo < hi) {
        unsigned long mid = lo + (hi - lo + 1) / 2;
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), mid);
        if (pw <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// Strip factors p <= limit; returns the unfactored cofactor (1, a prime, or a
// composite all of whose prime factors exceed limit).
uint64_t trial_divide_u64(uint64_t n, uint64_t limit, PrimeFactorization& out) {
    auto emit = [&](uint64_t p, unsigned long e) {
        out.factors.emplace_back(Int(static_cast<unsigned long>(p)), e);
    };
    for (uint64_t p : {uint64_t{2}, uint64_t{3}, uint64_t{5}}) {
        if (p > limit) return n;
        unsigned long e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) emit(p, e);
    }
    static const uint64_t wheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
    for (uint64_t base = 0;; base += 30) {
        for (uint64_t off : wheel) {
            uint64_t p = base + off;
            if (p < 7) continue;
            if (p > limit || p * p > n) return n;
            unsigned long e = 0;
            while (n % p == 0) n /= p, ++e;
            if (e) emit(p, e);
        }
    }
}

Int brent_cycle(const Int& n, const FactorBudget& budget) {
    // Deterministic schedule: x0 = 2, f(x) = x^2 + c, c = 1, 2, ...
    for (unsigned c = 1; c <= budget.rho_rounds; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys = 2, cc = c;
        unsigned long r = 1, iters = 0;
        const unsigned long batch = 128;
        while (d == 1 && iters < budget.rho_iters) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + cc) % n;
            for (unsigned long k = 0; k < r && d == 1 && iters < budget.rho_iters; k += batch) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + cc) % n;
                    q = q * abs(x - y) % n;
                    ++iters;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            // the batched gcd collapsed; replay the window one step at a time
            d = 1;
            while (d == 1) {
                ys = (ys * ys + cc) % n;
                Int diff = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n && d > 1) return d;
    }
    throw budget_error("factoring budget exceeded");
}

void factor_rec(const Int& n, const FactorBudget& budget, std::vector<Int>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    // rho converges poorly on p^k; peel exact powers first
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2;; ++e) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::vector<Int> sub;
                factor_rec(root, budget, sub);
                for (unsigned long i = 0; i < e; ++i)
                    primes.insert(primes.end(), sub.begin(), sub.end());
                return;
            }
        }
    }
    Int d = brent_cycle(n, budget);
    factor_rec(d, budget, primes);
    factor_rec(n / d, budget, primes);
}

}  // namespace

Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int PrimeFactorization::value() const {
    Int v = 1;
    for (const auto& [p, e] : factors) v *= pow_ui(p, e);
    return v;
}

std::optional<unsigned long> perfect_power_exponent(const Int& n, const Int& base) {
    require(n >= 2, "perfect_power_exponent: n must be >= 2");
    require(base >= 2, "perfect_power_exponent: base must be >= 2");
    if (!mpz_divisible_p(n.get_mpz_t(), base.get_mpz_t())) return std::nullopt;
    unsigned long e = floor_log(n, base);
    if (pow_ui(base, e) == n) return e;
    return std::nullopt;
}

Int mod_pow(const Int& r, const Int& e, const Int& m) {
    require(m >= 2, "mod_pow: modulus must be >= 2");
    require(e >= 0, "mod_pow: exponent must be >= 0");
    require(r >= 0, "mod_pow: base must be >= 0");
    Int out;
    mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return out;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

PrimeFactorization factorize(const Int& n, const FactorBudget& budget) {
    require(n >= 1, "factorize: n must be >= 1");
    PrimeFactorization out;
    if (n == 1) return out;

    Int rest;
    if (n.fits_ulong_p()) {
        rest = Int(static_cast<unsigned long>(
            trial_divide_u64(n.get_ui(), budget.trial_limit, out)));
    } else {
        rest = n;
        for (uint64_t p = 2; p <= budget.trial_limit && rest > 1; p += (p == 2 ? 1 : 2)) {
            if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                Int pp = Int(static_cast<unsigned long>(p));
                unsigned long e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
                out.factors.emplace_back(pp, e);
            }
        }
    }

    if (rest > 1) {
        Int limit2 = Int(static_cast<unsigned long>(budget.trial_limit));
        limit2 *= limit2;
        if (rest <= limit2 || is_probable_prime(rest)) {
            out.factors.emplace_back(rest, 1);
        } else {
            std::vector<Int> primes;
            factor_rec(rest, budget, primes);
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                out.factors.emplace_back(primes[i], j - i);
                i = j;
            }
            std::sort(out.factors.begin(), out.factors.end(),
                      [](const auto& l, const auto& r) { return l.first < r.first; });
        }
    }
    return out;
}

unsigned long p_adic_valuation(const Int& p, const Int& n) {
    require(p >= 2, "p_adic_valuation: p must be >= 2");
    require(is_probable_prime(p), "p_adic_valuation: p must be prime");
    require(n >= 1, "p_adic_valuation: n must be >= 1");
    Int rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Int carmichael(const Int& n, const FactorBudget& budget) {
    require(n >= 1, "carmichael: n must be >= 1");
    PrimeFactorization pf = factorize(n, budget);
    Int lam = 1;
    for (const auto& [p, e] : pf.factors) {
        Int comp;
        if (p == 2) {
            comp = e == 1 ? 1 : e == 2 ? 2 : pow_ui(Int(2), e - 2);
        } else {
            comp = pow_ui(p, e - 1) * (p - 1);
        }
        mpz_lcm(lam.get_mpz_t(), lam.get_mpz_t(), comp.get_mpz_t());
    }
    return lam;
}

Int multiplicative_order(const Int& r, const Int& s, const FactorBudget& budget) {
    require(s >= 2, "multiplicative_order: modulus must be >= 2");
    require(r >= 1, "multiplicative_order: base must be >= 1");
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
    require(g == 1, "multiplicative_order: base and modulus must be coprime");

    Int lam = carmichael(s, budget);
    Int n = lam;
    for (const auto& [p, e] : factorize(lam, budget).factors) {
        (void)e;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) && mod_pow(r, n / p, s) == 1) n /= p;
    }
    if (mod_pow(r, n, s) != 1)
        throw invariant_error("multiplicative_order: descent left a non-unit power");
    return n;
}

std::pair<Int, unsigned long> power_kernel(const Int& n) {
    require(n >= 2, "power_kernel: n must be >= 2");
    PrimeFactorization pf = factorize(n);
    unsigned long d = 0;
    for (const auto& [p, e] : pf.factors) {
        (void)p;
        d = std::gcd(d, e);
    }
    Int g = 1;
    for (const auto& [p, e] : pf.factors) g *= pow_ui(p, e / d);
    return {g, d};
}

}  // namespace expdio
