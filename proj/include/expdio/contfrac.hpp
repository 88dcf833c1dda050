#pragma once

#include <mpfr.h>

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "expdio/numeric.hpp"

namespace expdio {

struct CertConfig {
    mpfr_prec_t initial_prec = 128;
    mpfr_prec_t max_prec = 8 * 1024 * 1024;  // 1 MiB of working precision
};

// Thrown when a requested log ratio is rational (the two bases are powers of
// a common integer); carries the exact value so callers can fall back to the
// rational expansion.
struct rational_ratio_error : std::invalid_argument {
    Rat ratio;
    rational_ratio_error(Rat r, const std::string& msg)
        : std::invalid_argument(msg), ratio(std::move(r)) {}
};

struct Interval {
    Rat lo, hi;  // closed, lo <= hi
};

// Certified enclosure of ln(n), n >= 2: endpoints are directed roundings at
// `prec` bits, held exactly as rationals. Everything downstream of this is
// exact arithmetic.
Interval log_interval(const Int& n, mpfr_prec_t prec);

class RealTarget {
public:
    struct Rational {
        Int p, q;  // p/q, q >= 1
    };
    struct LogRatio {
        Int c, b;  // log(c)/log(b), both >= 2, multiplicatively independent
    };

    static RealTarget rational(const Int& p, const Int& q);
    static RealTarget log_ratio(const Int& c, const Int& b);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& as_rational() const { return std::get<Rational>(v_); }
    const LogRatio& as_log_ratio() const { return std::get<LogRatio>(v_); }

    // Enclosure of the target value; degenerate (exact) for rational targets.
    Interval enclosure(mpfr_prec_t prec) const;

private:
    explicit RealTarget(std::variant<Rational, LogRatio> v) : v_(std::move(v)) {}
    std::variant<Rational, LogRatio> v_;
};

struct Convergent {
    std::size_t index;
    Int p, q;
};

class ContinuedFraction {
public:
    const RealTarget& target() const { return target_; }
    const std::vector<Int>& quotients() const { return quotients_; }
    std::size_t certified_count() const { return quotients_.size(); }
    // True when the expansion is complete (rational targets only).
    bool finite() const { return finite_; }
    const CertConfig& config() const { return cfg_; }

    // Extends the certified expansion to >= count quotients, doubling the
    // working precision as needed. No-op once a finite expansion is complete.
    void ensure_quotients(std::size_t count);

    Convergent convergent(std::size_t i) const;

private:
    friend ContinuedFraction cf_of_rational(const Int& p, const Int& q);
    friend ContinuedFraction cf_log_ratio(const Int& c, const Int& b, std::size_t count,
                                          CertConfig cfg);
    ContinuedFraction(RealTarget t, CertConfig cfg) : target_(std::move(t)), cfg_(cfg) {}

    void refresh_convergents();

    RealTarget target_;
    CertConfig cfg_;
    std::vector<Int> quotients_;
    std::vector<Int> p_, q_;
    bool finite_ = false;
    mpfr_prec_t prec_used_ = 0;
};

// Euclidean expansion, canonical form (final quotient >= 2 unless the whole
// expansion is a single term).
ContinuedFraction cf_of_rational(const Int& p, const Int& q);

// Certified expansion of log(c)/log(b) to at least `count` quotients.
// Throws rational_ratio_error when c and b are multiplicatively dependent.
ContinuedFraction cf_log_ratio(const Int& c, const Int& b, std::size_t count,
                               CertConfig cfg = {});

// Convergents 0..upto (inclusive). upto must be below the certified count.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t upto);

struct LegendreResult {
    enum class Status { located, inequality_fails };
    Status status;
    std::size_t index = 0;  // meaningful when located
};

// Decides |target - p/q| < 1/(2q^2) rigorously; when it holds, returns the
// index of the convergent equal to p/q in lowest terms (one must exist).
LegendreResult legendre_locate(ContinuedFraction& cf, const Int& p, const Int& q);

// Index of the convergent equal to p/q in lowest terms, scanning (and
// extending) the expansion until the denominators pass q. Unlike
// legendre_locate this is pure membership, with no inequality gate.
std::optional<std::size_t> find_convergent(ContinuedFraction& cf, const Int& p, const Int& q);

struct GapBounds {
    bool lower_holds;  // 1/(q_i (q_{i+1} + q_i)) < |target - p_i/q_i|
    bool upper_holds;  // |target - p_i/q_i| < 1/(q_i q_{i+1})
};

// Two-sided approximation bounds at index i; needs convergent i+1, so for
// rational targets the last index is rejected.
GapBounds gap_bounds_check(const ContinuedFraction& cf, std::size_t i);

}  // namespace expdio
