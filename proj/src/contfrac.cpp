#include "expdio/contfrac.hpp"

#include <optional>
#include <string>

namespace expdio {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Int rat_floor(const Rat& x) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Enclosure of |v - x| for v in the enclosure I.
Interval abs_diff(const Interval& I, const Rat& x) {
    Rat lo = I.lo - x, hi = I.hi - x;
    if (lo >= 0) return {lo, hi};
    if (hi <= 0) return {-hi, -lo};
    Rat m = hi > -lo ? hi : -lo;
    return {Rat(0), m};
}

// Certified strict comparisons for a value known only through an enclosure.
std::optional<bool> certified_lt(const Interval& x, const Rat& bound) {
    if (x.hi < bound) return true;
    if (x.lo >= bound) return false;
    return std::nullopt;
}

std::optional<bool> certified_gt(const Interval& x, const Rat& bound) {
    if (x.lo > bound) return true;
    if (x.hi <= bound) return false;
    return std::nullopt;
}

template <class F>
auto escalate(const CertConfig& cfg, F f, const char* what) {
    for (mpfr_prec_t prec = cfg.initial_prec;; prec *= 2) {
        if (auto r = f(prec)) return *r;
        if (prec >= cfg.max_prec) break;
    }
    throw budget_error(std::string(what) + ": certification budget exceeded");
}

// Quotients of the target certified at one working precision: stops as soon
// as the two interval endpoints disagree on a floor.
std::vector<Int> expand_log(const RealTarget::LogRatio& t, mpfr_prec_t prec, std::size_t want) {
    Interval lc = log_interval(t.c, prec), lb = log_interval(t.b, prec);
    Rat lo = lc.lo / lb.hi, hi = lc.hi / lb.lo;
    std::vector<Int> out;
    while (out.size() < want) {
        Int flo = rat_floor(lo), fhi = rat_floor(hi);
        if (flo != fhi) break;
        out.push_back(flo);
        if (out.size() == want) break;
        Rat fl = lo - Rat(flo), fh = hi - Rat(flo);
        if (!(fl > 0)) break;
        Rat nlo = 1 / fh, nhi = 1 / fl;
        lo = nlo;
        hi = nhi;
    }
    return out;
}

}  // namespace

Interval log_interval(const Int& n, mpfr_prec_t prec) {
    require(n >= 2, "log_interval: n must be >= 2");
    require(prec >= 2, "log_interval: precision must be >= 2");
    mpfr_prec_t in_prec = std::max<mpfr_prec_t>(
        prec, static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)));
    mpfr_t x, r;
    mpfr_init2(x, in_prec);
    mpfr_init2(r, prec);
    mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);  // exact: enough precision for n
    Interval out;
    mpfr_log(r, x, MPFR_RNDD);
    mpfr_get_q(out.lo.get_mpq_t(), r);
    mpfr_log(r, x, MPFR_RNDU);
    mpfr_get_q(out.hi.get_mpq_t(), r);
    mpfr_clear(x);
    mpfr_clear(r);
    return out;
}

RealTarget RealTarget::rational(const Int& p, const Int& q) {
    require(p >= 0, "RealTarget::rational: p must be >= 0");
    require(q >= 1, "RealTarget::rational: q must be >= 1");
    Rat v = make_rat(p, q);
    return RealTarget(Rational{Int(v.get_num()), Int(v.get_den())});
}

RealTarget RealTarget::log_ratio(const Int& c, const Int& b) {
    require(c >= 2, "RealTarget::log_ratio: c must be >= 2");
    require(b >= 2, "RealTarget::log_ratio: b must be >= 2");
    auto [gc, ec] = power_kernel(c);
    auto [gb, eb] = power_kernel(b);
    if (gc == gb)
        throw rational_ratio_error(make_rat(Int(ec), Int(eb)),
                                   "log_ratio: bases are multiplicatively dependent");
    return RealTarget(LogRatio{c, b});
}

Interval RealTarget::enclosure(mpfr_prec_t prec) const {
    if (is_rational()) {
        const auto& r = as_rational();
        Rat v = make_rat(r.p, r.q);
        return {v, v};
    }
    const auto& t = as_log_ratio();
    Interval lc = log_interval(t.c, prec), lb = log_interval(t.b, prec);
    return {lc.lo / lb.hi, lc.hi / lb.lo};
}

void ContinuedFraction::refresh_convergents() {
    p_.clear();
    q_.clear();
    Int pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;  // p_{-1}=1, q_{-1}=0 seeds
    for (const Int& a : quotients_) {
        Int p = a * pm1 + pm2;
        Int q = a * qm1 + qm2;
        Int g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        if (g != 1) throw invariant_error("continued fraction convergent is not reduced");
        p_.push_back(p);
        q_.push_back(q);
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;
    }
}

void ContinuedFraction::ensure_quotients(std::size_t count) {
    if (finite_ || quotients_.size() >= count) return;
    const auto& t = target_.as_log_ratio();
    mpfr_prec_t start = prec_used_ ? prec_used_ : cfg_.initial_prec;
    for (mpfr_prec_t prec = start;; prec *= 2) {
        std::vector<Int> qs = expand_log(t, prec, count);
        if (qs.size() >= count) {
            for (std::size_t i = 0; i < quotients_.size(); ++i)
                if (qs[i] != quotients_[i])
                    throw invariant_error("certified quotients changed under refinement");
            quotients_ = std::move(qs);
            prec_used_ = prec;
            refresh_convergents();
            return;
        }
        if (prec >= cfg_.max_prec)
            throw budget_error("cf_log_ratio: precision budget exceeded");
    }
}

Convergent ContinuedFraction::convergent(std::size_t i) const {
    if (i >= quotients_.size())
        throw std::out_of_range("convergent index beyond certified count");
    return {i, p_[i], q_[i]};
}

ContinuedFraction cf_of_rational(const Int& p, const Int& q) {
    require(p >= 0, "cf_of_rational: p must be >= 0");
    require(q >= 1, "cf_of_rational: q must be >= 1");
    std::vector<Int> qs;
    Int a = p, b = q;
    while (true) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        qs.push_back(fl);
        Int rem = a - fl * b;
        if (rem == 0) break;
        a = b;
        b = rem;
    }
    // Euclid already yields the canonical form (no trailing 1 at length >= 2);
    // merge defensively so the invariant is structural, not incidental.
    if (qs.size() > 1 && qs.back() == 1) {
        qs.pop_back();
        qs.back() += 1;
    }
    ContinuedFraction cf(RealTarget::rational(p, q), CertConfig{});
    cf.quotients_ = std::move(qs);
    cf.finite_ = true;
    cf.refresh_convergents();
    return cf;
}

ContinuedFraction cf_log_ratio(const Int& c, const Int& b, std::size_t count, CertConfig cfg) {
    ContinuedFraction cf(RealTarget::log_ratio(c, b), cfg);
    cf.ensure_quotients(count);
    return cf;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t upto) {
    if (upto >= cf.certified_count())
        throw std::out_of_range("convergents: upto beyond certified count");
    std::vector<Convergent> out;
    out.reserve(upto + 1);
    for (std::size_t i = 0; i <= upto; ++i) out.push_back(cf.convergent(i));
    return out;
}

LegendreResult legendre_locate(ContinuedFraction& cf, const Int& p, const Int& q) {
    require(p >= 1, "legendre_locate: p must be >= 1");
    require(q >= 1, "legendre_locate: q must be >= 1");
    Rat v = make_rat(p, q);
    Rat rhs = make_rat(Int(1), 2 * q * q);

    bool holds;
    if (cf.target().is_rational()) {
        const auto& rt = cf.target().as_rational();
        Rat alpha = make_rat(rt.p, rt.q);
        holds = abs(alpha - v) < rhs;
    } else {
        holds = escalate(
            cf.config(),
            [&](mpfr_prec_t prec) {
                return certified_lt(abs_diff(cf.target().enclosure(prec), v), rhs);
            },
            "legendre_locate");
    }
    if (!holds) return {LegendreResult::Status::inequality_fails, 0};

    Int pr(v.get_num()), qr(v.get_den());
    for (std::size_t i = 0;; ++i) {
        if (i >= cf.certified_count()) {
            if (cf.finite()) break;
            cf.ensure_quotients(cf.certified_count() + 8);
        }
        Convergent cv = cf.convergent(i);
        if (cv.p == pr && cv.q == qr) return {LegendreResult::Status::located, i};
        if (i >= 1 && cv.q > qr) break;  // denominators only grow from here
    }
    throw invariant_error("legendre_locate: criterion met but fraction is not a convergent");
}

std::optional<std::size_t> find_convergent(ContinuedFraction& cf, const Int& p, const Int& q) {
    require(p >= 1, "find_convergent: p must be >= 1");
    require(q >= 1, "find_convergent: q must be >= 1");
    Rat v = make_rat(p, q);
    Int pr(v.get_num()), qr(v.get_den());
    for (std::size_t i = 0;; ++i) {
        if (i >= cf.certified_count()) {
            if (cf.finite()) return std::nullopt;
            cf.ensure_quotients(cf.certified_count() + 8);
        }
        Convergent cv = cf.convergent(i);
        if (cv.p == pr && cv.q == qr) return i;
        if (i >= 1 && cv.q > qr) return std::nullopt;
    }
}

GapBounds gap_bounds_check(const ContinuedFraction& cf, std::size_t i) {
    if (i + 1 >= cf.certified_count())
        throw std::out_of_range("gap_bounds_check: index needs a certified successor");
    Convergent ci = cf.convergent(i), cj = cf.convergent(i + 1);
    Rat lower = make_rat(Int(1), ci.q * (cj.q + ci.q));
    Rat upper = make_rat(Int(1), ci.q * cj.q);
    Rat v = make_rat(ci.p, ci.q);

    if (cf.target().is_rational()) {
        const auto& rt = cf.target().as_rational();
        Rat d = abs(make_rat(rt.p, rt.q) - v);
        return {d > lower, d < upper};
    }
    return escalate(
        cf.config(),
        [&](mpfr_prec_t prec) -> std::optional<GapBounds> {
            Interval d = abs_diff(cf.target().enclosure(prec), v);
            auto lo = certified_gt(d, lower);
            auto hi = certified_lt(d, upper);
            if (lo && hi) return GapBounds{*lo, *hi};
            return std::nullopt;
        },
        "gap_bounds_check");
}

}  // namespace expdio
