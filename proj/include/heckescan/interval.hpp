#pragma once

// Certified real intervals on MPFR. Endpoints are stored with directed
// rounding so every interval produced here contains the exact value it
// stands for; midpoint/radius are derived views. sign() only answers
// when zero is excluded.

#include <mpfr.h>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "heckescan/rational.hpp"

namespace heckescan {

enum class IntervalSign { Negative, Positive, Unknown };

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

class RealInterval {
public:
    explicit RealInterval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}

    static RealInterval exact_int(long v, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }

    static RealInterval from_rational(const Rational& q, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static RealInterval hull_points(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec) {
        RealInterval r(prec);
        if (mpfr_cmp(a.get(), b.get()) <= 0) {
            mpfr_set(r.lo_.get(), a.get(), MPFR_RNDD);
            mpfr_set(r.hi_.get(), b.get(), MPFR_RNDU);
        } else {
            mpfr_set(r.lo_.get(), b.get(), MPFR_RNDD);
            mpfr_set(r.hi_.get(), a.get(), MPFR_RNDU);
        }
        return r;
    }

    static RealInterval pi(mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
        mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return lo_.prec(); }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    BigFloat lo_value() const { return lo_; }
    BigFloat hi_value() const { return hi_; }

    bool contains_zero() const {
        return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
    }
    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }

    IntervalSign sign() const {
        if (mpfr_sgn(lo_.get()) > 0) return IntervalSign::Positive;
        if (mpfr_sgn(hi_.get()) < 0) return IntervalSign::Negative;
        return IntervalSign::Unknown;
    }

    BigFloat midpoint() const {
        BigFloat m(prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }

    // Upper bound on the distance from midpoint to either endpoint.
    BigFloat radius() const {
        BigFloat m = midpoint();
        BigFloat a(prec()), b(prec());
        mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
        mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
        if (mpfr_cmp(a.get(), b.get()) < 0) mpfr_swap(a.get(), b.get());
        return a;
    }

    BigFloat width() const {
        BigFloat w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }

    RealInterval operator-() const {
        RealInterval r(prec());
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        return r;
    }

    RealInterval operator+(const RealInterval& o) const {
        RealInterval r(std::max(prec(), o.prec()));
        mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return r;
    }

    RealInterval operator-(const RealInterval& o) const { return *this + (-o); }

    RealInterval operator*(const RealInterval& o) const {
        RealInterval r(std::max(prec(), o.prec()));
        BigFloat t(r.prec());
        bool first = true;
        mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
        mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
        for (auto* x : xs)
            for (auto* y : ys) {
                mpfr_mul(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }

    RealInterval operator/(const RealInterval& o) const {
        if (o.contains_zero()) throw std::domain_error("RealInterval: division by interval containing 0");
        RealInterval r(std::max(prec(), o.prec()));
        BigFloat t(r.prec());
        bool first = true;
        mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
        mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
        for (auto* x : xs)
            for (auto* y : ys) {
                mpfr_div(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_div(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }

    RealInterval pow_uint(unsigned long e) const {
        RealInterval acc = exact_int(1, prec());
        RealInterval base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Requires a set known to be >= 0 (clamps rounding dust below zero).
    RealInterval sqrt_nonneg() const {
        if (mpfr_sgn(hi_.get()) < 0) throw std::domain_error("RealInterval::sqrt_nonneg: negative interval");
        RealInterval r(prec());
        if (mpfr_sgn(lo_.get()) <= 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    // Monotone decreasing on [-1, 1]; inputs clipped to the domain, which
    // is sound whenever the exact value lies in it.
    RealInterval acos_clipped() const {
        RealInterval x = *this;
        if (mpfr_cmp_si(x.lo_.get(), -1) < 0) mpfr_set_si(x.lo_.get(), -1, MPFR_RNDD);
        if (mpfr_cmp_si(x.hi_.get(), 1) > 0) mpfr_set_si(x.hi_.get(), 1, MPFR_RNDU);
        if (mpfr_cmp(x.lo_.get(), x.hi_.get()) > 0)
            throw std::domain_error("RealInterval::acos_clipped: empty after clipping");
        RealInterval r(prec());
        mpfr_acos(r.lo_.get(), x.hi_.get(), MPFR_RNDD);
        mpfr_acos(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
        return r;
    }

    RealInterval cos_interval() const;
    RealInterval sin_interval() const;

    std::string to_string(size_t digits = 20) const {
        char* s = nullptr;
        BigFloat m = midpoint();
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), m.get());
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    void set_lo_raw(const BigFloat& v) { mpfr_set(lo_.get(), v.get(), MPFR_RNDD); }
    void set_hi_raw(const BigFloat& v) { mpfr_set(hi_.get(), v.get(), MPFR_RNDU); }

private:
    BigFloat lo_, hi_;
};

namespace detail {
inline void point_fn_enclosure(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), mpfr_srcptr x,
                               BigFloat& out_lo, BigFloat& out_hi) {
    fn(out_lo.get(), x, MPFR_RNDD);
    fn(out_hi.get(), x, MPFR_RNDU);
}
}  // namespace detail

inline RealInterval RealInterval::cos_interval() const {
    mpfr_prec_t p = prec();
    BigFloat a(p), b(p), c(p), d(p);
    detail::point_fn_enclosure(mpfr_cos, lo(), a, b);
    detail::point_fn_enclosure(mpfr_cos, hi(), c, d);
    RealInterval r(p);
    mpfr_min(r.lo_.get(), a.get(), c.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), b.get(), d.get(), MPFR_RNDU);
    // Interior extrema at integer multiples of pi. The candidate range is
    // a superset; the exact membership test below uses intervals.
    RealInterval pi_enc = pi(p);
    double dlo = mpfr_get_d(lo(), MPFR_RNDD);
    double dhi = mpfr_get_d(hi(), MPFR_RNDU);
    if (!(dhi - dlo < 1e9))
        throw std::domain_error("RealInterval::cos_interval: interval too wide");
    long k_min = static_cast<long>(std::floor(dlo / 3.14)) - 2;
    long k_max = static_cast<long>(std::floor(dhi / 3.14)) + 2;
    for (long k = k_min; k <= k_max; ++k) {
        RealInterval kpi = pi_enc * exact_int(k, p);
        bool intersects = mpfr_cmp(kpi.hi(), lo()) >= 0 && mpfr_cmp(kpi.lo(), hi()) <= 0;
        if (!intersects) continue;
        if (k % 2 == 0) {
            if (mpfr_cmp_si(r.hi_.get(), 1) < 0) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
        } else {
            if (mpfr_cmp_si(r.lo_.get(), -1) > 0) mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
        }
    }
    return r;
}

inline RealInterval RealInterval::sin_interval() const {
    RealInterval half_pi = pi(prec());
    RealInterval shift(prec());
    mpfr_div_2ui(shift.lo_.get(), half_pi.lo(), 1, MPFR_RNDD);
    mpfr_div_2ui(shift.hi_.get(), half_pi.hi(), 1, MPFR_RNDU);
    return (shift - *this).cos_interval();
}

// cos(2*pi*k/m), sin(2*pi*k/m) with quarter-turn cases answered exactly.
inline RealInterval cos_2pi_frac(long k, long m, mpfr_prec_t prec) {
    long r = ((k % m) + m) % m;
    if (4 * r == 0) return RealInterval::exact_int(1, prec);
    if (4 * r == m || 4 * r == 3 * m) return RealInterval::exact_int(0, prec);
    if (4 * r == 2 * m) return RealInterval::exact_int(-1, prec);
    RealInterval theta = RealInterval::pi(prec) *
                         RealInterval::from_rational(make_rational(Int(2 * r), Int(m)), prec);
    return theta.cos_interval();
}

inline RealInterval sin_2pi_frac(long k, long m, mpfr_prec_t prec) {
    long r = ((k % m) + m) % m;
    if (4 * r == 0 || 4 * r == 2 * m) return RealInterval::exact_int(0, prec);
    if (4 * r == m) return RealInterval::exact_int(1, prec);
    if (4 * r == 3 * m) return RealInterval::exact_int(-1, prec);
    RealInterval theta = RealInterval::pi(prec) *
                         RealInterval::from_rational(make_rational(Int(2 * r), Int(m)), prec);
    return theta.sin_interval();
}

// base^e for integer base >= 1 and rational exponent, via monotonicity in
// the exponent and MPFR's correctly rounded pow.
inline RealInterval pow_rational_exponent(long base, const Rational& e, mpfr_prec_t prec) {
    if (base < 1) throw std::domain_error("pow_rational_exponent: base >= 1 required");
    RealInterval ei = RealInterval::from_rational(e, prec);
    BigFloat b(prec);
    mpfr_set_si(b.get(), base, MPFR_RNDN);  // exact for desk-scale bases
    RealInterval r(prec);
    BigFloat lo_out(prec), hi_out(prec);
    mpfr_pow(lo_out.get(), b.get(), ei.lo(), MPFR_RNDD);
    mpfr_pow(hi_out.get(), b.get(), ei.hi(), MPFR_RNDU);
    r.set_lo_raw(lo_out);
    r.set_hi_raw(hi_out);
    return r;
}

struct ComplexInterval {
    RealInterval re, im;

    ComplexInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    ComplexInterval(RealInterval r, RealInterval i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexInterval exact_int(long v, mpfr_prec_t prec) {
        return {RealInterval::exact_int(v, prec), RealInterval::exact_int(0, prec)};
    }

    ComplexInterval operator+(const ComplexInterval& o) const { return {re + o.re, im + o.im}; }
    ComplexInterval operator-(const ComplexInterval& o) const { return {re - o.re, im - o.im}; }
    ComplexInterval operator*(const ComplexInterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

}  // namespace heckescan
