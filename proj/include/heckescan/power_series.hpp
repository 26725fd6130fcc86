#pragma once

// Truncated power series: coefficients of q^0 .. q^(prec-1). Arithmetic
// never reads past prec; multiplication truncates to the smaller prec.

#include <stdexcept>
#include <vector>

#include "heckescan/rational.hpp"

namespace heckescan {

template <class K>
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(long prec) : c_(static_cast<size_t>(prec), K(0)) {
        if (prec < 1) throw std::invalid_argument("PowerSeries: prec >= 1");
    }
    PowerSeries(std::vector<K> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("PowerSeries: prec >= 1");
    }

    long prec() const { return static_cast<long>(c_.size()); }

    const K& coeff(long n) const {
        if (n < 0 || n >= prec()) throw std::out_of_range("PowerSeries::coeff");
        return c_[static_cast<size_t>(n)];
    }
    K& coeff(long n) {
        if (n < 0 || n >= prec()) throw std::out_of_range("PowerSeries::coeff");
        return c_[static_cast<size_t>(n)];
    }
    const std::vector<K>& coeffs() const { return c_; }

    static PowerSeries one(long prec) {
        PowerSeries s(prec);
        s.c_[0] = K(1);
        return s;
    }

    PowerSeries truncate(long prec) const {
        if (prec > this->prec()) throw std::out_of_range("PowerSeries::truncate: extending");
        return PowerSeries(std::vector<K>(c_.begin(), c_.begin() + prec));
    }

    PowerSeries operator+(const PowerSeries& o) const {
        long p = std::min(prec(), o.prec());
        PowerSeries r(p);
        for (long i = 0; i < p; ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }

    PowerSeries operator-(const PowerSeries& o) const {
        long p = std::min(prec(), o.prec());
        PowerSeries r(p);
        for (long i = 0; i < p; ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }

    PowerSeries operator*(const PowerSeries& o) const {
        long p = std::min(prec(), o.prec());
        PowerSeries r(p);
        for (long i = 0; i < p; ++i) {
            if (c_[static_cast<size_t>(i)] == K(0)) continue;
            for (long j = 0; i + j < p; ++j)
                r.c_[static_cast<size_t>(i + j)] =
                    r.c_[static_cast<size_t>(i + j)] + c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
        return r;
    }

    PowerSeries pow(unsigned long e) const {
        PowerSeries acc = one(prec());
        PowerSeries base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // q^s * f, extending prec by s so no information is lost.
    PowerSeries shift_up(long s) const {
        PowerSeries r(prec() + s);
        for (long i = 0; i < prec(); ++i) r.c_[static_cast<size_t>(i + s)] = c_[static_cast<size_t>(i)];
        return r;
    }

    // f(q^d); output prec chosen so all inflated terms are kept.
    PowerSeries inflate(long d) const {
        if (d < 1) throw std::invalid_argument("PowerSeries::inflate: d >= 1");
        PowerSeries r((prec() - 1) * d + 1);
        for (long i = 0; i < prec(); ++i) r.c_[static_cast<size_t>(i * d)] = c_[static_cast<size_t>(i)];
        return r;
    }

    bool operator==(const PowerSeries& o) const { return c_ == o.c_; }

private:
    std::vector<K> c_;
};

// prod_{n >= 1} (1 - q^n) by the pentagonal number theorem.
inline PowerSeries<Int> eta_series(long prec) {
    PowerSeries<Int> s(prec);
    s.coeff(0) = 1;
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (e1 >= prec && e2 >= prec) break;
        Int sgn = (k % 2 == 1) ? -1 : 1;
        if (e1 < prec) s.coeff(e1) += sgn;
        if (e2 < prec) s.coeff(e2) += sgn;
    }
    return s;
}

// sigma_{k-1} divisor sums, n = 0 .. prec-1 (index 0 unused, kept 0).
inline std::vector<Int> divisor_power_sums(long k_minus_1, long prec) {
    std::vector<Int> sig(static_cast<size_t>(prec), Int(0));
    for (long d = 1; d < prec; ++d) {
        Int dk = pow_int(Int(d), static_cast<unsigned long>(k_minus_1));
        for (long n = d; n < prec; n += d) sig[static_cast<size_t>(n)] += dk;
    }
    return sig;
}

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
inline PowerSeries<Rational> eisenstein_series(int k, long prec) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein_series: even k >= 4");
    Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned long>(k));
    auto sig = divisor_power_sums(k - 1, prec);
    PowerSeries<Rational> s(prec);
    s.coeff(0) = 1;
    for (long n = 1; n < prec; ++n) s.coeff(n) = factor * Rational(sig[static_cast<size_t>(n)]);
    return s;
}

// Integer-coefficient Eisenstein series (k in {4, 6, 8, 10, 14}).
inline PowerSeries<Int> eisenstein_series_int(int k, long prec) {
    Rational factor = Rational(-2 * k) / bernoulli(static_cast<unsigned long>(k));
    if (factor.get_den() != 1)
        throw std::invalid_argument("eisenstein_series_int: non-integral coefficients for this k");
    Int f = factor.get_num();
    auto sig = divisor_power_sums(k - 1, prec);
    PowerSeries<Int> s(prec);
    s.coeff(0) = 1;
    for (long n = 1; n < prec; ++n) s.coeff(n) = f * sig[static_cast<size_t>(n)];
    return s;
}

// Delta = q * eta(q)^24, to coefficient of q^nmax inclusive.
inline PowerSeries<Int> delta_series(long nmax) {
    PowerSeries<Int> eta = eta_series(nmax);
    return eta.pow(24).shift_up(1);
}

}  // namespace heckescan
