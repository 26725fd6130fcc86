#pragma once

// Dense univariate polynomials over an exact field K. K must provide
// value semantics, +, -, *, /, ==, and construction from int. The zero
// polynomial has degree -1.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckescan/rational.hpp"

namespace heckescan {

template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(K c) : c_{std::move(c)} { normalize(); }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(K(1)); }
    static Poly constant(K c) { return Poly(std::move(c)); }

    // c * X^e
    static Poly monomial(K c, long e) {
        std::vector<K> v(static_cast<size_t>(e) + 1, K(0));
        v.back() = std::move(c);
        return Poly(std::move(v));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const K& leading() const {
        if (is_zero()) throw std::domain_error("Poly::leading on zero polynomial");
        return c_.back();
    }

    K coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return K(0);
        return c_[static_cast<size_t>(i)];
    }

    const std::vector<K>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = K(0) - x;
        return r;
    }

    Poly operator+(const Poly& o) const {
        std::vector<K> v(std::max(c_.size(), o.c_.size()), K(0));
        for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
        return Poly(std::move(v));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<K> v(c_.size() + o.c_.size() - 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                v[i + j] = v[i + j] + c_[i] * o.c_[j];
        return Poly(std::move(v));
    }

    Poly operator*(const K& s) const {
        Poly r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }

    K eval(const K& x) const {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // f(sX)
    Poly scale_arg(const K& s) const {
        Poly r = *this;
        K pw(1);
        for (size_t i = 0; i < r.c_.size(); ++i) {
            r.c_[i] = r.c_[i] * pw;
            pw = pw * s;
        }
        r.normalize();
        return r;
    }

    // f(X^d)
    Poly inflate(long d) const {
        if (d < 1) throw std::invalid_argument("Poly::inflate: d >= 1");
        if (is_zero()) return Poly();
        std::vector<K> v(static_cast<size_t>(degree()) * d + 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i) v[i * d] = c_[i];
        return Poly(std::move(v));
    }

    // f(-X)
    Poly flip_sign_arg() const {
        Poly r = *this;
        for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = K(0) - r.c_[i];
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> v(c_.size() - 1, K(0));
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<int>(i));
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / leading());
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }

    std::vector<K> c_;  // c_[i] is the coefficient of X^i
};

template <class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& f, const Poly<K>& g) {
    if (g.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    if (f.degree() < g.degree()) return {Poly<K>(), f};
    std::vector<K> r(f.coeffs());
    long dg = g.degree();
    std::vector<K> q(static_cast<size_t>(f.degree() - dg) + 1, K(0));
    K inv_lead = K(1) / g.leading();
    for (long i = f.degree(); i >= dg; --i) {
        K c = r[static_cast<size_t>(i)];
        if (c == K(0)) continue;
        K t = c * inv_lead;
        q[static_cast<size_t>(i - dg)] = t;
        for (long j = 0; j <= dg; ++j)
            r[static_cast<size_t>(i - dg + j)] = r[static_cast<size_t>(i - dg + j)] - t * g.coeff(j);
    }
    return {Poly<K>(std::move(q)), Poly<K>(std::move(r))};
}

template <class K>
Poly<K> operator/(const Poly<K>& f, const Poly<K>& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) throw std::domain_error("Poly operator/: inexact division");
    return q;
}

// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd_poly(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

template <class K>
Poly<K> squarefree_part(const Poly<K>& f) {
    if (f.degree() <= 0) return f;
    Poly<K> g = gcd_poly(f, f.derivative());
    return f / g;
}

// Res(f, g) by the Euclidean remainder sequence:
//   Res(f, g) = (-1)^(df*dg) * lc(g)^(df - dr) * Res(g, r),  r = f mod g.
template <class K>
K resultant(Poly<K> f, Poly<K> g) {
    if (f.is_zero() || g.is_zero()) return K(0);
    K acc(1);
    bool flip = false;
    while (true) {
        long df = f.degree(), dg = g.degree();
        if (dg == 0) {
            K r = acc;
            K c = g.leading();
            K p(1);
            for (long i = 0; i < df; ++i) p = p * c;
            r = r * p;
            return flip ? K(0) - r : r;
        }
        if (df < dg) {
            if ((df & 1) && (dg & 1)) flip = !flip;
            std::swap(f, g);
            continue;
        }
        auto [q, r] = divrem(f, g);
        (void)q;
        if (r.is_zero()) return K(0);
        if ((df & 1) && (dg & 1)) flip = !flip;
        K c = g.leading();
        K p(1);
        for (long i = 0; i < df - r.degree(); ++i) p = p * c;
        acc = acc * p;
        f = std::move(g);
        g = std::move(r);
    }
}

// Clears denominators and content: returns primitive integer model with
// positive leading coefficient, plus nothing else (the scalar factor is
// irrelevant to factorization degree patterns).
inline std::vector<Int> integer_model(const Poly<Rational>& f) {
    if (f.is_zero()) return {};
    Int lcm(1);
    for (const auto& c : f.coeffs())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> v;
    v.reserve(f.coeffs().size());
    Int content(0);
    for (const auto& c : f.coeffs()) {
        Int z = c.get_num() * (lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        v.push_back(std::move(z));
    }
    if (content == 0) content = 1;
    for (auto& z : v) z /= content;
    if (v.back() < 0)
        for (auto& z : v) z = -z;
    return v;
}

}  // namespace heckescan
