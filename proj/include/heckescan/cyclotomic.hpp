#pragma once

// Exact elements of cyclotomic fields Q(zeta_m), kept canonical: reduced
// modulo the m-th cyclotomic polynomial and with m minimized to the
// smallest cyclotomic field containing the element. Canonical form makes
// equality, realness and rationality plain coordinate checks.

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckescan/interval.hpp"
#include "heckescan/poly.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

inline const Poly<Rational>& cyclotomic_poly(long m) {
    static std::map<long, Poly<Rational>> memo;
    static std::shared_mutex mtx;
    {
        std::shared_lock lk(mtx);
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
    }
    std::unique_lock lk(mtx);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    // Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d, computed bottom up.
    for (long d = 1; d <= m; ++d) {
        if (m % d != 0 || memo.count(d)) continue;
        std::vector<Rational> xd1(static_cast<size_t>(d) + 1, Rational(0));
        xd1[0] = -1;
        xd1.back() = 1;
        Poly<Rational> f{std::move(xd1)};
        for (long e = 1; e < d; ++e)
            if (d % e == 0) f = f / memo.at(e);
        memo.emplace(d, std::move(f));
    }
    return memo.at(m);
}

namespace detail {

// Solves A y = x over Q (A given by columns); empty optional if inconsistent.
inline std::optional<std::vector<Rational>> solve_columns(
    const std::vector<std::vector<Rational>>& cols, std::vector<Rational> x) {
    size_t ncols = cols.size();
    size_t nrows = x.size();
    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols + 1, Rational(0)));
    for (size_t j = 0; j < ncols; ++j)
        for (size_t i = 0; i < nrows && i < cols[j].size(); ++i) a[i][j] = cols[j][i];
    for (size_t i = 0; i < nrows; ++i) a[i][ncols] = x[i];

    std::vector<long> pivot_col(nrows, -1);
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t sel = row;
        while (sel < nrows && a[sel][col] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(a[sel], a[row]);
        Rational inv = 1 / a[row][col];
        for (size_t j = col; j <= ncols; ++j) a[row][j] *= inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (size_t j = col; j <= ncols; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col[row] = static_cast<long>(col);
        ++row;
    }
    for (size_t i = row; i < nrows; ++i)
        if (a[i][ncols] != 0) return std::nullopt;
    std::vector<Rational> y(ncols, Rational(0));
    for (size_t i = 0; i < row; ++i) y[static_cast<size_t>(pivot_col[i])] = a[i][ncols];
    return y;
}

}  // namespace detail

class CycNumber {
public:
    CycNumber() : order_(1), c_{Rational(0)} {}
    CycNumber(int v) : order_(1), c_{Rational(v)} {}
    CycNumber(long v) : order_(1), c_{Rational(static_cast<long>(v))} {}
    CycNumber(Rational v) : order_(1), c_{std::move(v)} {}

    // Canonicalizing constructor: coefficients are given in
    // powers of zeta_order, any length up to order.
    static CycNumber from_parts(long order, std::vector<Rational> raw) {
        if (order < 1) throw std::invalid_argument("CycNumber: order >= 1 required");
        if (raw.size() > static_cast<size_t>(order))
            throw std::invalid_argument("CycNumber: too many coefficients");
        CycNumber x;
        x.assign_reduced(order, Poly<Rational>(std::move(raw)));
        return x;
    }

    static CycNumber zeta(long m) { return root_of_unity(m, 1); }

    static CycNumber root_of_unity(long m, long k) {
        if (m < 1) throw std::invalid_argument("root_of_unity: m >= 1 required");
        k = ((k % m) + m) % m;
        std::vector<Rational> raw(static_cast<size_t>(k) + 1, Rational(0));
        raw.back() = 1;
        return from_parts(m, std::move(raw));
    }

    long order() const { return order_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const { return order_ == 1 && c_[0] == 0; }
    bool is_rational() const { return order_ == 1; }

    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("CycNumber::to_rational: not rational");
        return c_[0];
    }

    bool operator==(const CycNumber& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const CycNumber& o) const { return !(*this == o); }

    CycNumber operator-() const {
        CycNumber r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    CycNumber operator+(const CycNumber& o) const {
        if (order_ == 1 && o.order_ == 1) return CycNumber(c_[0] + o.c_[0]);
        long m = lcm_long(order_, o.order_);
        Poly<Rational> a = lift_poly(m), b = o.lift_poly(m);
        CycNumber r;
        r.assign_reduced(m, a + b);
        return r;
    }

    CycNumber operator-(const CycNumber& o) const { return *this + (-o); }

    CycNumber operator*(const CycNumber& o) const {
        if (order_ == 1 && o.order_ == 1) return CycNumber(c_[0] * o.c_[0]);
        if (order_ == 1) return o.scaled(c_[0]);
        if (o.order_ == 1) return scaled(o.c_[0]);
        long m = lcm_long(order_, o.order_);
        Poly<Rational> a = lift_poly(m), b = o.lift_poly(m);
        CycNumber r;
        r.assign_reduced(m, a * b);
        return r;
    }

    CycNumber inverse() const {
        if (is_zero()) throw std::domain_error("CycNumber::inverse of zero");
        if (order_ == 1) return CycNumber(1 / c_[0]);
        // Extended Euclid against Phi_m; Phi_m irreducible so the gcd is 1.
        const Poly<Rational>& phi = cyclotomic_poly(order_);
        Poly<Rational> r0 = phi, r1 = Poly<Rational>(c_);
        Poly<Rational> s0 = Poly<Rational>::zero(), s1 = Poly<Rational>::one();
        while (!r1.is_zero()) {
            auto [q, r2] = divrem(r0, r1);
            Poly<Rational> s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.degree() != 0) throw std::logic_error("CycNumber::inverse: gcd with Phi_m not constant");
        Poly<Rational> inv = s0 * (Rational(1) / r0.coeff(0));
        CycNumber r;
        r.assign_reduced(order_, inv);
        return r;
    }

    CycNumber operator/(const CycNumber& o) const { return *this * o.inverse(); }

    CycNumber pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNumber acc(1), base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) acc = acc * base;
            base = base * base;
            u >>= 1;
        }
        return acc;
    }

    // Galois action zeta -> zeta^a; needs gcd(a, order) = 1.
    CycNumber galois(long a) const {
        long m = order_;
        a = ((a % m) + m) % m;
        if (gcd_long(a, m) != 1) throw std::invalid_argument("CycNumber::galois: exponent not coprime");
        if (m == 1) return *this;
        std::vector<Rational> raw(static_cast<size_t>(m), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            raw[static_cast<size_t>((static_cast<long>(i) * a) % m)] += c_[i];
        }
        CycNumber r;
        r.assign_reduced(m, Poly<Rational>(std::move(raw)));
        return r;
    }

    CycNumber conj() const { return order_ == 1 ? *this : galois(order_ - 1); }

    bool is_real() const { return conj() == *this; }

    bool is_root_of_unity() const {
        if (is_zero()) return false;
        return pow(lcm_long(2, order_)) == CycNumber(1);
    }

    CycNumber real_part() const {
        return (*this + conj()).scaled(make_rational(1, 2));
    }

    CycNumber imag_part() const {
        // (x - conj x) / (2i)
        CycNumber diff = *this - conj();
        CycNumber two_i = root_of_unity(4, 1).scaled(Rational(2));
        return diff / two_i;
    }

    CycNumber scaled(const Rational& s) const {
        if (s == 0) return CycNumber();
        CycNumber r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    ComplexInterval embed(mpfr_prec_t bits) const {
        ComplexInterval acc = ComplexInterval::exact_int(0, bits);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            RealInterval ci = RealInterval::from_rational(c_[i], bits);
            RealInterval re = cos_2pi_frac(static_cast<long>(i), order_, bits);
            RealInterval im = sin_2pi_frac(static_cast<long>(i), order_, bits);
            acc = acc + ComplexInterval{ci * re, ci * im};
        }
        return acc;
    }

    // Minimal polynomial over Q, monic; degree divides phi(order).
    Poly<Rational> minimal_polynomial() const {
        size_t dim = c_.size();
        std::vector<std::vector<Rational>> pows;  // coords of x^0, x^1, ...
        CycNumber p(1);
        for (size_t k = 0; k <= dim; ++k) {
            pows.push_back(p.lift_coords(order_, dim));
            auto sol = detail::solve_columns(
                std::vector<std::vector<Rational>>(pows.begin(), pows.end() - 1), pows.back());
            if (k > 0 && sol) {
                std::vector<Rational> mc(k + 1, Rational(0));
                for (size_t i = 0; i < k; ++i) mc[i] = -(*sol)[i];
                mc[k] = 1;
                return Poly<Rational>(std::move(mc));
            }
            p = p * (*this);
        }
        throw std::logic_error("CycNumber::minimal_polynomial: no relation found");
    }

    std::string to_string() const {
        if (order_ == 1) return heckescan::to_string(c_[0]);
        std::string s;
        bool any = false;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (any) s += " + ";
            s += heckescan::to_string(c_[i]);
            if (i >= 1) s += "*z" + std::to_string(order_) + (i > 1 ? "^" + std::to_string(i) : "");
            any = true;
        }
        if (!any) s = "0";
        return s;
    }

private:
    // coords as a vector of given length in Q(zeta_m), assuming order_ | m.
    std::vector<Rational> lift_coords(long m, size_t len) const {
        Poly<Rational> p = lift_poly(m);
        std::vector<Rational> v(len, Rational(0));
        for (long i = 0; i <= p.degree() && i < static_cast<long>(len); ++i)
            v[static_cast<size_t>(i)] = p.coeff(i);
        return v;
    }

    Poly<Rational> lift_poly(long m) const {
        if (m == order_) return Poly<Rational>(c_);
        if (m % order_ != 0) throw std::logic_error("CycNumber::lift_poly: order does not divide target");
        long step = m / order_;
        std::vector<Rational> raw;
        raw.resize(c_.size() * static_cast<size_t>(step), Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) raw[i * static_cast<size_t>(step)] = c_[i];
        auto [q, r] = divrem(Poly<Rational>(std::move(raw)), cyclotomic_poly(m));
        (void)q;
        return r;
    }

    void assign_reduced(long m, Poly<Rational> p) {
        auto [q, r] = divrem(p, cyclotomic_poly(m));
        (void)q;
        std::vector<Rational> coords(static_cast<size_t>(euler_phi(m)), Rational(0));
        for (long i = 0; i <= r.degree(); ++i) coords[static_cast<size_t>(i)] = r.coeff(i);
        // Rational fast path.
        bool rat = true;
        for (size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) { rat = false; break; }
        if (rat) {
            order_ = 1;
            c_ = {coords[0]};
            return;
        }
        minimize(m, std::move(coords));
    }

    void minimize(long m, std::vector<Rational> coords) {
        bool descended = true;
        while (descended && m > 1) {
            descended = false;
            for (auto [q, e] : factorize(m)) {
                (void)e;
                long d = m / q;
                if (!fixed_by_subgroup(m, d, coords)) continue;
                auto down = descend_coords(m, d, coords);
                if (!down) throw std::logic_error("CycNumber::minimize: Galois-fixed but not in subfield");
                m = d;
                coords = std::move(*down);
                if (m == 1) break;
                descended = true;
                break;
            }
            // Re-run the rational shortcut after a descent.
            if (m > 1) {
                bool rat = true;
                for (size_t i = 1; i < coords.size(); ++i)
                    if (coords[i] != 0) { rat = false; break; }
                if (rat) {
                    m = 1;
                    coords = {coords[0]};
                }
            }
        }
        order_ = m;
        coords.resize(static_cast<size_t>(euler_phi(m)), Rational(0));
        c_ = std::move(coords);
    }

    // Is the element (coords in Q(zeta_m)) fixed by Gal(Q(zeta_m)/Q(zeta_d))?
    static bool fixed_by_subgroup(long m, long d, const std::vector<Rational>& coords) {
        for (long t = 1; t < m / d; ++t) {
            long a = (1 + t * d) % m;
            if (gcd_long(a, m) != 1) continue;
            if (apply_galois_raw(m, a, coords) != coords) return false;
        }
        return true;
    }

    static std::vector<Rational> apply_galois_raw(long m, long a, const std::vector<Rational>& coords) {
        std::vector<Rational> raw(static_cast<size_t>(m), Rational(0));
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            raw[static_cast<size_t>((static_cast<long>(i) * a) % m)] += coords[i];
        }
        auto [q, r] = divrem(Poly<Rational>(std::move(raw)), cyclotomic_poly(m));
        (void)q;
        std::vector<Rational> out(coords.size(), Rational(0));
        for (long i = 0; i <= r.degree(); ++i) out[static_cast<size_t>(i)] = r.coeff(i);
        return out;
    }

    static std::optional<std::vector<Rational>> descend_coords(long m, long d,
                                                               const std::vector<Rational>& coords) {
        long phid = euler_phi(d);
        long step = m / d;
        std::vector<std::vector<Rational>> cols;
        cols.reserve(static_cast<size_t>(phid));
        for (long j = 0; j < phid; ++j) {
            std::vector<Rational> raw(static_cast<size_t>(j * step) + 1, Rational(0));
            raw.back() = 1;
            auto [qq, r] = divrem(Poly<Rational>(std::move(raw)), cyclotomic_poly(m));
            (void)qq;
            std::vector<Rational> col(coords.size(), Rational(0));
            for (long i = 0; i <= r.degree(); ++i) col[static_cast<size_t>(i)] = r.coeff(i);
            cols.push_back(std::move(col));
        }
        return detail::solve_columns(cols, coords);
    }

    long order_;
    std::vector<Rational> c_;
};

inline CycNumber operator*(const Rational& s, const CycNumber& x) { return x.scaled(s); }

struct CertifiedSign {
    int sign = 0;        // -1, 0, +1 (0 only when exactly zero)
    bool decided = false;
    long bits_used = 0;
};

// Sign of a real cyclotomic number: exact zero test first, then interval
// embeddings at doubling precision up to the cap. The doubling never
// reports a wrong sign; it can only give up (decided = false).
inline CertifiedSign certified_sign_real(const CycNumber& x, long start_bits = 64,
                                         long cap_bits = 4096) {
    if (x.is_zero()) return {0, true, 0};
    if (x.is_rational()) return {sign_of(x.to_rational()), true, 0};
    for (long bits = start_bits; bits <= cap_bits; bits *= 2) {
        ComplexInterval e = x.embed(bits);
        IntervalSign s = e.re.sign();
        if (s == IntervalSign::Positive) return {+1, true, bits};
        if (s == IntervalSign::Negative) return {-1, true, bits};
    }
    return {0, false, cap_bits};
}

}  // namespace heckescan
