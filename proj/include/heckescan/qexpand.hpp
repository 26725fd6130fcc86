#pragma once

// Exact Fourier coefficient tables of eigenforms: built-in constructions
// (eta products, Eisenstein/Delta combinations, Miller basis) and the
// identity checks every table must pass. Tables are immutable; values at
// prime powers beyond nmax come from the Hecke recurrence, not mutation.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/dirichlet.hpp"
#include "heckescan/power_series.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct OutOfRangeError : std::runtime_error {
    explicit OutOfRangeError(const std::string& w) : std::runtime_error(w) {}
};

enum class FormSource { EtaQuotient, Level1Product, Ingested };

struct EigenformSpec {
    std::string label;
    int weight = 12;
    long level = 1;
    DirichletCharacter character;
    FormSource source = FormSource::Level1Product;
    std::string source_detail;
};

struct TableViolation {
    long index;
    std::string reason;
};

class CoeffTable {
public:
    CoeffTable(EigenformSpec spec, std::vector<CycNumber> a)
        : spec_(std::move(spec)), a_(std::move(a)) {
        if (a_.empty()) throw std::invalid_argument("CoeffTable: empty");
        if (spec_.weight < 2 || spec_.weight % 2 != 0)
            throw std::invalid_argument("CoeffTable: weight must be even and >= 2");
        if (a_[0] != CycNumber(1))
            throw std::invalid_argument("CoeffTable: not normalized, a(1) != 1");
    }

    const EigenformSpec& spec() const { return spec_; }
    long nmax() const { return static_cast<long>(a_.size()); }

    const CycNumber& a(long n) const {
        if (n < 1 || n > nmax()) throw OutOfRangeError("a(n): n out of table range");
        return a_[static_cast<size_t>(n - 1)];
    }

    CycNumber chi(long n) const { return spec_.character.value(n); }

    Rational p_to_km1(long p) const {
        return Rational(pow_int(Int(p), static_cast<unsigned long>(spec_.weight - 1)));
    }

    // a(p^0), ..., a(p^emax): table values while p^e <= nmax, extended by
    // the Hecke recurrence a(p^(e+1)) = a(p)a(p^e) - chi(p)p^(k-1)a(p^(e-1)).
    std::vector<CycNumber> prime_power_run(long p, long emax) const {
        if (p < 2) throw std::invalid_argument("prime_power_run: p >= 2");
        if (p > nmax()) throw OutOfRangeError("prime_power_run: a(p) beyond table");
        std::vector<CycNumber> run;
        run.reserve(static_cast<size_t>(emax) + 1);
        run.push_back(CycNumber(1));
        if (emax == 0) return run;
        run.push_back(a(p));
        CycNumber cpk = chi(p) * CycNumber(p_to_km1(p));
        Int pe(p);
        for (long e = 2; e <= emax; ++e) {
            pe *= p;
            if (pe <= nmax())
                run.push_back(a(static_cast<long>(pe.get_si())));
            else
                run.push_back(run[static_cast<size_t>(e - 1)] * run[1] -
                              cpk * run[static_cast<size_t>(e - 2)]);
        }
        return run;
    }

    CycNumber prime_power(long p, long e) const { return prime_power_run(p, e).back(); }

    // a(p^e * m) for p coprime to m, m within the table.
    CycNumber extended(long p, long e, long m) const {
        if (m < 1 || m > nmax()) throw OutOfRangeError("extended: cofactor beyond table");
        if (m % p == 0) throw std::invalid_argument("extended: cofactor not coprime to p");
        if (e == 0) return a(m);
        return prime_power(p, e) * a(m);
    }

private:
    EigenformSpec spec_;
    std::vector<CycNumber> a_;
};

// One ascending pass; the first index whose identity fails is reported.
// Splitting off the smallest prime power certifies full coprime
// multiplicativity by induction.
inline std::optional<TableViolation> verify_eigenform(const CoeffTable& t) {
    if (t.a(1) != CycNumber(1)) return TableViolation{1, "a(1) != 1"};
    for (long n = 2; n <= t.nmax(); ++n) {
        long p = 2;
        while (n % p != 0) ++p;
        long m = 1, rest = n;
        long e = 0;
        while (rest % p == 0) { rest /= p; m *= p; ++e; }
        if (rest > 1) {
            if (t.a(n) != t.a(m) * t.a(rest))
                return TableViolation{n, "a(" + std::to_string(n) + ") != a(" + std::to_string(m) +
                                             ")a(" + std::to_string(rest) + ")"};
        } else if (e >= 2) {
            CycNumber expect = t.a(p) * t.a(m / p) -
                               t.chi(p) * CycNumber(t.p_to_km1(p)) * t.a(m / p / p);
            if (t.a(n) != expect)
                return TableViolation{n, "Hecke recurrence fails at p=" + std::to_string(p) +
                                             ", e=" + std::to_string(e)};
        }
    }
    return std::nullopt;
}

inline std::optional<TableViolation> verify_reality(const CoeffTable& t) {
    long N = t.spec().level;
    for (long n = 1; n <= t.nmax(); ++n) {
        if (N > 1 && gcd_long(n, N) != 1) continue;
        if (t.a(n) != t.chi(n) * t.a(n).conj())
            return TableViolation{n, "a(n) != chi(n) * conj(a(n))"};
    }
    return std::nullopt;
}

inline CoeffTable table_from_int_series(EigenformSpec spec, const PowerSeries<Int>& s, long nmax) {
    if (s.prec() < nmax + 1) throw std::invalid_argument("table_from_int_series: series too short");
    std::vector<CycNumber> a;
    a.reserve(static_cast<size_t>(nmax));
    for (long n = 1; n <= nmax; ++n) a.emplace_back(Rational(s.coeff(n)));
    return CoeffTable(std::move(spec), std::move(a));
}

// prod_d eta(q^d)^(r_d) with its q^(sum d r_d / 24) prefactor.
inline PowerSeries<Int> eta_quotient_series(const std::vector<std::pair<long, long>>& exps,
                                            long nmax) {
    long wsum = 0;
    for (auto [d, r] : exps) {
        if (d < 1 || r < 1) throw std::invalid_argument("eta_quotient_series: need d, r >= 1");
        wsum += d * r;
    }
    if (wsum % 24 != 0) throw std::invalid_argument("eta_quotient_series: weight sum not 0 mod 24");
    long h = wsum / 24;
    long body = nmax + 1 - h;
    if (body < 1) throw std::invalid_argument("eta_quotient_series: nmax below leading exponent");
    PowerSeries<Int> prod = PowerSeries<Int>::one(body);
    for (auto [d, r] : exps) {
        long pd = (body - 1) / d + 1;
        PowerSeries<Int> f = eta_series(pd).pow(static_cast<unsigned long>(r)).inflate(d);
        if (f.prec() > body) f = f.truncate(body);
        else if (f.prec() < body) {
            PowerSeries<Int> g(body);
            for (long i = 0; i < f.prec(); ++i) g.coeff(i) = f.coeff(i);
            f = g;
        }
        prod = prod * f;
    }
    return prod.shift_up(h);
}

inline long dim_cusp_forms_level1(int k) {
    if (k < 12 || k % 2 != 0) return 0;
    return k / 12 - (k % 12 == 2 ? 1 : 0);
}

// Echelonized basis f_i = q^i + O(q^(d+1)) of level-1 weight-k cusp forms,
// built from Delta^a E4^b E6^c spanning products.
inline std::vector<PowerSeries<Rational>> miller_basis(int k, long prec) {
    if (k % 2 != 0 || k < 12) throw std::invalid_argument("miller_basis: even k >= 12");
    long d = dim_cusp_forms_level1(k);
    if (prec <= d) throw std::invalid_argument("miller_basis: prec must exceed dim S_k");

    PowerSeries<Int> delta = delta_series(prec - 1);  // prec coefficients q^0..q^(prec-1)
    PowerSeries<Int> e4 = eisenstein_series_int(4, prec);
    PowerSeries<Int> e6 = eisenstein_series_int(6, prec);

    std::vector<PowerSeries<Rational>> rows;
    for (long a = 1; a <= d; ++a) {
        long rem = k - 12 * a;
        long c = (rem % 4 == 0) ? 0 : 1;
        long b = (rem - 6 * c) / 4;
        PowerSeries<Int> f = PowerSeries<Int>::one(prec);
        for (long i = 0; i < a; ++i) f = f * delta;
        f = f * e4.pow(static_cast<unsigned long>(b)) * e6.pow(static_cast<unsigned long>(c));
        PowerSeries<Rational> row(prec);
        for (long i = 0; i < prec; ++i) row.coeff(i) = Rational(f.coeff(i));
        rows.push_back(std::move(row));
    }
    // rows[a-1] has valuation a with leading coefficient 1; back-substitute.
    for (long a = d; a >= 1; --a) {
        for (long b = a + 1; b <= d; ++b) {
            Rational c = rows[static_cast<size_t>(a - 1)].coeff(b);
            if (c == 0) continue;
            PowerSeries<Rational>& fa = rows[static_cast<size_t>(a - 1)];
            const PowerSeries<Rational>& fb = rows[static_cast<size_t>(b - 1)];
            for (long i = 0; i < prec; ++i) fa.coeff(i) -= c * fb.coeff(i);
        }
    }
    return rows;
}

// Coefficientwise T(p): b(n) = a(pn) + p^(k-1) a(n/p), level 1.
inline PowerSeries<Rational> apply_hecke_series(const PowerSeries<Rational>& f, long p, int k) {
    long out = (f.prec() - 1) / p + 1;
    Rational pk1(pow_int(Int(p), static_cast<unsigned long>(k - 1)));
    PowerSeries<Rational> g(out);
    for (long n = 1; n < out; ++n) {
        Rational v = f.coeff(n * p);
        if (n % p == 0) v += pk1 * f.coeff(n / p);
        g.coeff(n) = v;
    }
    return g;
}

}  // namespace heckescan
