#pragma once

// Closed-form rational generating functions of the chi0-normalized
// coefficient sequences A(n) = a(p^n)/chi0(p)^n of an eigenform, and the
// root-of-unity filters that cut them to exponent classes.
//
// All of them live in the symmetric generators of the Satake pair:
// trace t = A(1) (real) and norm p^(k-1), via the divided power
// differences V_n = (alpha^n - beta^n)/(alpha - beta) and the power sums
// C_n = alpha^n + beta^n. The pair itself is never materialized as
// algebraic numbers; where per-class formulas are asymmetric in alpha
// and beta, arithmetic happens in the rank-2 algebra K[alpha]/(alpha^2 -
// t*alpha + norm) and the antisymmetric component must cancel exactly.
//
// The series of A(jn) (exponents jn, j >= 2) is
//     (1 + norm * V_(j-1) X^j) / (1 - C_j X^j + norm^j X^(2j)),
// with a nontrivial numerator. Dropping it (or writing C_j as A(j)) only
// works at j = 1; the dual-route tests in this repository check the two
// constructions against each other and against the coefficient tables.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/dirichlet.hpp"
#include "heckescan/interval.hpp"
#include "heckescan/poly.hpp"
#include "heckescan/power_series.hpp"
#include "heckescan/qexpand.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct DegeneratePairError : std::runtime_error {
    explicit DegeneratePairError(const std::string& w) : std::runtime_error(w) {}
};
struct PrimeDividesLevelError : std::runtime_error {
    explicit PrimeDividesLevelError(const std::string& w) : std::runtime_error(w) {}
};
struct NotRealError : std::runtime_error {
    explicit NotRealError(const std::string& w) : std::runtime_error(w) {}
};
struct EvenJError : std::invalid_argument {
    explicit EvenJError(const std::string& w) : std::invalid_argument(w) {}
};
struct PoleAtError : std::runtime_error {
    Rational s;
    explicit PoleAtError(Rational s_) : std::runtime_error("denominator vanishes at p^-s, s = " + to_string(s_)), s(std::move(s_)) {}
};
struct PrecisionExhaustedError : std::runtime_error {
    explicit PrecisionExhaustedError(const std::string& w) : std::runtime_error(w) {}
};

class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly<CycNumber>::one()) {}

    RationalFunction(Poly<CycNumber> num, Poly<CycNumber> den) : num_(std::move(num)), den_(std::move(den)) {
        reduce_normalize();
    }

    static RationalFunction from_poly(Poly<CycNumber> p) {
        return RationalFunction(std::move(p), Poly<CycNumber>::one());
    }
    static RationalFunction constant(CycNumber c) {
        return from_poly(Poly<CycNumber>::constant(std::move(c)));
    }
    static RationalFunction one() { return constant(CycNumber(1)); }
    static RationalFunction monomial(CycNumber c, long e) {
        return from_poly(Poly<CycNumber>::monomial(std::move(c), e));
    }

    const Poly<CycNumber>& num() const { return num_; }
    const Poly<CycNumber>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction operator+(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        if (o.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(num_ * o.den_, den_ * o.num_);
    }

    RationalFunction scale_arg(const CycNumber& c) const {
        return RationalFunction(num_.scale_arg(c), den_.scale_arg(c));
    }
    RationalFunction inflate(long d) const {
        return RationalFunction(num_.inflate(d), den_.inflate(d));
    }

    // Power series coefficients by the linear recurrence the denominator
    // defines; den(0) = 1 makes it explicit.
    PowerSeries<CycNumber> expand(long order) const {
        PowerSeries<CycNumber> s(order);
        long dd = den_.degree();
        for (long n = 0; n < order; ++n) {
            CycNumber c = num_.coeff(n);
            for (long i = 1; i <= dd && i <= n; ++i)
                c = c - den_.coeff(i) * s.coeff(n - i);
            s.coeff(n) = c;
        }
        return s;
    }

private:
    void reduce_normalize() {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<CycNumber>::one();
            return;
        }
        Poly<CycNumber> g = gcd_poly(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        CycNumber c0 = den_.coeff(0);
        if (c0.is_zero())
            throw std::domain_error("RationalFunction: denominator constant term is 0");
        CycNumber inv = c0.inverse();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }

    Poly<CycNumber> num_, den_;
};

// Satake pair of one (form, chi0, p): everything downstream depends only
// on the real trace t = a(p)/chi0(p) and norm p^(k-1).
struct ConjugatePairData {
    CycNumber trace;
    Rational norm;
    int weight = 12;
    long p = 2;
    CycNumber deligne_margin;  // 4*norm - trace^2, real, >= 0
    bool degenerate = false;   // margin exactly 0 (alpha = beta)

    static ConjugatePairData from_trace(CycNumber t, Rational norm, int weight, long p) {
        ConjugatePairData d;
        d.trace = std::move(t);
        d.norm = std::move(norm);
        d.weight = weight;
        d.p = p;
        if (!d.trace.is_real()) throw NotRealError("pair trace is not real");
        d.deligne_margin = CycNumber(4 * d.norm) - d.trace * d.trace;
        CertifiedSign s = certified_sign_real(d.deligne_margin);
        if (!s.decided) throw PrecisionExhaustedError("cannot certify Deligne margin sign");
        if (s.sign < 0) throw std::domain_error("Deligne bound violated; table invalid");
        d.degenerate = (s.sign == 0);
        return d;
    }
};

inline ConjugatePairData make_pair_data(const CoeffTable& t, const DirichletCharacter& chi0,
                                        long p) {
    long N = t.spec().level;
    if (N > 1 && p > 1 && N % p == 0)
        throw PrimeDividesLevelError("p = " + std::to_string(p) + " divides the level");
    CycNumber c0 = chi0.value(p);
    if (c0.is_zero()) throw PrimeDividesLevelError("chi0(p) = 0");
    CycNumber trace = t.a(p) / c0;
    return ConjugatePairData::from_trace(std::move(trace), t.p_to_km1(p), t.spec().weight, p);
}

// V_n = (alpha^n - beta^n)/(alpha - beta): V_0 = 0, V_1 = 1,
// V_(n+1) = t V_n - norm V_(n-1). A(n) = V_(n+1).
inline CycNumber V_sequence(const ConjugatePairData& d, long n) {
    if (n < 0) throw std::invalid_argument("V_sequence: n >= 0");
    CycNumber prev(0), cur(1);
    if (n == 0) return prev;
    CycNumber nn(Rational(d.norm));
    for (long i = 1; i < n; ++i) {
        CycNumber next = d.trace * cur - nn * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// C_n = alpha^n + beta^n: C_0 = 2, C_1 = t, same recurrence.
inline CycNumber C_sequence(const ConjugatePairData& d, long n) {
    if (n < 0) throw std::invalid_argument("C_sequence: n >= 0");
    CycNumber prev(2), cur = d.trace;
    if (n == 0) return prev;
    CycNumber nn(Rational(d.norm));
    for (long i = 1; i < n; ++i) {
        CycNumber next = d.trace * cur - nn * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// P(X) = sum A(n) X^n = 1/(1 - tX + norm X^2).
inline RationalFunction closed_P(const ConjugatePairData& d) {
    std::vector<CycNumber> den{CycNumber(1), -d.trace, CycNumber(Rational(d.norm))};
    return RationalFunction(Poly<CycNumber>::one(), Poly<CycNumber>(std::move(den)));
}

// sum_n A(jn) X^(jn) = (1 + norm V_(j-1) X^j)/(1 - C_j X^j + norm^j X^(2j)).
inline RationalFunction closed_multiples(const ConjugatePairData& d, long j) {
    if (j < 1) throw std::invalid_argument("closed_multiples: j >= 1");
    CycNumber nn(Rational(d.norm));
    Poly<CycNumber> num = Poly<CycNumber>::one() +
                          Poly<CycNumber>::monomial(nn * V_sequence(d, j - 1), j);
    Poly<CycNumber> den = Poly<CycNumber>::one() -
                          Poly<CycNumber>::monomial(C_sequence(d, j), j) +
                          Poly<CycNumber>::monomial(CycNumber(pow_rational(d.norm, j)), 2 * j);
    return RationalFunction(std::move(num), std::move(den));
}

inline RationalFunction closed_S0(const ConjugatePairData& d) { return closed_multiples(d, 2); }

// S_1(X) = t X / (1 - (t^2 - 2 norm) X^2 + norm^2 X^4).
inline RationalFunction closed_S1(const ConjugatePairData& d) {
    Poly<CycNumber> num = Poly<CycNumber>::monomial(d.trace, 1);
    Poly<CycNumber> den = Poly<CycNumber>::one() -
                          Poly<CycNumber>::monomial(C_sequence(d, 2), 2) +
                          Poly<CycNumber>::monomial(CycNumber(pow_rational(d.norm, 2)), 4);
    return RationalFunction(std::move(num), std::move(den));
}

// Odd-class series sum_n A(j(1+2n)) X^(j(1+2n)) for odd j, as the exact
// difference (j-multiples) - (2j-multiples).
inline RationalFunction closed_S1j(const ConjugatePairData& d, long j) {
    if (j < 1 || j % 2 == 0) throw EvenJError("closed_S1j: j must be odd and >= 1");
    return closed_multiples(d, j) - closed_multiples(d, 2 * j);
}

// norm V_(m-1) X^m - V_m X^(m-1) + 1: the real-coefficient polynomial
// obtained from the class-decomposition denominator after dividing by
// (alpha - beta). Identically zero at m = 1.
inline Poly<CycNumber> theorem5_polynomial(const ConjugatePairData& d, long m) {
    if (m < 1) throw std::invalid_argument("theorem5_polynomial: m >= 1");
    Poly<CycNumber> w = Poly<CycNumber>::monomial(CycNumber(Rational(d.norm)) * V_sequence(d, m - 1), m);
    w = w - Poly<CycNumber>::monomial(V_sequence(d, m), m - 1);
    w = w + Poly<CycNumber>::one();
    return w;
}

// Residue-class filter: (1/m) sum_mu omega^(-l mu) R(omega^mu X), omega a
// primitive m-th root of unity. Exponents = l mod m survive. Terms are
// summed over one common denominator, then reduced once.
inline RationalFunction filter_series(const RationalFunction& R, long m, long l) {
    if (m < 1) throw std::invalid_argument("filter_series: m >= 1");
    l = ((l % m) + m) % m;
    if (m == 1) return R;
    Poly<CycNumber> acc_num;
    Poly<CycNumber> acc_den = Poly<CycNumber>::one();
    for (long mu = 0; mu < m; ++mu) {
        CycNumber om = CycNumber::root_of_unity(m, mu);
        CycNumber w = CycNumber::root_of_unity(m, (-l * mu) % m);
        Poly<CycNumber> tn = R.num().scale_arg(om) * w;
        Poly<CycNumber> td = R.den().scale_arg(om);
        acc_num = acc_num * td + tn * acc_den;
        acc_den = acc_den * td;
    }
    CycNumber inv_m = CycNumber(Rational(1, m));
    return RationalFunction(acc_num * inv_m, std::move(acc_den));
}

struct FilterSpec {
    enum class Kind { AllMultiples, OddMultiples, ResidueClass };
    Kind kind = Kind::AllMultiples;
    long j = 1;  // AllMultiples / OddMultiples
    long l = 0, m = 1;  // ResidueClass

    static FilterSpec all_multiples(long j) {
        if (j < 1) throw std::invalid_argument("FilterSpec: j >= 1");
        return {Kind::AllMultiples, j, 0, 1};
    }
    static FilterSpec odd_multiples(long j) {
        if (j < 1 || j % 2 == 0) throw EvenJError("FilterSpec: odd multiples need odd j");
        return {Kind::OddMultiples, j, 0, 1};
    }
    static FilterSpec residue_class(long l, long m) {
        if (m < 1 || l < 0 || l >= m) throw std::invalid_argument("FilterSpec: 0 <= l < m");
        return {Kind::ResidueClass, 0, l, m};
    }

    // n-th exponent of the selected class, n = 0, 1, ...
    long exponent(long n) const {
        switch (kind) {
            case Kind::AllMultiples: return j * n;
            case Kind::OddMultiples: return j * (1 + 2 * n);
            case Kind::ResidueClass: return l + m * n;
        }
        return 0;
    }

    bool selects(long e) const {
        switch (kind) {
            case Kind::AllMultiples: return e % j == 0;
            case Kind::OddMultiples: return e % j == 0 && (e / j) % 2 == 1;
            case Kind::ResidueClass: return e % m == l;
        }
        return false;
    }

    std::string name() const {
        switch (kind) {
            case Kind::AllMultiples: return "all";
            case Kind::OddMultiples: return "odd";
            case Kind::ResidueClass: return "class";
        }
        return "?";
    }
};

inline RationalFunction filter_series(const RationalFunction& R, const FilterSpec& spec) {
    switch (spec.kind) {
        case FilterSpec::Kind::AllMultiples:
            return filter_series(R, spec.j, 0);
        case FilterSpec::Kind::OddMultiples:
            return filter_series(filter_series(R, 2, 1), spec.j, 0);
        case FilterSpec::Kind::ResidueClass:
            return filter_series(R, spec.m, spec.l);
    }
    throw std::logic_error("filter_series: bad spec");
}

// ----- per-class closed forms via the rank-2 algebra K[alpha] -----

namespace pairalg {

// General fraction over K[X], no regularity-at-0 constraint: the class
// formulas divide by functions vanishing at X = 0 before the poles
// cancel. Normalized with monic denominator.
struct Frac {
    Poly<CycNumber> num, den = Poly<CycNumber>::one();

    Frac() = default;
    Frac(Poly<CycNumber> n, Poly<CycNumber> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::domain_error("pairalg::Frac: zero denominator");
        if (num.is_zero()) {
            den = Poly<CycNumber>::one();
            return;
        }
        Poly<CycNumber> g = gcd_poly(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        CycNumber lc = den.leading().inverse();
        num = num * lc;
        den = den * lc;
    }

    static Frac from_poly(Poly<CycNumber> p) { return Frac(std::move(p), Poly<CycNumber>::one()); }
    static Frac from_rf(const RationalFunction& r) { return Frac(r.num(), r.den()); }

    bool is_zero() const { return num.is_zero(); }

    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
    Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    Frac operator/(const Frac& o) const {
        if (o.is_zero()) throw std::domain_error("pairalg::Frac: division by zero");
        return Frac(num * o.den, den * o.num);
    }

    RationalFunction to_rf() const { return RationalFunction(num, den); }
};

// u + v*alpha with alpha^2 = t*alpha - norm.
struct Elem {
    Frac u, v;
};

struct Context {
    CycNumber t;
    CycNumber n;

    Elem scalar(Frac r) const { return {std::move(r), Frac()}; }

    Elem add(const Elem& a, const Elem& b) const { return {a.u + b.u, a.v + b.v}; }
    Elem sub(const Elem& a, const Elem& b) const { return {a.u - b.u, a.v - b.v}; }

    Elem mul(const Elem& a, const Elem& b) const {
        Frac tn = Frac::from_poly(Poly<CycNumber>::constant(t));
        Frac nn = Frac::from_poly(Poly<CycNumber>::constant(n));
        return {a.u * b.u - nn * (a.v * b.v), a.u * b.v + a.v * b.u + tn * (a.v * b.v)};
    }

    // alpha -> beta = t - alpha
    Elem conj(const Elem& a) const {
        return {a.u + Frac::from_poly(Poly<CycNumber>::constant(t)) * a.v, Frac() - a.v};
    }

    // w * conj(w) = u^2 + t u v + n v^2, a scalar.
    Frac norm_scalar(const Elem& w) const {
        Frac tn = Frac::from_poly(Poly<CycNumber>::constant(t));
        Frac nn = Frac::from_poly(Poly<CycNumber>::constant(n));
        return w.u * w.u + tn * (w.u * w.v) + nn * (w.v * w.v);
    }

    Elem inverse(const Elem& w) const {
        Frac s = norm_scalar(w);
        if (s.is_zero()) throw std::domain_error("pair algebra: inverting a zero divisor");
        Elem c = conj(w);
        return {c.u / s, c.v / s};
    }
};

}  // namespace pairalg

// S_l(X) = sum_n A(l + mn) X^(l + mn).
//
// Primary route: the classes obey S_l = tX S_(l-1) - norm X^2 S_(l-2) for
// l >= 2 (the coefficient recurrence summed over one class), so S_l =
// a_l S_0 + b_l S_1 with polynomial a_l, b_l, and the partition
// sum S_l = P pins S_1. S_0 has its own closed form.
inline std::vector<RationalFunction> closed_Sl_all(const ConjugatePairData& d, long m) {
    if (m < 1) throw std::invalid_argument("closed_Sl_all: m >= 1");
    if (m == 1) return {closed_P(d)};
    if (d.degenerate)
        throw DegeneratePairError("alpha = beta (Deligne margin 0): class formulas divide by alpha - beta");
    Poly<CycNumber> tX = Poly<CycNumber>::monomial(d.trace, 1);
    Poly<CycNumber> nX2 = Poly<CycNumber>::monomial(CycNumber(Rational(d.norm)), 2);
    std::vector<Poly<CycNumber>> a{Poly<CycNumber>::one(), Poly<CycNumber>::zero()};
    std::vector<Poly<CycNumber>> b{Poly<CycNumber>::zero(), Poly<CycNumber>::one()};
    for (long l = 2; l < m; ++l) {
        a.push_back(tX * a[static_cast<size_t>(l - 1)] - nX2 * a[static_cast<size_t>(l - 2)]);
        b.push_back(tX * b[static_cast<size_t>(l - 1)] - nX2 * b[static_cast<size_t>(l - 2)]);
    }
    Poly<CycNumber> A, B;
    for (long l = 0; l < m; ++l) {
        A = A + a[static_cast<size_t>(l)];
        B = B + b[static_cast<size_t>(l)];
    }
    RationalFunction S0 = closed_multiples(d, m);
    RationalFunction S1 =
        (closed_P(d) - RationalFunction::from_poly(A) * S0) / RationalFunction::from_poly(B);
    std::vector<RationalFunction> out;
    out.reserve(static_cast<size_t>(m));
    for (long l = 0; l < m; ++l)
        out.push_back(RationalFunction::from_poly(a[static_cast<size_t>(l)]) * S0 +
                      RationalFunction::from_poly(b[static_cast<size_t>(l)]) * S1);
    return out;
}

inline RationalFunction closed_Sl(const ConjugatePairData& d, long l, long m) {
    if (m < 1 || l < 0 || l >= m) throw std::invalid_argument("closed_Sl: 0 <= l < m");
    return closed_Sl_all(d, m)[static_cast<size_t>(l)];
}

// Second closed route, kept for cross-checking: the ansatz S_l =
// (a alpha^l + b beta^l) X^l with a + b = S_0 and sum S_l = P, solved in
// the rank-2 algebra. The antisymmetric component of the result must
// cancel exactly; a failure to cancel is a bug, not data.
inline RationalFunction closed_Sl_pair_algebra(const ConjugatePairData& d, long l, long m) {
    if (m < 1 || l < 0 || l >= m) throw std::invalid_argument("closed_Sl: 0 <= l < m");
    if (m == 1) return closed_P(d);
    if (d.degenerate)
        throw DegeneratePairError("alpha = beta (Deligne margin 0): class formulas divide by alpha - beta");

    pairalg::Context cx{d.trace, CycNumber(Rational(d.norm))};
    auto alpha_pow = [&](long e) -> pairalg::Elem {
        if (e == 0) return cx.scalar(pairalg::Frac::from_poly(Poly<CycNumber>::one()));
        return {pairalg::Frac::from_poly(Poly<CycNumber>::constant(-cx.n * V_sequence(d, e - 1))),
                pairalg::Frac::from_poly(Poly<CycNumber>::constant(V_sequence(d, e)))};
    };

    // geo_a = sum_{i<m} alpha^i X^i and its conjugate.
    pairalg::Elem geo_a = cx.scalar(pairalg::Frac());
    for (long i = 0; i < m; ++i) {
        pairalg::Elem ai = alpha_pow(i);
        pairalg::Frac xi = pairalg::Frac::from_poly(Poly<CycNumber>::monomial(CycNumber(1), i));
        geo_a = cx.add(geo_a, pairalg::Elem{ai.u * xi, ai.v * xi});
    }
    pairalg::Elem geo_b = cx.conj(geo_a);

    pairalg::Elem P = cx.scalar(pairalg::Frac::from_rf(closed_P(d)));
    pairalg::Elem S0 = cx.scalar(pairalg::Frac::from_rf(closed_multiples(d, m)));
    pairalg::Elem R = cx.sub(geo_a, geo_b);
    pairalg::Elem Rinv = cx.inverse(R);

    pairalg::Elem a = cx.mul(cx.sub(P, cx.mul(S0, geo_b)), Rinv);
    pairalg::Elem b = cx.mul(cx.sub(cx.mul(S0, geo_a), P), Rinv);

    pairalg::Elem beta_l = cx.conj(alpha_pow(l));
    pairalg::Elem sl = cx.add(cx.mul(a, alpha_pow(l)), cx.mul(b, beta_l));
    if (!sl.v.is_zero())
        throw std::logic_error("closed_Sl: antisymmetric component did not cancel");
    pairalg::Frac xl = pairalg::Frac::from_poly(Poly<CycNumber>::monomial(CycNumber(1), l));
    return (sl.u * xl).to_rf();
}

// ----- certified evaluation at X = p^(-s) -----

namespace detail {

inline bool all_coeffs_real(const Poly<CycNumber>& f) {
    for (const auto& c : f.coeffs())
        if (!c.is_real()) return false;
    return true;
}

inline RealInterval eval_real_poly(const Poly<CycNumber>& f, const RealInterval& x,
                                   mpfr_prec_t bits) {
    RealInterval acc = RealInterval::exact_int(0, bits);
    for (long i = f.degree(); i >= 0; --i)
        acc = acc * x + f.coeff(i).embed(bits).re;
    return acc;
}

inline ComplexInterval eval_complex_poly(const Poly<CycNumber>& f, const RealInterval& x,
                                         mpfr_prec_t bits) {
    ComplexInterval acc = ComplexInterval::exact_int(0, bits);
    ComplexInterval xc{x, RealInterval::exact_int(0, bits)};
    for (long i = f.degree(); i >= 0; --i)
        acc = acc * xc + f.coeff(i).embed(bits);
    return acc;
}

}  // namespace detail

// Certified enclosure of R(p^(-s)) for real rational s. Throws PoleAtError
// if the denominator interval still straddles 0 at the precision cap.
inline RealInterval dirichlet_eval(const RationalFunction& R, long p, const Rational& s,
                                   long bits, long cap_bits = 4096) {
    bool real_path = detail::all_coeffs_real(R.num()) && detail::all_coeffs_real(R.den());
    for (long B = bits; B <= std::max(bits, cap_bits); B *= 2) {
        RealInterval x = pow_rational_exponent(p, -s, B);
        if (real_path) {
            RealInterval dv = detail::eval_real_poly(R.den(), x, B);
            if (dv.contains_zero()) continue;
            return detail::eval_real_poly(R.num(), x, B) / dv;
        }
        ComplexInterval dv = detail::eval_complex_poly(R.den(), x, B);
        RealInterval mag = dv.re * dv.re + dv.im * dv.im;
        if (mag.contains_zero()) continue;
        ComplexInterval nv = detail::eval_complex_poly(R.num(), x, B);
        ComplexInterval prod = nv * ComplexInterval{dv.re, -dv.im};
        RealInterval re = prod.re / mag, im = prod.im / mag;
        if (!im.contains_zero())
            throw std::domain_error("dirichlet_eval: value is not real");
        return re;
    }
    throw PoleAtError(s);
}

// Partial sum over the first `terms` exponents of the class:
// sum A(e) p^(-s e).
inline RealInterval dirichlet_partial_sum(const CoeffTable& t, const DirichletCharacter& chi0,
                                          long p, const FilterSpec& spec, const Rational& s,
                                          long terms, long bits) {
    RealInterval acc = RealInterval::exact_int(0, bits);
    long emax = spec.exponent(terms - 1);
    std::vector<CycNumber> run = t.prime_power_run(p, emax);
    CycNumber c0 = chi0.value(p);
    if (c0.is_zero()) throw PrimeDividesLevelError("chi0(p) = 0");
    for (long n = 0; n < terms; ++n) {
        long e = spec.exponent(n);
        CycNumber val = run[static_cast<size_t>(e)] / c0.pow(e);
        if (!val.is_real()) throw NotRealError("normalized coefficient not real");
        RealInterval v = val.embed(bits).re;
        acc = acc + v * pow_rational_exponent(p, -s * Rational(e), bits);
    }
    return acc;
}

// Upper bound for the omitted tail, from Deligne: |A(e)| <= (e+1) p^((k-1)e/2).
// Summed over all integers e >= E (a superset of the class exponents).
inline RealInterval dirichlet_tail_bound(const ConjugatePairData& d, const FilterSpec& spec,
                                         const Rational& s, long terms, long bits) {
    Rational expo = Rational(d.weight - 1, 2) - s;
    RealInterval r = pow_rational_exponent(d.p, expo, bits);
    if (r.sign() != IntervalSign::Positive || !(mpfr_cmp_si(r.hi(), 1) < 0))
        throw std::domain_error("dirichlet_tail_bound: series does not converge at this s");
    long E = spec.exponent(terms);
    RealInterval one = RealInterval::exact_int(1, bits);
    RealInterval rE = r.pow_uint(static_cast<unsigned long>(E));
    RealInterval en = RealInterval::exact_int(E + 1, bits) - RealInterval::exact_int(E, bits) * r;
    RealInterval denom = (one - r) * (one - r);
    RealInterval bound = rE * en / denom;
    // tail lies in [0, hi(bound)]
    return RealInterval::hull_points(BigFloat(bits), bound.hi_value(), bits);
}

}  // namespace heckescan
