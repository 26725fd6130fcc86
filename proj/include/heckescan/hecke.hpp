#pragma once

// The generalized operators T_j(p): the Chebyshev-like polynomials G_j
// expressing them in T(p), their coefficient-level action, exact Hecke
// matrices on the level-1 Miller basis, and the hypothesis checks of the
// sign-change theorem for T_j(p) (irreducible char poly, no eigenvalue
// pair summing to zero).
//
// Two scalar sequences attached to an eigenform are kept apart:
//   prime_power_coeff: a(p^j), the coefficient at the prime power;
//   tj_eigenvalue:     G_j(a(p)) = alpha^j + beta^j, the eigenvalue of
//                      G_j(T(p)), which is what drives the recurrence
//                      a(p^(j(n+1))) = lam_j a(p^(jn)) - p^(j(k-1)) chi^j(p) a(p^(j(n-1))).
// They agree only for j <= 1; the exact relation is
//   a(p^j) = G_j(a(p)) + p^(k-1) chi(p) a(p^(j-2))   (j >= 2).

#include <stdexcept>
#include <string>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/modfactor.hpp"
#include "heckescan/poly.hpp"
#include "heckescan/qexpand.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct PrecisionTooLowError : std::runtime_error {
    explicit PrecisionTooLowError(const std::string& w) : std::runtime_error(w) {}
};

// G_j as a polynomial in the symbol T: G_0 = 2, G_1 = T,
// G_(j+1) = T G_j - (p^(k-1) chi(p)) G_(j-1). Monic of degree j for j >= 1.
inline Poly<CycNumber> tj_in_t(long j, const Rational& pk1, const CycNumber& chi_p) {
    if (j < 0) throw std::invalid_argument("tj_in_t: j >= 0");
    Poly<CycNumber> prev = Poly<CycNumber>::constant(CycNumber(2));
    if (j == 0) return prev;
    Poly<CycNumber> cur = Poly<CycNumber>::monomial(CycNumber(1), 1);
    CycNumber c = CycNumber(pk1) * chi_p;
    for (long i = 1; i < j; ++i) {
        Poly<CycNumber> next = cur * Poly<CycNumber>::monomial(CycNumber(1), 1) - prev * c;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// n-th coefficient of T_j(p)f: a(p^j n) + p^(j(k-1)) chi^j(p) a(n/p^j),
// with a(n/p^j) = 0 when p^j does not divide n.
inline CycNumber apply_tj_coeffs(const CoeffTable& t, long p, long j, long n) {
    if (j < 0 || n < 1) throw std::invalid_argument("apply_tj_coeffs: j >= 0, n >= 1");
    long e = 0, m = n;
    while (m % p == 0) { m /= p; ++e; }
    CycNumber first = t.extended(p, e + j, m);
    CycNumber second(0);
    if (e >= j) {
        Rational pjk1 = pow_rational(t.p_to_km1(p), j);
        second = t.chi(p).pow(j) * CycNumber(pjk1) * t.extended(p, e - j, m);
    }
    return first + second;
}

// a(p^j) — the prime-power coefficient itself.
inline CycNumber prime_power_coeff(const CoeffTable& t, long p, long j) {
    if (j < 0) throw std::invalid_argument("prime_power_coeff: j >= 0");
    return t.prime_power(p, j);
}

// G_j(a(p)), with parameter p^(k-1) chi(p): the T_j(p) eigenvalue of a
// normalized eigenform; equals 2 at j = 0.
inline CycNumber tj_eigenvalue(const CoeffTable& t, long p, long j) {
    if (j < 0) throw std::invalid_argument("tj_eigenvalue: j >= 0");
    CycNumber prev(2), cur = t.a(p);
    if (j == 0) return prev;
    CycNumber c = t.chi(p) * CycNumber(t.p_to_km1(p));
    for (long i = 1; i < j; ++i) {
        CycNumber next = t.a(p) * cur - c * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

struct HeckeMatrix {
    int weight = 12;
    long prime = 2;
    long j = 1;
    std::vector<std::vector<Rational>> entries;  // entries[i][j] = coeff of f_(i+1) in T f_(j+1)

    long dim() const { return static_cast<long>(entries.size()); }
};

// Matrix of T(p) on the Miller basis of S_k (level 1): column j holds the
// first d coefficients of T(p) f_j, which determine the expansion in an
// echelon basis.
inline HeckeMatrix hecke_matrix(int k, long p, long prec) {
    long d = dim_cusp_forms_level1(k);
    if (d == 0) throw std::invalid_argument("hecke_matrix: S_k is zero");
    if (prec <= p * d) throw PrecisionTooLowError("hecke_matrix: need prec > p * dim");
    auto basis = miller_basis(k, prec);
    HeckeMatrix m;
    m.weight = k;
    m.prime = p;
    m.j = 1;
    m.entries.assign(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
    for (long col = 0; col < d; ++col) {
        PowerSeries<Rational> tf = apply_hecke_series(basis[static_cast<size_t>(col)], p, k);
        for (long row = 0; row < d; ++row)
            m.entries[static_cast<size_t>(row)][static_cast<size_t>(col)] = tf.coeff(row + 1);
    }
    return m;
}

namespace detail {

inline std::vector<std::vector<Rational>> mat_mul(const std::vector<std::vector<Rational>>& a,
                                                  const std::vector<std::vector<Rational>>& b) {
    size_t n = a.size();
    std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

}  // namespace detail

// G_j evaluated at a T(p) matrix (trivial character, level 1).
inline HeckeMatrix tj_matrix(const HeckeMatrix& m1, long j) {
    if (m1.j != 1) throw std::invalid_argument("tj_matrix: input must be a T(p) matrix");
    if (j < 0) throw std::invalid_argument("tj_matrix: j >= 0");
    size_t n = m1.entries.size();
    Rational pk1(pow_int(Int(m1.prime), static_cast<unsigned long>(m1.weight - 1)));
    std::vector<std::vector<Rational>> two_id(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) two_id[i][i] = 2;
    HeckeMatrix out;
    out.weight = m1.weight;
    out.prime = m1.prime;
    out.j = j;
    if (j == 0) {
        out.entries = std::move(two_id);
        return out;
    }
    std::vector<std::vector<Rational>> prev = std::move(two_id), cur = m1.entries;
    for (long i = 1; i < j; ++i) {
        std::vector<std::vector<Rational>> next = detail::mat_mul(cur, m1.entries);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) next[r][c] -= pk1 * prev[r][c];
        prev = std::move(cur);
        cur = std::move(next);
    }
    out.entries = std::move(cur);
    return out;
}

// det(X I - M) by fraction-free (Bareiss) elimination over Q[X]; the
// divisions in the recurrence are exact.
inline Poly<Rational> char_poly(const HeckeMatrix& m) {
    using PQ = Poly<Rational>;
    long n = m.dim();
    std::vector<std::vector<PQ>> a(static_cast<size_t>(n), std::vector<PQ>(static_cast<size_t>(n)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            PQ e = PQ::constant(-m.entries[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            if (i == j) e = e + PQ::monomial(Rational(1), 1);
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(e);
        }
    int sign = 1;
    PQ prev_pivot = PQ::one();
    for (long k = 0; k + 1 < n; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
            long s = k + 1;
            while (s < n && a[static_cast<size_t>(s)][static_cast<size_t>(k)].is_zero()) ++s;
            if (s == n) return PQ::zero();  // singular over Q[X]: cannot happen for X I - M
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(s)]);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                PQ numer = a[static_cast<size_t>(k)][static_cast<size_t>(k)] * a[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                           a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = numer / prev_pivot;
            }
        prev_pivot = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    PQ det = a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
    if (sign < 0) det = -det;
    return det;
}

struct Theorem4Report {
    int weight = 12;
    long prime = 2;
    long j = 1;
    Poly<Rational> charpoly;
    IrredCertificate irreducible;
    Rational resultant_raw;               // Res(C(X), C(-X)), zero eigenvalues included
    bool eigen_sum_zero = false;          // a pair lam1 != lam2 with lam1 + lam2 = 0
    long zero_eigenvalue_multiplicity = 0;
    std::string note;
};

// Hypothesis record for the theorem on T_j(p)-eigenvalue sign structure,
// checked on level 1. Res(C(X), C(-X)) = 0 also fires when 0 is an
// eigenvalue; the pair test strips X^v first so only lam != 0 pairs count.
inline Theorem4Report theorem4_from_matrix(const HeckeMatrix& tj) {
    Theorem4Report rep;
    rep.weight = tj.weight;
    rep.prime = tj.prime;
    rep.j = tj.j;
    rep.charpoly = char_poly(tj);
    rep.irreducible = certify_irreducible(rep.charpoly);
    Poly<Rational> cminus = rep.charpoly.flip_sign_arg();
    rep.resultant_raw = resultant(rep.charpoly, cminus);
    long v = 0;
    while (rep.charpoly.coeff(v) == 0) ++v;
    rep.zero_eigenvalue_multiplicity = v;
    std::vector<Rational> dc;
    for (long i = v; i <= rep.charpoly.degree(); ++i) dc.push_back(rep.charpoly.coeff(i));
    Poly<Rational> dpart(std::move(dc));
    rep.eigen_sum_zero = resultant(dpart, dpart.flip_sign_arg()) == 0 && dpart.degree() >= 1;
    rep.note = "hypotheses checked on level 1 (S_k); the theorem's conclusion speaks of level N";
    return rep;
}

inline Theorem4Report theorem4_hypotheses(int k, long p, long j) {
    long d = dim_cusp_forms_level1(k);
    HeckeMatrix m = hecke_matrix(k, p, p * d + 2);
    return theorem4_from_matrix(tj_matrix(m, j));
}

}  // namespace heckescan
