#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "heckescan/hecke.hpp"
#include "heckescan/registry.hpp"

using namespace heckescan;

namespace {

Poly<Rational> P(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return Poly<Rational>(std::move(v));
}

}  // namespace

TEST_CASE("G_j polynomials in T") {
    Rational pk1(2048);  // 2^11
    CycNumber one(1);
    CHECK(tj_in_t(0, pk1, one) == Poly<CycNumber>::constant(CycNumber(2)));
    CHECK(tj_in_t(1, pk1, one) == Poly<CycNumber>::monomial(CycNumber(1), 1));
    // G_2 = T^2 - 2 p^(k-1) chi
    Poly<CycNumber> g2 = tj_in_t(2, pk1, one);
    CHECK(g2.degree() == 2);
    CHECK(g2.coeff(2) == CycNumber(1));
    CHECK(g2.coeff(1) == CycNumber(0));
    CHECK(g2.coeff(0) == CycNumber(Rational(-4096)));
    // G_3 = T^3 - 3 p^(k-1) chi T
    Poly<CycNumber> g3 = tj_in_t(3, pk1, one);
    CHECK(g3.coeff(3) == CycNumber(1));
    CHECK(g3.coeff(1) == CycNumber(Rational(-3 * 2048)));
    CHECK(g3.coeff(0) == CycNumber(0));
    // monic of degree j, and the recurrence G_(j+1) = T G_j - c G_(j-1)
    for (long j = 1; j <= 6; ++j) {
        Poly<CycNumber> gj = tj_in_t(j, pk1, one);
        CHECK(gj.degree() == j);
        CHECK(gj.leading() == CycNumber(1));
    }
    Poly<CycNumber> t = Poly<CycNumber>::monomial(CycNumber(1), 1);
    CHECK(tj_in_t(5, pk1, one) ==
          tj_in_t(4, pk1, one) * t - tj_in_t(3, pk1, one) * CycNumber(pk1));
}

TEST_CASE("coefficient rule of T_j(p)") {
    CoeffTable t = make_builtin("delta", 100);
    CHECK(apply_tj_coeffs(t, 2, 1, 1) == CycNumber(-24));
    // n = 2: tau(4) + 2^11 tau(1)
    CHECK(apply_tj_coeffs(t, 2, 1, 2) == CycNumber(Rational(-1472 + 2048)));
    // j = 0 is multiplication by 2
    for (long n : {1L, 5L, 12L}) CHECK(apply_tj_coeffs(t, 2, 0, n) == CycNumber(2) * t.a(n));
    // on an eigenform, prime-to-p indices see a(p^j) a(n)
    for (long n : {1L, 3L, 5L, 7L, 9L})
        CHECK(apply_tj_coeffs(t, 2, 2, n) == t.a(4) * t.a(n));
}

TEST_CASE("prime-power coefficient vs T_j eigenvalue") {
    CoeffTable t = make_builtin("delta", 100);
    CHECK(prime_power_coeff(t, 2, 1) == CycNumber(-24));
    CHECK(prime_power_coeff(t, 2, 2) == CycNumber(-1472));
    CHECK(tj_eigenvalue(t, 2, 0) == CycNumber(2));
    CHECK(tj_eigenvalue(t, 2, 1) == CycNumber(-24));
    // G_2(tau(2)) = tau(2)^2 - 2*2^11 = -3520 != tau(4)
    CHECK(tj_eigenvalue(t, 2, 2) == CycNumber(-3520));
    // the two differ by exactly p^(k-1) chi(p) a(p^(j-2)) for j >= 2
    for (const char* label : {"delta", "1.16.a", "11.2.a", "5.4.a"}) {
        CoeffTable f = make_builtin(label, 100);
        for (long p : {2L, 3L, 7L}) {
            if (f.spec().level % p == 0) continue;
            Rational pk1 = f.p_to_km1(p);
            for (long j = 2; j <= 6; ++j) {
                CycNumber correction = f.chi(p) * CycNumber(pk1) * f.prime_power(p, j - 2);
                CHECK(prime_power_coeff(f, p, j) == tj_eigenvalue(f, p, j) + correction);
            }
        }
    }
}

TEST_CASE("eigenvalue drives the subsequence recurrence") {
    // a(p^(j(n+1))) = lam_j a(p^(jn)) - p^(j(k-1)) chi^j(p) a(p^(j(n-1)))
    CoeffTable t = make_builtin("delta", 50);
    for (long p : {2L, 3L}) {
        for (long j = 1; j <= 4; ++j) {
            CycNumber lam = tj_eigenvalue(t, p, j);
            Rational pjk = pow_rational(t.p_to_km1(p), j);
            auto run = t.prime_power_run(p, 3 * j);
            for (long n = 1; n <= 2; ++n) {
                CycNumber lhs = run[static_cast<size_t>(j * (n + 1))];
                CycNumber rhs = lam * run[static_cast<size_t>(j * n)] -
                                CycNumber(pjk) * run[static_cast<size_t>(j * (n - 1))];
                CHECK(lhs == rhs);
            }
            // ... and a(p^j) in place of lam breaks it as soon as j > 1
            // (checked here so nobody "simplifies" tj_eigenvalue away)
            if (j == 2 && p == 2) {
                CycNumber wrong = prime_power_coeff(t, p, j);
                CHECK(run[4] != wrong * run[2] - CycNumber(pjk) * run[0]);
            }
        }
    }
}

TEST_CASE("hecke matrices on one-dimensional spaces") {
    HeckeMatrix m2 = hecke_matrix(12, 2, 30);
    REQUIRE(m2.dim() == 1);
    CHECK(m2.entries[0][0] == -24);
    HeckeMatrix m3 = hecke_matrix(12, 3, 40);
    CHECK(m3.entries[0][0] == 252);
    CHECK_THROWS_AS(hecke_matrix(12, 31, 20), PrecisionTooLowError);
}

TEST_CASE("hecke matrices commute") {
    for (int k : {24, 28}) {
        long d = dim_cusp_forms_level1(k);
        REQUIRE(d == 2);
        for (long p : {2L, 3L, 5L}) {
            for (long q : {3L, 7L}) {
                if (p == q) continue;
                long prec = std::max(p, q) * d + 20;
                HeckeMatrix mp = hecke_matrix(k, p, prec);
                HeckeMatrix mq = hecke_matrix(k, q, prec);
                CHECK(detail::mat_mul(mp.entries, mq.entries) ==
                      detail::mat_mul(mq.entries, mp.entries));
            }
        }
    }
}

TEST_CASE("tj_matrix recurrence and the coefficient path agree") {
    HeckeMatrix m = hecke_matrix(24, 2, 60);
    HeckeMatrix id2 = tj_matrix(m, 0);
    CHECK(id2.entries[0][0] == 2);
    CHECK(id2.entries[0][1] == 0);
    CHECK(tj_matrix(m, 1).entries == m.entries);

    // k = 12: G_2 matrix equals [G_2(tau(2))] = [-3520] = [tau(4) - 2^11]
    HeckeMatrix d2 = tj_matrix(hecke_matrix(12, 2, 30), 2);
    CHECK(d2.entries[0][0] == -3520);
    CHECK(d2.entries[0][0] == Rational(-1472) - Rational(2048));

    // matrix path vs coefficient path: G_j(T) applied through the series
    // rule g_(i+1) = T g_i - p^(k-1) g_(i-1), checked entrywise
    for (int k : {12, 24}) {
        long d = dim_cusp_forms_level1(k);
        long prec = 100;
        auto basis = miller_basis(k, prec);
        for (long p : {2L, 3L}) {
            HeckeMatrix m1 = hecke_matrix(k, p, prec);
            for (long j = 0; j <= 3; ++j) {
                HeckeMatrix mj = tj_matrix(m1, j);
                for (long col = 0; col < d; ++col) {
                    // coefficient path: iterate the T(p) series rule through
                    // the G recurrence
                    PowerSeries<Rational> g0 = basis[static_cast<size_t>(col)];
                    PowerSeries<Rational> gprev(g0.prec());
                    for (long n = 0; n < g0.prec(); ++n) gprev.coeff(n) = 2 * g0.coeff(n);
                    PowerSeries<Rational> gcur = apply_hecke_series(g0, p, k);
                    Rational pk1 = pow_rational(Rational(p), k - 1);
                    if (j == 0) gcur = gprev;
                    for (long i = 1; i < j; ++i) {
                        PowerSeries<Rational> next = apply_hecke_series(gcur, p, k);
                        long np = next.prec();
                        for (long n = 0; n < np; ++n)
                            next.coeff(n) -= pk1 * gprev.coeff(n);
                        gprev = gcur.truncate(np);
                        gcur = next;
                    }
                    // the q^row coefficient of the image is the matrix entry
                    for (long row = 1; row <= d; ++row)
                        CHECK(gcur.coeff(row) ==
                              mj.entries[static_cast<size_t>(row - 1)][static_cast<size_t>(col)]);
                }
            }
        }
    }
}

TEST_CASE("spectral mapping: char poly of G_j(M) annihilates G_j of the eigenvalues") {
    // C_j(G_j(Y)) = 0 mod C_1(Y): every eigenvalue of M maps to one of
    // G_j(M), with the polynomial identity checked exactly over Q[Y].
    for (int k : {12, 24, 28}) {
        for (long p : {2L, 3L}) {
            long d = dim_cusp_forms_level1(k);
            HeckeMatrix m = hecke_matrix(k, p, p * d + 10);
            Poly<Rational> c1 = char_poly(m);
            Rational pk1 = pow_rational(Rational(p), k - 1);
            for (long j = 2; j <= 3; ++j) {
                Poly<Rational> cj = char_poly(tj_matrix(m, j));
                // build G_j(Y) over Q
                Poly<Rational> gprev = Poly<Rational>::constant(Rational(2));
                Poly<Rational> gcur = Poly<Rational>::monomial(Rational(1), 1);
                for (long i = 1; i < j; ++i) {
                    Poly<Rational> next =
                        gcur * Poly<Rational>::monomial(Rational(1), 1) - gprev * pk1;
                    gprev = gcur;
                    gcur = next;
                }
                // compose C_j(G_j(Y)) by Horner over Q[Y]
                Poly<Rational> comp = Poly<Rational>::constant(cj.leading());
                for (long i = cj.degree() - 1; i >= 0; --i)
                    comp = comp * gcur + Poly<Rational>::constant(cj.coeff(i));
                auto [q, r] = divrem(comp, c1);
                CHECK(r.is_zero());
            }
        }
    }
}

TEST_CASE("char poly by fraction-free elimination") {
    HeckeMatrix m = hecke_matrix(12, 2, 30);
    CHECK(char_poly(m) == P({24, 1}));  // X + 24

    HeckeMatrix m24 = hecke_matrix(24, 2, 60);
    Poly<Rational> c = char_poly(m24);
    REQUIRE(c.degree() == 2);
    CHECK(c.leading() == 1);
    // numeric eigenvalue oracle: roots of X^2 - tr X + det
    double tr = Rational(m24.entries[0][0] + m24.entries[1][1]).get_d();
    double det = Rational(m24.entries[0][0] * m24.entries[1][1] -
                          m24.entries[0][1] * m24.entries[1][0]).get_d();
    CHECK(std::abs(c.coeff(1).get_d() + tr) < 1e-6 * std::abs(tr));
    CHECK(std::abs(c.coeff(0).get_d() - det) < 1e-6 * std::abs(det));
    // frozen from the oracle (the classical weight-24 Hecke polynomial)
    CHECK(c == P({-20468736, -1080, 1}));
}

TEST_CASE("theorem hypothesis reports") {
    Theorem4Report r1 = theorem4_hypotheses(12, 2, 1);
    CHECK(r1.charpoly == P({24, 1}));
    CHECK(r1.irreducible.verdict == Irreducibility::Yes);
    CHECK_FALSE(r1.eigen_sum_zero);
    CHECK(r1.resultant_raw != 0);

    Theorem4Report r0 = theorem4_hypotheses(12, 2, 0);
    CHECK(r0.charpoly == P({-2, 1}));  // X - 2
    CHECK_FALSE(r0.eigen_sum_zero);

    Theorem4Report r24 = theorem4_hypotheses(24, 2, 1);
    CHECK(r24.charpoly.degree() == 2);
    CHECK(r24.irreducible.verdict == Irreducibility::Yes);
    CHECK_FALSE(r24.eigen_sum_zero);
    // numeric oracle for the resultant sign: Res = prod (lam_i + lam_j)
    {
        double tr = 1080, disc = 1080.0 * 1080 + 4 * 20468736.0;
        double l1 = (tr + std::sqrt(disc)) / 2, l2 = (tr - std::sqrt(disc)) / 2;
        double prod = (l1 + l1) * (l1 + l2) * (l2 + l1) * (l2 + l2);
        CHECK(prod * r24.resultant_raw.get_d() > 0);
    }

    // planted diag(1, -1): eigenvalues 1 and -1 sum to zero
    HeckeMatrix planted;
    planted.weight = 24;
    planted.prime = 2;
    planted.j = 1;
    planted.entries = {{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
    Theorem4Report rp = theorem4_from_matrix(planted);
    CHECK(rp.eigen_sum_zero);
    CHECK(rp.resultant_raw == 0);

    // zero eigenvalue alone must not fire the pair flag
    HeckeMatrix zd;
    zd.weight = 24;
    zd.prime = 2;
    zd.j = 1;
    zd.entries = {{Rational(0), Rational(0)}, {Rational(0), Rational(3)}};
    Theorem4Report rz = theorem4_from_matrix(zd);
    CHECK(rz.resultant_raw == 0);
    CHECK_FALSE(rz.eigen_sum_zero);
    CHECK(rz.zero_eigenvalue_multiplicity == 1);
}
