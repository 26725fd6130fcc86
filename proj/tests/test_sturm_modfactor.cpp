#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/modfactor.hpp"
#include "heckescan/sturm.hpp"

using namespace heckescan;

namespace {

Poly<Rational> P(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return Poly<Rational>(std::move(v));
}

Poly<Rational> from_roots(const std::vector<Rational>& roots) {
    Poly<Rational> f = Poly<Rational>::one();
    for (const auto& r : roots) f = f * Poly<Rational>(std::vector<Rational>{-r, Rational(1)});
    return f;
}

// Counts roots in (a, b) by exhaustive sampling on a fine grid, valid when
// roots are separated by more than the step; used as an independent oracle.
long sampling_root_count(const Poly<Rational>& f, const Rational& a, const Rational& b,
                         const Rational& step) {
    long count = 0;
    int prev = 0;
    for (Rational x = a; x <= b; x += step) {
        int s = sign_of(f.eval(x));
        if (s == 0) {
            ++count;  // grid hit an exact root
            prev = 0;
            continue;
        }
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace

TEST_CASE("sturm basic counts") {
    CHECK(count_real_roots(P({1, 0, 1})).count == 0);   // X^2+1
    CHECK(count_real_roots(P({-2, 0, 1})).count == 2);  // X^2-2
    CHECK(count_real_roots(P({0, 1})).count == 1);
    CHECK(count_real_roots(P({5})).count == 0);
    CHECK_THROWS(count_real_roots(Poly<Rational>()));
}

TEST_CASE("sturm with planted roots and windows") {
    auto f = from_roots({Rational(-3), Rational(0), make_rational(1, 2), Rational(2)});
    CHECK(count_real_roots(f).count == 4);
    CHECK(count_real_roots(f, SturmBound::at(Rational(0)), SturmBound::pos_inf()).count == 2);
    // open interval: endpoint roots are excluded
    CHECK(count_real_roots(f, SturmBound::at(Rational(-3)), SturmBound::at(Rational(2))).count == 2);
    // repeated roots are counted once
    auto g = f * f * P({1, 0, 1});
    CHECK(count_real_roots(g).count == 4);
}

TEST_CASE("sturm against the sampling oracle on constructed polynomials") {
    std::mt19937 rng(20240820);
    std::uniform_int_distribution<long> halves(-10, 10);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<long> picked;
        std::uniform_int_distribution<int> nroots(0, 3);
        int nr = nroots(rng);
        std::vector<Rational> roots;
        for (int i = 0; i < nr; ++i) {
            long h = halves(rng);
            if (picked.insert(h).second) roots.push_back(make_rational(h, 2));
        }
        Poly<Rational> f = from_roots(roots);
        if (trial % 2) f = f * P({1, 0, 1});  // pad with a rootless quadratic
        long expect = static_cast<long>(roots.size());
        CHECK(count_real_roots(f).count == expect);
        // sampling oracle on a grid finer than the 1/2 spacing
        long sampled = sampling_root_count(f, Rational(-6), Rational(6), make_rational(1, 8));
        CHECK(sampled == expect);
    }
}

TEST_CASE("sturm over real cyclotomic coefficients") {
    // (X - 2cos(2pi/5))(X - 2) has two real roots; coefficients in Q(zeta5)
    CycNumber c = CycNumber::zeta(5) + CycNumber::zeta(5).pow(-1);
    std::vector<CycNumber> coeffs{c * CycNumber(2), -(c + CycNumber(2)), CycNumber(1)};
    Poly<CycNumber> f(std::move(coeffs));
    RootCount rc = count_real_roots(f);
    CHECK(rc.status == CountStatus::Exact);
    CHECK(rc.count == 2);
    // X^2 + (golden) has no real roots when the constant is positive
    CycNumber golden = c + CycNumber(1);  // 2cos(2pi/5)+1 = sqrt(5)... positive
    Poly<CycNumber> g(std::vector<CycNumber>{golden, CycNumber(0), CycNumber(1)});
    CHECK(count_real_roots(g).count == 0);
}

TEST_CASE("sturm reports Undecided rather than guessing past the cap") {
    // 2cos(2pi/5) = (sqrt5 - 1)/2 and its Fibonacci convergent F144/F145,
    // which agrees to ~2^-200: the difference is nonzero but needs about
    // 200 bits to separate from zero
    CycNumber c = CycNumber::zeta(5) + CycNumber::zeta(5).pow(-1);
    Rational r = make_rational(Int("555565404224292694404015791808"),
                               Int("898923707008479989274290850145"));
    CycNumber tiny = c - CycNumber(r);
    REQUIRE_FALSE(tiny.is_zero());
    CertifiedSign cramped = certified_sign_real(tiny, 32, 64);
    CHECK_FALSE(cramped.decided);
    CertifiedSign roomy = certified_sign_real(tiny, 32, 4096);
    CHECK(roomy.decided);

    // constant term tiny: the Sturm variation at a finite bound cannot be
    // certified inside the cramped cap
    Poly<CycNumber> f(std::vector<CycNumber>{-tiny, CycNumber(0) - c, CycNumber(1)});
    SturmOptions cramped_opts{32, 64};
    RootCount rc = count_real_roots(f, SturmBound::at(Rational(0)), SturmBound::pos_inf(),
                                    cramped_opts);
    CHECK(rc.status == CountStatus::Undecided);
    RootCount fine = count_real_roots(f, SturmBound::at(Rational(0)), SturmBound::pos_inf());
    CHECK(fine.status == CountStatus::Exact);
}

TEST_CASE("degree patterns mod q") {
    CHECK(degree_pattern_mod_p(P({1, 0, 1}), 3) == std::vector<long>{2});
    CHECK(degree_pattern_mod_p(P({-1, 0, 1}), 5) == std::vector<long>({1, 1}));
    CHECK_THROWS_AS(degree_pattern_mod_p(P({1, 0, 3}), 3), BadPrimeError);   // q | lc
    CHECK_THROWS_AS(degree_pattern_mod_p(P({3, 0, 1}), 3), BadPrimeError);   // X^2 mod 3
    // X^5 - X - 1 = (X^2+X+1)(X^3+X^2+1) mod 2 but is irreducible mod 5
    CHECK(degree_pattern_mod_p(P({-1, -1, 0, 0, 0, 1}), 2) == std::vector<long>({2, 3}));
    CHECK(degree_pattern_mod_p(P({-1, -1, 0, 0, 0, 1}), 5) == std::vector<long>{5});
    // X^5 + X^2 + 1 is irreducible mod 2
    CHECK(degree_pattern_mod_p(P({1, 0, 1, 0, 0, 1}), 2) == std::vector<long>{5});
}

TEST_CASE("degree patterns match brute-force factor search for tiny q") {
    // brute force: try all monic divisors of degree <= deg/2 over F_q
    auto brute_pattern = [](std::vector<long> f, long q) {
        std::vector<long> pattern;
        auto degf = [&]() { return static_cast<long>(f.size()) - 1; };
        bool changed = true;
        while (changed && degf() > 0) {
            changed = false;
            for (long d = 1; d <= degf() / 2 && !changed; ++d) {
                // enumerate monic polys of degree d
                long total = 1;
                for (long i = 0; i < d; ++i) total *= q;
                for (long code = 0; code < total && !changed; ++code) {
                    std::vector<long> g(d + 1);
                    long c = code;
                    for (long i = 0; i < d; ++i) { g[i] = c % q; c /= q; }
                    g[d] = 1;
                    auto r = modp::mod(f, g, q);
                    if (r.empty()) {
                        f = modp::div_exact(f, g, q);
                        pattern.push_back(d);
                        changed = true;
                    }
                }
            }
        }
        if (degf() > 0) pattern.push_back(degf());
        std::sort(pattern.begin(), pattern.end());
        return pattern;
    };
    std::mt19937 rng(77);
    std::uniform_int_distribution<long> coef(-9, 9);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 12; ++trial) {
        std::vector<Rational> v(6);
        for (auto& c : v) c = coef(rng);
        if (v[5] == 0) v[5] = 1;
        Poly<Rational> f(std::move(v));
        for (long q : {2L, 3L, 5L}) {
            std::vector<long> pat;
            try {
                pat = degree_pattern_mod_p(f, q);
            } catch (const BadPrimeError&) {
                continue;
            }
            auto z = integer_model(f);
            std::vector<long> fm(z.size());
            for (size_t i = 0; i < z.size(); ++i)
                fm[i] = static_cast<long>(mpz_fdiv_ui(z[i].get_mpz_t(), q));
            modp::trim(fm);
            CHECK(pat == brute_pattern(fm, q));
            ++done;
        }
    }
    CHECK(done >= 12);
}

TEST_CASE("irreducibility certificates") {
    CHECK(certify_irreducible(P({7, 1})).verdict == Irreducibility::Yes);        // degree 1
    CHECK(certify_irreducible(P({1, 0, 1})).verdict == Irreducibility::Yes);     // X^2+1
    CHECK(certify_irreducible(P({-1, 0, 1})).verdict == Irreducibility::No);     // X^2-1
    CHECK(certify_irreducible(P({1, 2, 1})).verdict == Irreducibility::No);      // (X+1)^2
    CHECK(certify_irreducible(P({-1, -1, 0, 0, 0, 1})).verdict == Irreducibility::Yes);
    CHECK(certify_irreducible(P({2, 0, 0, 1})).verdict == Irreducibility::Yes);  // X^3+2, Eisenstein
    CHECK(certify_irreducible(P({-8, 0, 0, 1})).verdict == Irreducibility::No);  // root 2
    // X^4+1 is irreducible over Q but factors mod every prime: the pattern
    // certificate cannot decide it, and must say so rather than guess.
    CHECK(certify_irreducible(P({1, 0, 0, 0, 1})).verdict == Irreducibility::Inconclusive);
}
