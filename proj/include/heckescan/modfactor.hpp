#pragma once

// Factor-degree patterns of integer polynomials modulo small primes
// (distinct-degree factorization), and the irreducibility-over-Q
// certificate built from them. Complete factorization over Z is out of
// scope; degree patterns are enough to certify the char polys we meet.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckescan/poly.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct BadPrimeError : std::runtime_error {
    explicit BadPrimeError(const std::string& what) : std::runtime_error(what) {}
};

namespace modp {

using MPoly = std::vector<long>;  // dense coeffs in [0, q)

inline void trim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long deg(const MPoly& f) { return static_cast<long>(f.size()) - 1; }

inline MPoly mul(const MPoly& a, const MPoly& b, long q) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % q;
    }
    trim(r);
    return r;
}

inline long inv_mod(long a, long q) {
    long r = mod_pow_long(a, q - 2, q);
    return r;
}

inline MPoly mod(MPoly a, const MPoly& b, long q) {
    trim(a);
    long db = deg(b);
    if (db < 0) throw std::domain_error("modp::mod by zero");
    long inv_lead = inv_mod(b.back(), q);
    while (deg(a) >= db) {
        long c = (a.back() * inv_lead) % q;
        long shift = deg(a) - db;
        for (long i = 0; i <= db; ++i) {
            long& t = a[static_cast<size_t>(shift + i)];
            t = (t - c * b[static_cast<size_t>(i)]) % q;
            if (t < 0) t += q;
        }
        trim(a);
    }
    return a;
}

inline MPoly gcd(MPoly a, MPoly b, long q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        MPoly r = mod(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        long inv = inv_mod(a.back(), q);
        for (auto& c : a) c = (c * inv) % q;
    }
    return a;
}

inline MPoly derivative(const MPoly& f, long q) {
    if (f.size() <= 1) return {};
    MPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = (f[i] * (static_cast<long>(i) % q)) % q;
    trim(r);
    return r;
}

inline MPoly pow_mod(MPoly base, unsigned long e, const MPoly& f, long q) {
    MPoly acc{1};
    base = mod(std::move(base), f, q);
    while (e) {
        if (e & 1) acc = mod(mul(acc, base, q), f, q);
        base = mod(mul(base, base, q), f, q);
        e >>= 1;
    }
    return acc;
}

inline MPoly div_exact(MPoly a, const MPoly& b, long q) {
    modp::trim(a);
    long db = deg(b);
    if (db < 0) throw std::domain_error("modp::div_exact by zero");
    long inv_lead = inv_mod(b.back(), q);
    MPoly quot(a.size() > static_cast<size_t>(db) ? a.size() - db : 0, 0);
    while (deg(a) >= db) {
        long c = (a.back() * inv_lead) % q;
        long shift = deg(a) - db;
        quot[static_cast<size_t>(shift)] = c;
        for (long i = 0; i <= db; ++i) {
            long& t = a[static_cast<size_t>(shift + i)];
            t = (t - c * b[static_cast<size_t>(i)]) % q;
            if (t < 0) t += q;
        }
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("modp::div_exact: nonzero remainder");
    trim(quot);
    return quot;
}

}  // namespace modp

// Degrees (with multiplicity one each; input must be squarefree mod q) of
// the irreducible factors of f mod q, by distinct-degree factorization.
inline std::vector<long> degree_pattern_mod_p(const Poly<Rational>& f, long q) {
    if (!is_prime(q)) throw std::invalid_argument("degree_pattern_mod_p: q must be prime");
    std::vector<Int> zf = integer_model(f);
    if (zf.empty()) throw std::invalid_argument("degree_pattern_mod_p: zero polynomial");
    if (mpz_fdiv_ui(zf.back().get_mpz_t(), static_cast<unsigned long>(q)) == 0)
        throw BadPrimeError("q divides leading coefficient");
    modp::MPoly fm(zf.size());
    for (size_t i = 0; i < zf.size(); ++i)
        fm[i] = static_cast<long>(mpz_fdiv_ui(zf[i].get_mpz_t(), static_cast<unsigned long>(q)));
    modp::trim(fm);
    if (modp::deg(fm) == 0) return {};
    modp::MPoly d = modp::gcd(fm, modp::derivative(fm, q), q);
    if (modp::deg(d) != 0) throw BadPrimeError("f not squarefree mod q");

    std::vector<long> pattern;
    // h tracks X^(q^d) mod f.
    modp::MPoly h{0, 1};
    modp::MPoly rest = fm;
    long inv = modp::inv_mod(rest.back(), q);
    for (auto& c : rest) c = (c * inv) % q;
    long dd = 0;
    while (modp::deg(rest) > 2 * dd) {
        ++dd;
        h = modp::pow_mod(std::move(h), static_cast<unsigned long>(q), rest, q);
        modp::MPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] - 1) % q;
        if (hx[1] < 0) hx[1] += q;
        modp::trim(hx);
        modp::MPoly g = modp::gcd(rest, hx, q);
        if (modp::deg(g) > 0) {
            for (long i = 0; i < modp::deg(g) / dd; ++i) pattern.push_back(dd);
            rest = modp::div_exact(rest, g, q);
            if (modp::deg(rest) == 0) break;
            h = modp::mod(std::move(h), rest, q);
        }
    }
    if (modp::deg(rest) > 0) pattern.push_back(modp::deg(rest));
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

enum class Irreducibility { Yes, No, Inconclusive };

struct IrredCertificate {
    Irreducibility verdict = Irreducibility::Inconclusive;
    std::string detail;
};

namespace detail {

inline bool is_rational_square(const Rational& q, Rational* root = nullptr) {
    if (q < 0) return false;
    Int n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
        return false;
    if (root) {
        Int rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        *root = make_rational(rn, rd);
    }
    return true;
}

// Divisors of |n| assembled from prime factors found by trial division up
// to the bound. Second member reports whether the factorization of |n|
// was complete (if not, the divisor list may be missing entries).
inline std::pair<std::vector<Int>, bool> bounded_divisors(Int n, long bound) {
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> fs;
    bool complete = true;
    if (n == 0) return {{}, true};
    for (long p = 2; p <= bound && Int(p) * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fs.emplace_back(Int(p), e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 24) != 0)
            fs.emplace_back(n, 1);
        else
            complete = false;
    }
    std::vector<Int> divs{Int(1)};
    for (auto& [p, e] : fs) {
        size_t base = divs.size();
        Int pe(1);
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    return {divs, complete};
}

}  // namespace detail

// Certificate-style irreducibility over Q:
//   degree 1 -> Yes; non-squarefree -> No; degree 2 by discriminant;
//   rational-root probe (complete when the edge coefficients factor);
//   then mod-q degree patterns over the first 25 usable primes. One
//   irreducible reduction certifies Yes, as does an achievable-degree-sum
//   intersection of {0, deg}. Anything else is Inconclusive.
inline IrredCertificate certify_irreducible(const Poly<Rational>& f) {
    long d = f.degree();
    if (d <= 0) return {Irreducibility::No, "constant polynomial"};
    if (d == 1) return {Irreducibility::Yes, "degree 1"};
    if (gcd_poly(f, f.derivative()).degree() > 0)
        return {Irreducibility::No, "not squarefree"};
    if (d == 2) {
        Rational disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
        bool sq = detail::is_rational_square(disc);
        return sq ? IrredCertificate{Irreducibility::No, "square discriminant"}
                  : IrredCertificate{Irreducibility::Yes, "non-square discriminant"};
    }

    std::vector<Int> zf = integer_model(f);
    auto [const_divs, const_complete] = detail::bounded_divisors(zf.front(), 100000);
    auto [lead_divs, lead_complete] = detail::bounded_divisors(zf.back(), 100000);
    bool probe_complete = const_complete && lead_complete && zf.front() != 0;
    if (zf.front() == 0) return {Irreducibility::No, "root at 0"};
    for (const Int& a : const_divs)
        for (const Int& b : lead_divs)
            for (int s : {1, -1}) {
                Rational r = make_rational(s * a, b);
                if (f.eval(r) == 0) return {Irreducibility::No, "rational root " + to_string(r)};
            }
    (void)probe_complete;

    std::set<long> achievable;
    bool first_pattern = true;
    int used = 0;
    for (long q = 2; used < 25 && q < 3000; q = q == 2 ? 3 : q + 2) {
        if (!is_prime(q)) continue;
        std::vector<long> pat;
        try {
            pat = degree_pattern_mod_p(f, q);
        } catch (const BadPrimeError&) {
            continue;
        }
        ++used;
        if (pat.size() == 1 && pat[0] == d)
            return {Irreducibility::Yes, "irreducible mod " + std::to_string(q)};
        // Subset sums of the pattern = degrees a factor could have.
        std::set<long> sums{0};
        for (long g : pat) {
            std::set<long> next = sums;
            for (long s : sums) next.insert(s + g);
            sums = std::move(next);
        }
        if (first_pattern) {
            achievable = std::move(sums);
            first_pattern = false;
        } else {
            std::set<long> inter;
            std::set_intersection(achievable.begin(), achievable.end(), sums.begin(), sums.end(),
                                  std::inserter(inter, inter.begin()));
            achievable = std::move(inter);
        }
        bool only_trivial = true;
        for (long s : achievable)
            if (s != 0 && s != d) { only_trivial = false; break; }
        if (!first_pattern && only_trivial)
            return {Irreducibility::Yes, "degree-sum intersection is {0, deg}"};
    }
    return {Irreducibility::Inconclusive, "patterns admit a proper factor degree"};
}

}  // namespace heckescan
