#pragma once

// Exact rational scalars on top of GMP. mpq_class already keeps the
// canonical form (gcd(num, den) = 1, den > 0, zero as 0/1) once
// canonicalize() has run, so this header only adds the helpers the rest
// of the library needs: construction, powers, parsing, Bernoulli numbers.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckescan {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("pow_rational: 0^negative");
        return Rational(0);
    }
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r = make_rational(pow_int(base.get_num(), a), pow_int(base.get_den(), a));
    if (e < 0) r = 1 / r;
    return r;
}

inline int sign_of(const Rational& q) { return sgn(q); }

// Parses "a" or "a/b"; the only accepted forms in the ingestion schema.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// B_0, ..., B_n with the B_1 = -1/2 convention.
inline std::vector<Rational> bernoulli_numbers(unsigned long n) {
    std::vector<Rational> b(n + 1);
    b[0] = 1;
    for (unsigned long m = 1; m <= n; ++m) {
        Rational acc(0);
        for (unsigned long j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * b[j];
        b[m] = -acc / Rational(static_cast<long>(m) + 1);
    }
    return b;
}

inline Rational bernoulli(unsigned long n) { return bernoulli_numbers(n)[n]; }

// Largest e with p^e <= n (and p^e itself); p >= 2.
inline std::pair<long, Int> valuation_split(Int n, const Int& p) {
    long e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++e;
    }
    return {e, n};
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    Int z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

inline std::vector<long> primes_in_range(long lo, long hi) {
    std::vector<long> ps;
    for (long n = lo < 2 ? 2 : lo; n <= hi; ++n)
        if (is_prime(n)) ps.push_back(n);
    return ps;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> fs;
    if (n < 1) throw std::invalid_argument("factorize: need n >= 1");
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fs.emplace_back(p, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

inline long euler_phi(long n) {
    long phi = 1;
    for (auto [p, e] : factorize(n)) {
        long pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

inline long gcd_long(long a, long b) {
    while (b) { long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

inline long mod_pow_long(long base, long e, long mod) {
    long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (e > 0) {
        if (e & 1) r = static_cast<long>((static_cast<unsigned __int128>(r) * base) % mod);
        base = static_cast<long>((static_cast<unsigned __int128>(base) * base) % mod);
        e >>= 1;
    }
    return r;
}

}  // namespace heckescan
