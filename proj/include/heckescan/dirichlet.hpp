#pragma once

// Dirichlet characters as full value tables, plus the structure of
// (Z/N)^* needed to enumerate square roots of a character by exponent
// halving on a generating set.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct UnitGroup {
    long modulus = 1;
    std::vector<long> gens;
    std::vector<long> orders;
    std::map<long, std::vector<long>> dlog;  // unit residue -> exponent vector
};

namespace detail {

inline long primitive_root_mod(long pe, long p) {
    long phi = euler_phi(pe);
    auto fs = factorize(phi);
    for (long g = 2; g < pe; ++g) {
        if (g % p == 0 || gcd_long(g, pe) != 1) continue;
        bool ok = true;
        for (auto [r, e] : fs) {
            (void)e;
            if (mod_pow_long(g, phi / r, pe) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root_mod: none found");
}

inline long crt_lift(long residue, long pe, long n) {
    // x = residue mod pe, x = 1 mod n/pe
    long m = n / pe;
    if (m == 1) return residue % n;
    // x = residue + pe*t with x = 1 mod m
    long pe_mod = pe % m;
    long inv = 1;
    for (long t = 0; t < m; ++t)
        if ((pe_mod * t) % m == ((1 - residue) % m + m) % m) { inv = t; break; }
    return (residue + pe * inv) % n;
}

}  // namespace detail

inline UnitGroup unit_group(long n) {
    if (n < 1) throw std::invalid_argument("unit_group: n >= 1");
    UnitGroup g;
    g.modulus = n;
    for (auto [p, e] : factorize(n)) {
        long pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;
            if (e == 2) {
                g.gens.push_back(detail::crt_lift(3, 4, n));
                g.orders.push_back(2);
            } else {
                g.gens.push_back(detail::crt_lift(pe - 1, pe, n));
                g.orders.push_back(2);
                g.gens.push_back(detail::crt_lift(3, pe, n));
                g.orders.push_back(pe / 4);
            }
        } else {
            g.gens.push_back(detail::crt_lift(detail::primitive_root_mod(pe, p), pe, n));
            g.orders.push_back(euler_phi(pe));
        }
    }
    // Enumerate the group once to get discrete logs.
    std::vector<long> exps(g.gens.size(), 0);
    while (true) {
        long r = 1 % n;
        for (size_t i = 0; i < g.gens.size(); ++i)
            r = static_cast<long>((static_cast<unsigned __int128>(r) * mod_pow_long(g.gens[i], exps[i], n)) % n);
        g.dlog[r] = exps;
        size_t i = 0;
        for (; i < exps.size(); ++i) {
            if (++exps[i] < g.orders[i]) break;
            exps[i] = 0;
        }
        if (i == exps.size()) break;
        if (g.gens.empty()) break;
    }
    if (g.gens.empty()) g.dlog[1 % n] = {};
    return g;
}

class DirichletCharacter {
public:
    DirichletCharacter() : modulus_(1), values_{CycNumber(1)} {}

    static DirichletCharacter trivial(long modulus) {
        if (modulus < 1) throw std::invalid_argument("DirichletCharacter: modulus >= 1");
        DirichletCharacter chi;
        chi.modulus_ = modulus;
        chi.values_.assign(static_cast<size_t>(modulus), CycNumber(0));
        if (modulus == 1) {
            chi.values_[0] = CycNumber(1);
        } else {
            for (long r = 0; r < modulus; ++r)
                if (gcd_long(r, modulus) == 1) chi.values_[static_cast<size_t>(r)] = CycNumber(1);
        }
        return chi;
    }

    // Validates the table: chi(1) = 1, zero exactly off units, values are
    // roots of unity, completely multiplicative on units.
    static DirichletCharacter from_values(long modulus, std::vector<CycNumber> values) {
        if (modulus < 1 || static_cast<long>(values.size()) != modulus)
            throw std::invalid_argument("DirichletCharacter: table size must equal modulus");
        DirichletCharacter chi;
        chi.modulus_ = modulus;
        chi.values_ = std::move(values);
        if (modulus == 1) {
            if (chi.values_[0] != CycNumber(1))
                throw std::invalid_argument("DirichletCharacter: chi mod 1 must be 1");
            return chi;
        }
        if (chi.value(1) != CycNumber(1))
            throw std::invalid_argument("DirichletCharacter: chi(1) != 1");
        for (long r = 0; r < modulus; ++r) {
            bool unit = gcd_long(r, modulus) == 1;
            const CycNumber& v = chi.values_[static_cast<size_t>(r)];
            if (!unit && !v.is_zero())
                throw std::invalid_argument("DirichletCharacter: nonzero value off units");
            if (unit && !v.is_root_of_unity())
                throw std::invalid_argument("DirichletCharacter: unit value is not a root of unity");
        }
        for (long a = 1; a < modulus; ++a) {
            if (gcd_long(a, modulus) != 1) continue;
            for (long b = a; b < modulus; ++b) {
                if (gcd_long(b, modulus) != 1) continue;
                if (chi.value(a * b) != chi.value(a) * chi.value(b))
                    throw std::invalid_argument("DirichletCharacter: not multiplicative at (" +
                                                std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
        return chi;
    }

    long modulus() const { return modulus_; }

    CycNumber value(long n) const {
        if (modulus_ == 1) return CycNumber(1);
        long r = n % modulus_;
        if (r < 0) r += modulus_;
        return values_[static_cast<size_t>(r)];
    }

    bool is_trivial() const {
        if (modulus_ == 1) return true;
        for (long r = 0; r < modulus_; ++r)
            if (gcd_long(r, modulus_) == 1 && values_[static_cast<size_t>(r)] != CycNumber(1))
                return false;
        return true;
    }

    // chi(-1); +1 for even characters, -1 for odd.
    int parity() const {
        CycNumber v = value(modulus_ - 1);
        if (v == CycNumber(1)) return 1;
        if (v == CycNumber(-1)) return -1;
        throw std::logic_error("DirichletCharacter::parity: chi(-1) not +-1");
    }

    // Multiplicative order of the character in the character group.
    long order() const {
        long o = 1;
        for (long r = 0; r < modulus_; ++r) {
            if (modulus_ > 1 && gcd_long(r, modulus_) != 1) continue;
            o = lcm_long(o, value_order(value(std::max(r, 1L))));
        }
        return o;
    }

    DirichletCharacter operator*(const DirichletCharacter& o) const {
        if (modulus_ != o.modulus_)
            throw std::invalid_argument("DirichletCharacter: modulus mismatch");
        DirichletCharacter r = *this;
        for (size_t i = 0; i < values_.size(); ++i) r.values_[i] = values_[i] * o.values_[i];
        return r;
    }

    bool operator==(const DirichletCharacter& o) const {
        return modulus_ == o.modulus_ && values_ == o.values_;
    }
    bool operator!=(const DirichletCharacter& o) const { return !(*this == o); }

    static long value_order(const CycNumber& v) {
        if (v.is_zero()) throw std::domain_error("value_order of zero");
        CycNumber p = v;
        for (long r = 1; r <= 2 * v.order() + 2; ++r) {
            if (p == CycNumber(1)) return r;
            p = p * v;
        }
        throw std::logic_error("value_order: not a root of unity");
    }

private:
    long modulus_;
    std::vector<CycNumber> values_;
};

// All characters chi0 mod N with chi0^2 = chi, by exponent halving on the
// generators of (Z/N)^*. Deterministic order (lexicographic in the halved
// exponent vectors).
inline std::vector<DirichletCharacter> sqrt_characters(const DirichletCharacter& chi) {
    long n = chi.modulus();
    UnitGroup g = unit_group(n);
    size_t ng = g.gens.size();
    // Exponents of chi on each generator.
    std::vector<long> e(ng, 0);
    for (size_t i = 0; i < ng; ++i) {
        long d = g.orders[i];
        bool found = false;
        for (long k = 0; k < d; ++k) {
            if (chi.value(g.gens[i]) == CycNumber::root_of_unity(d, k)) {
                e[i] = k;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("sqrt_characters: chi is not a character mod N");
    }
    // Per-generator solutions of 2x = e (mod d).
    std::vector<std::vector<long>> options(ng);
    for (size_t i = 0; i < ng; ++i) {
        long d = g.orders[i];
        if (d % 2 == 1) {
            long inv2 = mod_pow_long(2, euler_phi(d) - 1, d);  // d odd so 2 invertible
            options[i] = {(e[i] * inv2) % d};
        } else if (e[i] % 2 == 0) {
            options[i] = {e[i] / 2, e[i] / 2 + d / 2};
        } else {
            return {};  // no square root on this generator
        }
    }
    std::vector<DirichletCharacter> out;
    std::vector<size_t> pick(ng, 0);
    while (true) {
        std::vector<CycNumber> table(static_cast<size_t>(n), CycNumber(0));
        if (n == 1) table[0] = CycNumber(1);
        for (const auto& [res, exps] : g.dlog) {
            CycNumber v(1);
            for (size_t i = 0; i < ng; ++i) {
                long d = g.orders[i];
                long x = options[i][pick[i]];
                v = v * CycNumber::root_of_unity(d, (x * exps[i]) % d);
            }
            table[static_cast<size_t>(res)] = v;
        }
        out.push_back(DirichletCharacter::from_values(n, std::move(table)));
        size_t i = 0;
        for (; i < ng; ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == ng) break;
    }
    return out;
}

// m_p: multiplicative order of chi0(p); requires p coprime to the modulus.
inline long char_value_order(const DirichletCharacter& chi0, long p) {
    if (chi0.modulus() > 1 && gcd_long(p, chi0.modulus()) != 1)
        throw std::invalid_argument("char_value_order: p divides the modulus");
    return DirichletCharacter::value_order(chi0.value(p));
}

}  // namespace heckescan
