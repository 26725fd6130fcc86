#pragma once

// Exact real-root counting by Sturm chains. The chain itself is exact
// field arithmetic; only the *signs* of evaluations need certification
// when coefficients are real cyclotomic numbers. Signs are resolved by
// exact zero tests plus interval embeddings at doubling precision, so a
// wrong count is never reported: past the precision cap the answer is
// Undecided.

#include <optional>
#include <stdexcept>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/poly.hpp"
#include "heckescan/rational.hpp"

namespace heckescan {

struct SturmOptions {
    long start_bits = 64;
    long cap_bits = 4096;
};

enum class CountStatus { Exact, Undecided };

struct RootCount {
    CountStatus status = CountStatus::Exact;
    long count = 0;
    long bits_used = 0;
};

struct SturmBound {
    enum class Type { NegInf, Finite, PosInf } type;
    Rational value;

    static SturmBound neg_inf() { return {Type::NegInf, Rational(0)}; }
    static SturmBound pos_inf() { return {Type::PosInf, Rational(0)}; }
    static SturmBound at(Rational v) { return {Type::Finite, std::move(v)}; }
};

namespace detail {

inline CertifiedSign sign_of_value(const Rational& v, const SturmOptions&) {
    return {sign_of(v), true, 0};
}

inline CertifiedSign sign_of_value(const CycNumber& v, const SturmOptions& opts) {
    return certified_sign_real(v, opts.start_bits, opts.cap_bits);
}

template <class K>
K from_rational_k(const Rational& q);

template <>
inline Rational from_rational_k<Rational>(const Rational& q) { return q; }

template <>
inline CycNumber from_rational_k<CycNumber>(const Rational& q) { return CycNumber(q); }

}  // namespace detail

template <class K>
std::vector<Poly<K>> sturm_chain(const Poly<K>& squarefree) {
    std::vector<Poly<K>> chain;
    chain.push_back(squarefree);
    chain.push_back(squarefree.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const Poly<K>& a = chain[chain.size() - 2];
        const Poly<K>& b = chain.back();
        if (b.is_zero()) break;
        auto [q, r] = divrem(a, b);
        (void)q;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

// Sign variation count of the chain at a bound. Zero values are skipped
// (which is the Sturm convention at non-root points and is sound here
// because f itself never evaluates to zero at the bounds we use).
template <class K>
std::optional<long> sign_variations(const std::vector<Poly<K>>& chain, const SturmBound& b,
                                    const SturmOptions& opts, long& bits_used) {
    int prev = 0;
    long var = 0;
    for (const auto& f : chain) {
        if (f.is_zero()) continue;
        CertifiedSign cs;
        switch (b.type) {
            case SturmBound::Type::Finite:
                cs = detail::sign_of_value(f.eval(detail::from_rational_k<K>(b.value)), opts);
                break;
            case SturmBound::Type::PosInf:
                cs = detail::sign_of_value(f.leading(), opts);
                break;
            case SturmBound::Type::NegInf:
                cs = detail::sign_of_value(f.leading(), opts);
                if (cs.decided && (f.degree() & 1)) cs.sign = -cs.sign;
                break;
        }
        if (!cs.decided) return std::nullopt;
        bits_used = std::max(bits_used, cs.bits_used);
        if (cs.sign == 0) continue;
        if (prev != 0 && cs.sign != prev) ++var;
        prev = cs.sign;
    }
    return var;
}

// Number of distinct real roots of f in the open interval (a, b).
template <class K>
RootCount count_real_roots(const Poly<K>& f, SturmBound a = SturmBound::neg_inf(),
                           SturmBound b = SturmBound::pos_inf(), SturmOptions opts = {}) {
    if (f.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    Poly<K> g = squarefree_part(f);
    if (g.degree() <= 0) return {CountStatus::Exact, 0, 0};
    // Shed roots sitting exactly on a finite endpoint: the interval is open.
    for (const SturmBound* bd : {&a, &b}) {
        if (bd->type != SturmBound::Type::Finite) continue;
        K x = detail::from_rational_k<K>(bd->value);
        while (g.degree() >= 1 && g.eval(x) == K(0)) {
            std::vector<K> lin{K(0) - x, K(1)};
            g = g / Poly<K>(std::move(lin));
        }
        if (g.degree() <= 0) return {CountStatus::Exact, 0, 0};
    }
    auto chain = sturm_chain(g);
    long bits = 0;
    auto va = sign_variations(chain, a, opts, bits);
    auto vb = sign_variations(chain, b, opts, bits);
    if (!va || !vb) return {CountStatus::Undecided, 0, opts.cap_bits};
    return {CountStatus::Exact, *va - *vb, bits};
}

}  // namespace heckescan
