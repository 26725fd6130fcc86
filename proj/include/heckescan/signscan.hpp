#pragma once

// Sign-change censuses of the chi0-normalized coefficient sequences at
// prime powers, the per-prime exclusion condition (trace equal to
// +-p^((k-1)/2)(zeta^mu + zeta^-mu) chi0(p), decided after squaring), the
// real-zero hypothesis test for the class-decomposition polynomial, and
// Satake angles.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/dirichlet.hpp"
#include "heckescan/genfun.hpp"
#include "heckescan/interval.hpp"
#include "heckescan/qexpand.hpp"
#include "heckescan/sturm.hpp"

namespace heckescan {

struct BoundaryAngleError : std::runtime_error {
    explicit BoundaryAngleError(const std::string& w) : std::runtime_error(w) {}
};

struct SignSequenceSpec {
    std::string form;
    long p = 2;
    FilterSpec pattern;
    long nmax = 100;
};

struct RealizedSequence {
    std::vector<CycNumber> values;  // exact real values a(p^e)/chi0(p)^e
    std::vector<long> exponents;
    CycNumber chi0_l;  // chi0(p)^l for ResidueClass patterns, 1 otherwise
};

// The normalized sequence of the chosen pattern. For ResidueClass(l, m)
// with chi0(p)^m = 1 the values equal a(p^(l+mn))/chi0(p)^l, which is the
// theorem's sequence; realness of every entry is asserted.
inline RealizedSequence realize_sequence(const CoeffTable& t, const DirichletCharacter& chi0,
                                         const SignSequenceSpec& spec) {
    long N = t.spec().level;
    if (N > 1 && N % spec.p == 0)
        throw PrimeDividesLevelError("p = " + std::to_string(spec.p) + " divides the level");
    CycNumber c0 = chi0.value(spec.p);
    if (c0.is_zero()) throw PrimeDividesLevelError("chi0(p) = 0");
    if (spec.pattern.kind == FilterSpec::Kind::ResidueClass) {
        if (c0.pow(spec.pattern.m) != CycNumber(1))
            throw std::invalid_argument("realize_sequence: chi0(p)^m != 1");
    }
    RealizedSequence out;
    out.chi0_l = spec.pattern.kind == FilterSpec::Kind::ResidueClass
                     ? c0.pow(spec.pattern.l)
                     : CycNumber(1);
    long emax = spec.pattern.exponent(spec.nmax - 1);
    std::vector<CycNumber> run = t.prime_power_run(spec.p, emax);
    CycNumber c0inv = c0.inverse();
    for (long n = 0; n < spec.nmax; ++n) {
        long e = spec.pattern.exponent(n);
        CycNumber v = run[static_cast<size_t>(e)] * c0inv.pow(e);
        if (!v.is_real())
            throw NotRealError("normalized value at exponent " + std::to_string(e) +
                               " is not real; table violates the reality law");
        out.values.push_back(std::move(v));
        out.exponents.push_back(e);
    }
    return out;
}

struct Census {
    std::optional<long> first_change;  // index of the later element of the first changing pair
    long change_count = 0;
    long zero_count = 0;
    bool all_zero = false;
};

// Consecutive nonzero entries of opposite sign; zeros are skipped and
// tallied separately. All entries zero raises the all_zero signal.
inline Census detect_sign_changes(const std::vector<CycNumber>& v, const SturmOptions& opts = {}) {
    Census c;
    int prev = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        CertifiedSign s = certified_sign_real(v[i], opts.start_bits, opts.cap_bits);
        if (!s.decided)
            throw PrecisionExhaustedError("detect_sign_changes: sign undecided at index " +
                                          std::to_string(i));
        if (s.sign == 0) {
            ++c.zero_count;
            continue;
        }
        if (prev != 0 && s.sign != prev) {
            ++c.change_count;
            if (!c.first_change) c.first_change = static_cast<long>(i);
        }
        prev = s.sign;
    }
    c.all_zero = (c.zero_count == static_cast<long>(v.size()));
    return c;
}

// mu in [0, j-1] with trace^2 = norm * (zeta_j^mu + zeta_j^-mu)^2 exactly.
// Squaring removes both the sign and p^((k-1)/2), staying inside one
// cyclotomic field; the test is an exact equality there.
inline std::vector<long> exclusion_eq7_check(const ConjugatePairData& d, long j) {
    if (j < 1) throw std::invalid_argument("exclusion_eq7_check: j >= 1");
    std::vector<long> hits;
    CycNumber t2 = d.trace * d.trace;
    for (long mu = 0; mu < j; ++mu) {
        CycNumber c = CycNumber::root_of_unity(j, mu) + CycNumber::root_of_unity(j, -mu);
        if (t2 == CycNumber(Rational(d.norm)) * c * c) hits.push_back(mu);
    }
    return hits;
}

enum class Theorem5Status { NoRealRoot, HasRealRoot, Undecided, NotApplicable };

struct Theorem5Result {
    Theorem5Status status = Theorem5Status::NotApplicable;
    long real_root_count = 0;      // distinct real roots on all of R
    long positive_root_count = 0;  // distinct real roots on (0, inf)
    long bits_used = 0;
    bool vacuous = false;          // m = 1: the polynomial vanishes identically
};

inline std::string theorem5_status_name(Theorem5Status s) {
    switch (s) {
        case Theorem5Status::NoRealRoot: return "NoRealRoot";
        case Theorem5Status::HasRealRoot: return "HasRealRoot";
        case Theorem5Status::Undecided: return "Undecided";
        case Theorem5Status::NotApplicable: return "NotApplicable";
    }
    return "?";
}

// Real-zero test of norm*V_(m-1) X^m - V_m X^(m-1) + 1, on all of R and on
// the positive ray (the range reached by X = p^-s). At m = 1 the class
// decomposition is trivial, the polynomial is identically zero and the
// hypothesis is vacuous.
inline Theorem5Result theorem5_realroot_check(const ConjugatePairData& d, long m,
                                              SturmOptions opts = {}) {
    if (m < 1) throw std::invalid_argument("theorem5_realroot_check: m >= 1");
    if (d.degenerate) throw DegeneratePairError("alpha = beta: V-normalization undefined");
    Theorem5Result r;
    if (m == 1) {
        r.status = Theorem5Status::NoRealRoot;
        r.vacuous = true;
        return r;
    }
    Poly<CycNumber> w = theorem5_polynomial(d, m);
    if (w.is_zero()) throw std::logic_error("theorem5_realroot_check: vanishing polynomial at m >= 2");
    // Rational fast path keeps the census exact without embeddings.
    bool rational = true;
    for (const auto& c : w.coeffs())
        if (!c.is_rational()) { rational = false; break; }
    RootCount all, pos;
    if (rational) {
        std::vector<Rational> cs;
        for (const auto& c : w.coeffs()) cs.push_back(c.to_rational());
        Poly<Rational> wq(std::move(cs));
        all = count_real_roots(wq, SturmBound::neg_inf(), SturmBound::pos_inf(), opts);
        pos = count_real_roots(wq, SturmBound::at(Rational(0)), SturmBound::pos_inf(), opts);
    } else {
        all = count_real_roots(w, SturmBound::neg_inf(), SturmBound::pos_inf(), opts);
        pos = count_real_roots(w, SturmBound::at(Rational(0)), SturmBound::pos_inf(), opts);
    }
    r.bits_used = std::max(all.bits_used, pos.bits_used);
    if (all.status == CountStatus::Undecided || pos.status == CountStatus::Undecided) {
        r.status = Theorem5Status::Undecided;
        return r;
    }
    r.real_root_count = all.count;
    r.positive_root_count = pos.count;
    r.status = all.count == 0 ? Theorem5Status::NoRealRoot : Theorem5Status::HasRealRoot;
    return r;
}

struct SatakeAngle {
    RealInterval theta;  // in [0, pi], cos(theta) = t / (2 p^((k-1)/2))
    long p = 2;
};

inline SatakeAngle satake_angle(const ConjugatePairData& d, long bits) {
    if (d.degenerate) throw BoundaryAngleError("Deligne margin 0: angle is a boundary value");
    RealInterval tval = d.trace.embed(bits).re;
    RealInterval half_norm_sqrt =
        RealInterval::from_rational(Rational(4) * d.norm, bits).sqrt_nonneg();
    RealInterval c = tval / half_norm_sqrt;
    return SatakeAngle{c.acos_clipped(), d.p};
}

// Exact margin as a rational when it is one (all built-ins); otherwise a
// certified decimal approximation prefixed with '~'.
inline std::string deligne_margin_string(const ConjugatePairData& d, long bits = 128) {
    if (d.deligne_margin.is_rational()) return to_string(d.deligne_margin.to_rational());
    return "~" + d.deligne_margin.embed(bits).re.to_string(24);
}

}  // namespace heckescan
