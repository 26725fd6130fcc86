#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "heckescan/interval.hpp"

using namespace heckescan;

TEST_CASE("interval endpoints bracket exact rationals") {
    RealInterval x = RealInterval::from_rational(make_rational(1, 3), 64);
    CHECK(x.contains(make_rational(1, 3)));
    CHECK(x.sign() == IntervalSign::Positive);
    CHECK((-x).sign() == IntervalSign::Negative);
    RealInterval z = RealInterval::exact_int(0, 64);
    CHECK(z.contains_zero());
    CHECK(z.sign() == IntervalSign::Unknown);
}

TEST_CASE("interval arithmetic contains exact results") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 30);
    for (int i = 0; i < 200; ++i) {
        Rational a = make_rational(num(rng), den(rng));
        Rational b = make_rational(num(rng), den(rng));
        RealInterval ia = RealInterval::from_rational(a, 64);
        RealInterval ib = RealInterval::from_rational(b, 64);
        CHECK((ia + ib).contains(a + b));
        CHECK((ia - ib).contains(a - b));
        CHECK((ia * ib).contains(a * b));
        if (b != 0 && !ib.contains_zero()) CHECK((ia / ib).contains(a / b));
    }
}

TEST_CASE("sqrt and pow") {
    RealInterval two = RealInterval::exact_int(2, 128);
    RealInterval s = two.sqrt_nonneg();
    RealInterval sq = s * s;
    CHECK(sq.contains(Rational(2)));
    CHECK(two.pow_uint(11).contains(Rational(2048)));
    RealInterval p = pow_rational_exponent(2, make_rational(-1, 2), 128);
    CHECK((p * s).contains(Rational(1)));
}

TEST_CASE("cos/sin of rational turns") {
    // quarter turns are exact
    CHECK(cos_2pi_frac(0, 1, 64).contains(Rational(1)));
    CHECK(cos_2pi_frac(1, 2, 64).contains(Rational(-1)));
    CHECK(cos_2pi_frac(1, 4, 64).contains(Rational(0)));
    CHECK(sin_2pi_frac(1, 4, 64).contains(Rational(1)));
    // cos(2pi/8) = sqrt(2)/2
    RealInterval c8 = cos_2pi_frac(1, 8, 128);
    RealInterval target = RealInterval::exact_int(2, 128).sqrt_nonneg() *
                          RealInterval::from_rational(make_rational(1, 2), 128);
    RealInterval diff = c8 - target;
    CHECK(diff.contains(Rational(0)));
    CHECK(mpfr_cmp_d(diff.width().get(), 1e-30) < 0);
    // wide interval including pi must hit the minimum -1
    RealInterval wide = RealInterval::hull_points(BigFloat(64), RealInterval::pi(64).hi_value(), 64);
    RealInterval c = wide.cos_interval();
    CHECK(c.contains(Rational(-1)));
    CHECK(c.contains(Rational(1)));
}

TEST_CASE("acos brackets") {
    RealInterval z = RealInterval::exact_int(0, 128);
    RealInterval t = z.acos_clipped();  // pi/2
    RealInterval half_pi = RealInterval::pi(128) * RealInterval::from_rational(make_rational(1, 2), 128);
    CHECK((t - half_pi).contains(Rational(0)));
    RealInterval one = RealInterval::exact_int(1, 128);
    CHECK(one.acos_clipped().contains(Rational(0)));
}

TEST_CASE("complex interval multiply") {
    ComplexInterval i{RealInterval::exact_int(0, 64), RealInterval::exact_int(1, 64)};
    ComplexInterval sq = i * i;
    CHECK(sq.re.contains(Rational(-1)));
    CHECK(sq.im.contains(Rational(0)));
}
