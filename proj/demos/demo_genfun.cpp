// Builds the closed-form generating functions of tau(2^n) and shows that
// the root-of-unity filter, the closed difference formula and the
// coefficient table all tell the same story.

#include <cstdio>
#include <string>

#include "heckescan/genfun.hpp"
#include "heckescan/registry.hpp"

using namespace heckescan;

namespace {

std::string show(const Poly<CycNumber>& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (long i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += f.coeff(i).to_string();
        if (i >= 1) s += "*X^" + std::to_string(i);
    }
    return s;
}

void print_rf(const char* name, const RationalFunction& r) {
    std::printf("%s = (%s) / (%s)\n", name, show(r.num()).c_str(), show(r.den()).c_str());
}

}  // namespace

int main() {
    CoeffTable t = make_builtin("delta", 64);
    ConjugatePairData d = make_pair_data(t, DirichletCharacter::trivial(1), 2);

    RationalFunction P = closed_P(d);
    print_rf("P(X) = sum tau(2^n) X^n", P);
    print_rf("S_0  (even part)       ", closed_S0(d));
    print_rf("S_1  (odd part)        ", closed_S1(d));
    print_rf("S_1,3 (exponents 3,9,..)", closed_S1j(d, 3));

    std::printf("\nfilter route equals the closed route: %s\n",
                closed_S1j(d, 3) == filter_series(closed_S1(d), 3, 0) ? "yes" : "NO");

    RationalFunction sum;
    for (const auto& sl : closed_Sl_all(d, 3)) sum = sum + sl;
    std::printf("S_0 + S_1 + S_2 = P at m = 3:     %s\n", sum == P ? "yes" : "NO");

    PowerSeries<CycNumber> e = P.expand(11);
    std::printf("\nexpansion vs table, n = 0..10:\n");
    auto run = t.prime_power_run(2, 10);
    for (long n = 0; n <= 10; ++n)
        std::printf("  X^%-2ld  %-24s  table: %s\n", n, e.coeff(n).to_string().c_str(),
                    run[static_cast<size_t>(n)].to_string().c_str());
    return 0;
}
