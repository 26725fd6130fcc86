// Prints the normalized coefficient sequence of Delta at powers of a
// prime, its sign-change census, and the Satake angle.

#include <cstdio>

#include "heckescan/registry.hpp"
#include "heckescan/signscan.hpp"

using namespace heckescan;

int main(int argc, char** argv) {
    long p = argc > 1 ? std::atol(argv[1]) : 2;
    CoeffTable t = make_builtin("delta", std::max(p, 16L));
    DirichletCharacter chi0 = DirichletCharacter::trivial(1);

    SignSequenceSpec spec{"delta", p, FilterSpec::all_multiples(1), 16};
    RealizedSequence seq = realize_sequence(t, chi0, spec);
    std::printf("tau(%ld^n) for n = 0..15:\n", p);
    for (size_t n = 0; n < seq.values.size(); ++n) {
        int s = certified_sign_real(seq.values[n]).sign;
        std::printf("  n=%-3zu %c  %s\n", n, s > 0 ? '+' : (s < 0 ? '-' : '0'),
                    seq.values[n].to_string().c_str());
    }
    Census c = detect_sign_changes(seq.values);
    std::printf("sign changes: %ld (first at n=%ld), zeros: %ld\n", c.change_count,
                c.first_change.value_or(-1), c.zero_count);

    ConjugatePairData d = make_pair_data(t, chi0, p);
    std::printf("Deligne margin 4p^11 - tau(p)^2 = %s\n", deligne_margin_string(d).c_str());
    SatakeAngle ang = satake_angle(d, 128);
    std::printf("Satake angle theta = %s\n", ang.theta.to_string(25).c_str());
    return 0;
}
