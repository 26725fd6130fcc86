// Command-line front end: form registry, coefficient queries, the exact
// identity suite, sign-change scans over prime ranges, and the
// hypothesis reports for the eigenvalue/real-root theorems.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heckescan/genfun.hpp"
#include "heckescan/hecke.hpp"
#include "heckescan/registry.hpp"
#include "heckescan/report.hpp"
#include "heckescan/signscan.hpp"

using namespace heckescan;

namespace {

std::string poly_str(const Poly<Rational>& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (long i = f.degree(); i >= 0; --i) {
        Rational c = f.coeff(i);
        if (c == 0) continue;
        if (!s.empty()) s += (c > 0 ? " + " : " - ");
        else if (c < 0) s += "-";
        Rational a = c > 0 ? c : Rational(-c);
        if (a != 1 || i == 0) s += to_string(a);
        if (i >= 1) {
            if (a != 1) s += "*";
            s += "X";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::string poly_str(const Poly<CycNumber>& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (long i = f.degree(); i >= 0; --i) {
        CycNumber c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")";
        if (i >= 1) {
            s += "*X";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

int cmd_forms_list(const std::string& forms_dir) {
    for (const auto& e : list_forms(forms_dir)) {
        std::printf("%-10s k=%-3d N=%-4ld chi-order=%ld%s\n", e.label.c_str(), e.weight, e.level,
                    e.char_order, e.builtin ? "" : "  (ingested)");
    }
    return 0;
}

int cmd_ingest(const std::string& file, const std::string& forms_dir) {
    std::string path = ingest_into_registry(file, forms_dir);
    std::cout << "ingested and validated; stored at " << path << "\n";
    return 0;
}

int cmd_coeffs(const std::string& label, long n, long p, long j, const std::string& forms_dir) {
    long need = std::max({n, p, 16L});
    CoeffTable t = resolve_form(label, need, forms_dir);
    if (p == 0) {
        std::cout << label << ": a(" << n << ") = " << t.a(n).to_string() << "\n";
        return 0;
    }
    CycNumber c = apply_tj_coeffs(t, p, j, n);
    std::cout << label << ": coefficient " << n << " of T_" << j << "(" << p
              << ")f = " << c.to_string() << "\n";
    return 0;
}

int cmd_verify(const VerifyConfig& cfg) {
    auto results = run_verify(cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%-55s %s%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.pass ? "" : "  first failure: ", r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_scan(const ScanConfig& cfg, const std::string& out, const std::string& format) {
    auto rows = run_scan(cfg);
    write_rows(rows, out, format);
    long errors = 0, allzero = 0, skipped = 0;
    for (const auto& r : rows) {
        if (r.status == "ERROR") ++errors;
        if (r.status == "ALL_ZERO") ++allzero;
        if (r.status == "SKIPPED") ++skipped;
    }
    std::cout << rows.size() << " rows -> " << out << " (" << format << "); " << errors
              << " errors, " << allzero << " all-zero, " << skipped << " skipped\n";
    return any_error(rows) ? 1 : 0;
}

int cmd_theorem4(int weight, long p, long j) {
    Theorem4Report rep = theorem4_hypotheses(weight, p, j);
    std::cout << "T_" << j << "(" << p << ") on S_" << weight
              << " (dim " << dim_cusp_forms_level1(weight) << ")\n";
    std::cout << "char poly:        " << poly_str(rep.charpoly) << "\n";
    std::string verdict = rep.irreducible.verdict == Irreducibility::Yes
                              ? "Yes"
                              : rep.irreducible.verdict == Irreducibility::No ? "No" : "Inconclusive";
    std::cout << "irreducible/Q:    " << verdict << " (" << rep.irreducible.detail << ")\n";
    std::cout << "Res(C(X),C(-X)):  " << to_string(rep.resultant_raw) << "\n";
    std::cout << "eigenvalue pair summing to zero: " << (rep.eigen_sum_zero ? "Yes" : "No") << "\n";
    if (rep.zero_eigenvalue_multiplicity > 0)
        std::cout << "zero eigenvalue multiplicity: " << rep.zero_eigenvalue_multiplicity << "\n";
    std::cout << "note: " << rep.note << "\n";
    return 0;
}

int cmd_theorem5(const std::string& label, long p, long m, long char0_index, long bits,
                 const std::string& forms_dir) {
    CoeffTable t = resolve_form(label, std::max(p, 16L), forms_dir);
    auto roots = sqrt_characters(t.spec().character);
    if (char0_index < 0 || char0_index >= static_cast<long>(roots.size()))
        throw std::invalid_argument("char0 index out of range");
    const DirichletCharacter& chi0 = roots[static_cast<size_t>(char0_index)];
    ConjugatePairData d = make_pair_data(t, chi0, p);
    long mp = char_value_order(chi0, p);
    if (m == 0) m = mp;
    if (m % mp != 0)
        throw std::invalid_argument("m must be a multiple of ord(chi0(p)) = " + std::to_string(mp));
    std::cout << label << " p=" << p << ": ord(chi0(p)) = " << mp << ", using m = " << m << "\n";
    std::cout << "Deligne margin 4p^(k-1) - t^2 = " << deligne_margin_string(d) << "\n";
    std::cout << "polynomial: " << poly_str(theorem5_polynomial(d, m)) << "\n";
    Theorem5Result r = theorem5_realroot_check(d, m);
    std::cout << "status: " << theorem5_status_name(r.status);
    if (r.vacuous) std::cout << " (m = 1: polynomial vanishes identically, hypothesis vacuous)";
    std::cout << "\n";
    if (!r.vacuous && r.status != Theorem5Status::Undecided)
        std::cout << "real roots on R: " << r.real_root_count
                  << ", on (0, inf): " << r.positive_root_count << "\n";
    if (!d.degenerate) {
        SatakeAngle ang = satake_angle(d, bits);
        std::cout << "Satake angle theta ~ " << ang.theta.to_string(20) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact sign-change scans of Hecke eigenform coefficients at prime powers"};
    app.require_subcommand(1);

    std::string forms_dir = "forms";
    app.add_option("--forms-dir", forms_dir, "registry directory for ingested forms");

    auto* forms = app.add_subcommand("forms", "registry operations");
    forms->require_subcommand(1);
    forms->add_subcommand("list", "list available forms");

    auto* ingest = app.add_subcommand("ingest", "validate and register a form file");
    std::string ingest_file;
    ingest->add_option("file", ingest_file, "JSON form file")->required();

    auto* coeffs = app.add_subcommand("coeffs", "coefficient queries");
    std::string co_form = "delta";
    long co_n = 1, co_p = 0, co_j = 1;
    coeffs->add_option("--form", co_form, "form label")->required();
    coeffs->add_option("--n", co_n, "index n")->required();
    coeffs->add_option("--prime", co_p, "prime p (omit for plain a(n))");
    coeffs->add_option("--j", co_j, "operator index j");

    auto* verify = app.add_subcommand("verify", "run the exact identity suite");
    VerifyConfig vcfg;
    verify->add_option("--form", vcfg.forms, "form labels")->required();
    verify->add_option("--pmax", vcfg.pmax, "largest prime");
    verify->add_option("--j-max", vcfg.jmax, "largest j");
    verify->add_option("--order", vcfg.order, "expansion order");
    verify->add_option("--m-max", vcfg.mmax, "largest class modulus");

    auto* scan = app.add_subcommand("scan", "sign-change census over a prime range");
    ScanConfig scfg;
    std::string pattern = "all", out = "scan.csv", format = "csv";
    scan->add_option("--form", scfg.forms, "form labels")->required();
    scan->add_option("--pmin", scfg.pmin, "smallest prime");
    scan->add_option("--pmax", scfg.pmax, "largest prime");
    scan->add_option("--pattern", pattern, "all | odd | class");
    scan->add_option("--j", scfg.js, "j values (repeatable)");
    scan->add_option("--l", scfg.class_l, "residue class l (pattern=class)");
    scan->add_option("--m", scfg.class_m, "class modulus m (pattern=class)");
    scan->add_option("--nmax", scfg.nmax, "sequence length");
    scan->add_option("--bits", scfg.bits, "working precision bits");
    scan->add_option("--char0-index", scfg.char0_index, "which square root of chi to use");
    scan->add_option("--out", out, "output file");
    scan->add_option("--format", format, "csv | json");

    auto* th4 = app.add_subcommand("theorem4", "char poly / eigenvalue-pair hypothesis report");
    int t4_weight = 12;
    long t4_p = 2, t4_j = 1;
    th4->add_option("--weight", t4_weight, "even weight >= 12")->required();
    th4->add_option("--prime", t4_p, "prime p")->required();
    th4->add_option("--j", t4_j, "operator index j");

    auto* th5 = app.add_subcommand("theorem5", "real-root hypothesis report");
    std::string t5_form = "delta";
    long t5_p = 2, t5_m = 0, t5_chi0 = 0, t5_bits = 256;
    th5->add_option("--form", t5_form, "form label")->required();
    th5->add_option("--prime", t5_p, "prime p")->required();
    th5->add_option("--m", t5_m, "class modulus (default: ord(chi0(p)))");
    th5->add_option("--char0-index", t5_chi0, "which square root of chi to use");
    th5->add_option("--bits", t5_bits, "precision bits for the Satake angle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (forms->parsed()) return cmd_forms_list(forms_dir);
        if (ingest->parsed()) return cmd_ingest(ingest_file, forms_dir);
        if (coeffs->parsed()) return cmd_coeffs(co_form, co_n, co_p, co_j, forms_dir);
        if (verify->parsed()) {
            vcfg.forms_dir = forms_dir;
            return cmd_verify(vcfg);
        }
        if (scan->parsed()) {
            scfg.forms_dir = forms_dir;
            if (pattern == "all") scfg.kind = FilterSpec::Kind::AllMultiples;
            else if (pattern == "odd") scfg.kind = FilterSpec::Kind::OddMultiples;
            else if (pattern == "class") scfg.kind = FilterSpec::Kind::ResidueClass;
            else throw std::invalid_argument("unknown pattern '" + pattern + "'");
            return cmd_scan(scfg, out, format);
        }
        if (th4->parsed()) return cmd_theorem4(t4_weight, t4_p, t4_j);
        if (th5->parsed()) return cmd_theorem5(t5_form, t5_p, t5_m, t5_chi0, t5_bits, forms_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
