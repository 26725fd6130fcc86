#pragma once

// Built-in eigenform registry: Delta, the one-dimensional level-1 spaces
// k = 16, 18, 20, 22, 26 as Delta * E_(k-12), and the eta-quotient
// newforms of (level, weight) = (11,2), (5,4), (3,6), (2,8). Ingested
// forms live as canonical JSON files in a registry directory.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckescan/ingest.hpp"
#include "heckescan/qexpand.hpp"

namespace heckescan {

struct BuiltinInfo {
    std::string label;
    int weight;
    long level;
    std::vector<std::pair<long, long>> eta;  // eta exponents; empty = level-1 product
};

inline const std::vector<BuiltinInfo>& builtin_forms() {
    static const std::vector<BuiltinInfo> forms{
        {"delta", 12, 1, {{1, 24}}},
        {"1.16.a", 16, 1, {}},
        {"1.18.a", 18, 1, {}},
        {"1.20.a", 20, 1, {}},
        {"1.22.a", 22, 1, {}},
        {"1.26.a", 26, 1, {}},
        {"11.2.a", 2, 11, {{1, 2}, {11, 2}}},
        {"5.4.a", 4, 5, {{1, 4}, {5, 4}}},
        {"3.6.a", 6, 3, {{1, 6}, {3, 6}}},
        {"2.8.a", 8, 2, {{1, 8}, {2, 8}}},
    };
    return forms;
}

inline bool is_builtin(const std::string& label) {
    for (const auto& f : builtin_forms())
        if (f.label == label) return true;
    return false;
}

inline CoeffTable make_builtin(const std::string& label, long nmax) {
    for (const auto& f : builtin_forms()) {
        if (f.label != label) continue;
        EigenformSpec spec;
        spec.label = f.label;
        spec.weight = f.weight;
        spec.level = f.level;
        spec.character = DirichletCharacter::trivial(f.level);
        if (!f.eta.empty()) {
            spec.source = FormSource::EtaQuotient;
            std::string d;
            for (auto [dd, r] : f.eta) d += "eta(" + std::to_string(dd) + "z)^" + std::to_string(r) + " ";
            spec.source_detail = d;
            return table_from_int_series(std::move(spec), eta_quotient_series(f.eta, nmax), nmax);
        }
        spec.source = FormSource::Level1Product;
        spec.source_detail = "Delta * E_" + std::to_string(f.weight - 12);
        PowerSeries<Int> s = delta_series(nmax) * eisenstein_series_int(f.weight - 12, nmax + 1);
        return table_from_int_series(std::move(spec), s, nmax);
    }
    throw std::invalid_argument("make_builtin: unknown label '" + label + "'");
}

// Builtin, or an ingested form from the registry directory.
inline CoeffTable resolve_form(const std::string& label, long nmax, const std::string& forms_dir) {
    if (is_builtin(label)) return make_builtin(label, nmax);
    std::filesystem::path p = std::filesystem::path(forms_dir) / (label + ".json");
    if (!std::filesystem::exists(p))
        throw std::invalid_argument("unknown form '" + label + "' (not built in, no file " +
                                    p.string() + ")");
    return ingest_form(p.string());
}

struct RegistryEntry {
    std::string label;
    int weight;
    long level;
    long char_order;
    bool builtin;
};

inline std::vector<RegistryEntry> list_forms(const std::string& forms_dir) {
    std::vector<RegistryEntry> out;
    for (const auto& f : builtin_forms()) out.push_back({f.label, f.weight, f.level, 1, true});
    std::error_code ec;
    if (std::filesystem::is_directory(forms_dir, ec)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(forms_dir))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            try {
                CoeffTable t = ingest_form(p.string());
                out.push_back({t.spec().label, t.spec().weight, t.spec().level,
                               t.spec().character.order(), false});
            } catch (const std::exception&) {
                out.push_back({p.stem().string() + " (invalid)", 0, 0, 0, false});
            }
        }
    }
    return out;
}

// Validates and persists one form file into the registry directory.
inline std::string ingest_into_registry(const std::string& file, const std::string& forms_dir) {
    CoeffTable t = ingest_form(file);
    if (is_builtin(t.spec().label))
        throw std::invalid_argument("label '" + t.spec().label + "' collides with a built-in form");
    std::filesystem::create_directories(forms_dir);
    std::filesystem::path p = std::filesystem::path(forms_dir) / (t.spec().label + ".json");
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << canonical_form_json(t) << "\n";
    return p.string();
}

}  // namespace heckescan
