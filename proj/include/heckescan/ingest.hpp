#pragma once

// External newform ingestion. The file format is a single JSON object:
//   label         string
//   weight        even int >= 2
//   level         int >= 1
//   char_modulus  int >= 1, divides level (1 means trivial character;
//                 char_values must then be empty)
//   char_values   array of [n, cyc] pairs covering every unit mod N once
//   coefficients  array of cyc, entry i is a(i+1)
// where cyc = {"order": m, "coeffs": ["p/q", ...]} in the power basis of
// zeta_m (at most order entries). Unknown fields are rejected.
//
// Schema and character-table problems raise ParseError; violated
// coefficient identities raise ValidationError carrying the first bad
// index. An odd character (chi(-1) = -1) cannot pair with even weight
// and is rejected as a ValidationError rather than silently fixed.

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "heckescan/cyclotomic.hpp"
#include "heckescan/dirichlet.hpp"
#include "heckescan/qexpand.hpp"

namespace heckescan {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& w) : std::runtime_error("ParseError: " + w) {}
};

struct ValidationError : std::runtime_error {
    long index;
    std::string reason;
    ValidationError(long idx, const std::string& r)
        : std::runtime_error("ValidationError at n=" + std::to_string(idx) + ": " + r),
          index(idx),
          reason(r) {}
};

namespace detail {

inline CycNumber cyc_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("cyc value must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "order" && it.key() != "coeffs")
            throw ParseError("unknown field '" + it.key() + "' in cyc value");
    if (!j.contains("order") || !j.contains("coeffs")) throw ParseError("cyc value needs order and coeffs");
    if (!j["order"].is_number_integer()) throw ParseError("cyc order must be an integer");
    long order = j["order"].get<long>();
    if (order < 1) throw ParseError("cyc order must be >= 1");
    if (!j["coeffs"].is_array()) throw ParseError("cyc coeffs must be an array");
    std::vector<Rational> raw;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_string()) throw ParseError("cyc coefficients must be rational strings");
        try {
            raw.push_back(parse_rational(c.get<std::string>()));
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad rational: ") + e.what());
        }
    }
    if (raw.size() > static_cast<size_t>(order)) throw ParseError("cyc has more coefficients than its order");
    return CycNumber::from_parts(order, std::move(raw));
}

inline nlohmann::ordered_json cyc_to_json(const CycNumber& x) {
    nlohmann::ordered_json j;
    j["order"] = x.order();
    std::vector<std::string> cs;
    for (const auto& c : x.coords()) cs.push_back(to_string(c));
    j["coeffs"] = cs;
    return j;
}

}  // namespace detail

inline CoeffTable ingest_form_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("top level must be an object");
    static const std::set<std::string> allowed{"label",        "weight",     "level",
                                              "char_modulus", "char_values", "coefficients"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!allowed.count(it.key())) throw ParseError("unknown field '" + it.key() + "'");
    for (const auto& f : allowed)
        if (!doc.contains(f)) throw ParseError("missing field '" + f + "'");

    if (!doc["label"].is_string()) throw ParseError("label must be a string");
    std::string label = doc["label"].get<std::string>();
    if (label.empty()) throw ParseError("label must be nonempty");
    if (!doc["weight"].is_number_integer() || !doc["level"].is_number_integer() ||
        !doc["char_modulus"].is_number_integer())
        throw ParseError("weight, level and char_modulus must be integers");
    int weight = doc["weight"].get<int>();
    long level = doc["level"].get<long>();
    long charmod = doc["char_modulus"].get<long>();
    if (weight < 2 || weight % 2 != 0) throw ParseError("weight must be even and >= 2");
    if (level < 1) throw ParseError("level must be >= 1");
    if (charmod < 1 || level % charmod != 0)
        throw ParseError("char_modulus must be >= 1 and divide the level");

    if (!doc["char_values"].is_array()) throw ParseError("char_values must be an array");
    DirichletCharacter chi;
    if (charmod == 1) {
        if (!doc["char_values"].empty())
            throw ParseError("char_values must be empty when char_modulus = 1");
        chi = DirichletCharacter::trivial(level);
    } else {
        std::vector<CycNumber> table(static_cast<size_t>(charmod), CycNumber(0));
        std::set<long> seen;
        for (const auto& pair : doc["char_values"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
                throw ParseError("char_values entries must be [n, cyc] pairs");
            long n = pair[0].get<long>();
            long r = ((n % charmod) + charmod) % charmod;
            if (gcd_long(r, charmod) != 1) throw ParseError("char value given at non-unit n");
            if (!seen.insert(r).second) throw ParseError("duplicate char value at n");
            table[static_cast<size_t>(r)] = detail::cyc_from_json(pair[1]);
        }
        if (static_cast<long>(seen.size()) != euler_phi(charmod))
            throw ParseError("char_values must cover all units mod N");
        try {
            DirichletCharacter mod_chi = DirichletCharacter::from_values(charmod, std::move(table));
            // Values are read mod char_modulus but the form lives at the level;
            // extend by periodicity (zero off units of the level).
            std::vector<CycNumber> lifted(static_cast<size_t>(level), CycNumber(0));
            for (long n = 0; n < level; ++n)
                if (gcd_long(n, level) == 1) lifted[static_cast<size_t>(n)] = mod_chi.value(n);
            chi = DirichletCharacter::from_values(level, std::move(lifted));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (chi.parity() < 0 && weight % 2 == 0)
        throw ValidationError(level - 1, "chi(-1) = -1 is incompatible with even weight");

    if (!doc["coefficients"].is_array() || doc["coefficients"].empty())
        throw ParseError("coefficients must be a nonempty array");
    std::vector<CycNumber> a;
    for (const auto& c : doc["coefficients"]) a.push_back(detail::cyc_from_json(c));
    if (a[0] != CycNumber(1)) throw ValidationError(1, "not normalized: a(1) != 1");

    EigenformSpec spec;
    spec.label = label;
    spec.weight = weight;
    spec.level = level;
    spec.character = chi;
    spec.source = FormSource::Ingested;
    CoeffTable t(std::move(spec), std::move(a));
    if (auto v = verify_eigenform(t)) throw ValidationError(v->index, v->reason);
    if (auto v = verify_reality(t)) throw ValidationError(v->index, v->reason);
    return t;
}

inline CoeffTable ingest_form_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return ingest_form_json(doc);
}

inline CoeffTable ingest_form(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_form_text(ss.str());
}

// Canonical re-serialization (used for registry persistence and round
// trips): schema field order, canonical cyclotomic coordinates.
inline std::string canonical_form_json(const CoeffTable& t) {
    nlohmann::ordered_json doc;
    doc["label"] = t.spec().label;
    doc["weight"] = t.spec().weight;
    doc["level"] = t.spec().level;
    const DirichletCharacter& chi = t.spec().character;
    bool trivial = chi.is_trivial();
    doc["char_modulus"] = trivial ? 1 : t.spec().level;
    doc["char_values"] = nlohmann::ordered_json::array();
    if (!trivial) {
        long N = t.spec().level;
        for (long n = 0; n < N; ++n) {
            if (gcd_long(n, N) != 1) continue;
            doc["char_values"].push_back({n, detail::cyc_to_json(chi.value(n))});
        }
    }
    doc["coefficients"] = nlohmann::ordered_json::array();
    for (long n = 1; n <= t.nmax(); ++n) doc["coefficients"].push_back(detail::cyc_to_json(t.a(n)));
    return doc.dump(1);
}

}  // namespace heckescan
