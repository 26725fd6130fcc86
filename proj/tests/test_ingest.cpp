#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "heckescan/ingest.hpp"
#include "heckescan/registry.hpp"
#include "synthetic_form.hpp"

using namespace heckescan;

TEST_CASE("round trip through the schema") {
    CoeffTable t = make_builtin("delta", 50);
    std::string text = canonical_form_json(t);
    CoeffTable back = ingest_form_text(text);
    CHECK(back.spec().label == "delta");
    CHECK(back.nmax() == 50);
    for (long n = 1; n <= 50; ++n) CHECK(back.a(n) == t.a(n));
    // canonical serialization is a fixed point
    CHECK(canonical_form_json(back) == text);
}

TEST_CASE("round trip with nontrivial character") {
    auto s = heckescan_test::synthetic_mod5(60);
    CHECK_FALSE(verify_eigenform(s.table).has_value());
    CHECK_FALSE(verify_reality(s.table).has_value());
    std::string text = canonical_form_json(s.table);
    CoeffTable back = ingest_form_text(text);
    CHECK(back.spec().character == s.table.spec().character);
    for (long n = 1; n <= 60; ++n) CHECK(back.a(n) == s.table.a(n));
}

TEST_CASE("planted multiplicativity violation is located") {
    CoeffTable t = make_builtin("11.2.a", 30);
    nlohmann::json doc = nlohmann::json::parse(canonical_form_json(t));
    doc["coefficients"][5]["coeffs"][0] = "17";  // a(6) := 17
    try {
        ingest_form_json(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.index == 6);
    }
}

TEST_CASE("schema violations are ParseErrors") {
    CoeffTable t = make_builtin("delta", 10);
    nlohmann::json good = nlohmann::json::parse(canonical_form_json(t));

    nlohmann::json unknown = good;
    unknown["extra"] = 1;
    CHECK_THROWS_AS(ingest_form_json(unknown), ParseError);

    nlohmann::json missing = good;
    missing.erase("weight");
    CHECK_THROWS_AS(ingest_form_json(missing), ParseError);

    nlohmann::json oddweight = good;
    oddweight["weight"] = 11;
    CHECK_THROWS_AS(ingest_form_json(oddweight), ParseError);

    CHECK_THROWS_AS(ingest_form_text("not json"), ParseError);

    // character value that is not a root of unity
    auto s = heckescan_test::synthetic_mod5(20);
    nlohmann::json chardoc = nlohmann::json::parse(canonical_form_json(s.table));
    chardoc["char_values"][1][1] = {{"order", 1}, {"coeffs", {"2"}}};
    CHECK_THROWS_AS(ingest_form_json(chardoc), ParseError);

    // char value at a non-unit index
    nlohmann::json nonunit = nlohmann::json::parse(canonical_form_json(s.table));
    nonunit["char_values"][0][0] = 0;
    CHECK_THROWS_AS(ingest_form_json(nonunit), ParseError);
}

TEST_CASE("odd characters are rejected for even weight") {
    // chi mod 4 with chi(3) = -1 is odd
    nlohmann::json doc;
    doc["label"] = "odd-char";
    doc["weight"] = 2;
    doc["level"] = 4;
    doc["char_modulus"] = 4;
    doc["char_values"] = {
        {1, {{"order", 1}, {"coeffs", {"1"}}}},
        {3, {{"order", 1}, {"coeffs", {"-1"}}}},
    };
    doc["coefficients"] = {{{"order", 1}, {"coeffs", {"1"}}}};
    try {
        ingest_form_json(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.reason.find("chi(-1)") != std::string::npos);
    }
}

TEST_CASE("normalization is validated") {
    CoeffTable t = make_builtin("delta", 10);
    nlohmann::json doc = nlohmann::json::parse(canonical_form_json(t));
    doc["coefficients"][0]["coeffs"][0] = "2";
    try {
        ingest_form_json(doc);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("registry persistence") {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "heckescan_test_forms";
    std::filesystem::remove_all(dir);

    auto s = heckescan_test::synthetic_mod5(40);
    std::filesystem::create_directories(dir);
    std::filesystem::path src = dir / "input.json";
    {
        std::ofstream out(src);
        out << canonical_form_json(s.table);
    }
    std::string stored = ingest_into_registry(src.string(), dir.string());
    CHECK(std::filesystem::exists(stored));

    CoeffTable resolved = resolve_form(s.table.spec().label, 40, dir.string());
    CHECK(resolved.a(7) == s.table.a(7));

    auto listing = list_forms(dir.string());
    bool builtin_present = false, ingested_present = false;
    for (const auto& e : listing) {
        if (e.label == "delta" && e.builtin) builtin_present = true;
        if (e.label == s.table.spec().label && !e.builtin) ingested_present = true;
    }
    CHECK(builtin_present);
    CHECK(ingested_present);

    // builtins survive an empty/missing registry directory
    auto listing2 = list_forms((dir / "missing").string());
    CHECK(listing2.size() == builtin_forms().size());

    std::filesystem::remove_all(dir);
}
