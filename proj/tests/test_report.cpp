#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heckescan/report.hpp"
#include "synthetic_form.hpp"

using namespace heckescan;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scan rows: ordering, skipping, censuses") {
    ScanConfig cfg;
    cfg.forms = {"delta", "11.2.a"};
    cfg.pmin = 2;
    cfg.pmax = 13;
    cfg.js = {2, 1};
    cfg.kind = FilterSpec::Kind::AllMultiples;
    cfg.nmax = 30;
    auto rows = run_scan(cfg);
    // 6 primes * 2 js * 2 forms
    REQUIRE(rows.size() == 24);
    // ordering: label, then p, then pattern (j ascending)
    CHECK(rows[0].form == "11.2.a");
    CHECK(rows[0].p == 2);
    CHECK(rows[0].j == 1);
    CHECK(rows[1].j == 2);
    CHECK(rows.back().form == "delta");
    // p = 11 on the level-11 form is skipped with a note
    bool found_skip = false;
    for (const auto& r : rows)
        if (r.form == "11.2.a" && r.p == 11) {
            CHECK(r.status == "SKIPPED");
            CHECK(r.message == "p divides N");
            found_skip = true;
        }
    REQUIRE(found_skip);
    // every non-skipped delta row has at least one sign change
    for (const auto& r : rows)
        if (r.form == "delta") {
            CHECK(r.status == "OK");
            CHECK(r.change_count >= 1);
            CHECK(r.theorem5_status == "NotApplicable");
            CHECK(r.exclusion_mus.empty());
        }
}

TEST_CASE("scan is deterministic") {
    ScanConfig cfg;
    cfg.forms = {"delta"};
    cfg.pmax = 11;
    cfg.js = {1, 3};
    cfg.nmax = 25;
    auto rows1 = run_scan(cfg);
    auto rows2 = run_scan(cfg);
    REQUIRE(rows1.size() == rows2.size());
    for (size_t i = 0; i < rows1.size(); ++i) CHECK(to_csv(rows1[i]) == to_csv(rows2[i]));
}

TEST_CASE("csv and json emissions carry identical data") {
    ScanConfig cfg;
    cfg.forms = {"delta"};
    cfg.pmax = 7;
    cfg.js = {1};
    cfg.nmax = 20;
    auto rows = run_scan(cfg);
    auto dir = std::filesystem::temp_directory_path() / "heckescan_report_test";
    std::filesystem::create_directories(dir);
    write_rows(rows, (dir / "out.csv").string(), "csv");
    write_rows(rows, (dir / "out.json").string(), "json");
    std::string csv = slurp(dir / "out.csv");
    CHECK(csv.rfind("form,p,pattern,j,l,m,nmax,first_change,change_count,zero_count,"
                    "deligne_margin,exclusion_mus,theorem5_status",
                    0) == 0);
    auto doc = nlohmann::json::parse(slurp(dir / "out.json"));
    REQUIRE(doc["rows"].size() == rows.size());
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string line;
        std::getline(lines, line);
        const auto& j = doc["rows"][i];
        // spot fields: form, p, change_count agree across formats
        CHECK(line.rfind(j["form"].get<std::string>() + "," + std::to_string(j["p"].get<long>()),
                         0) == 0);
        CHECK(line.find("," + std::to_string(j["change_count"].get<long>()) + ",") !=
              std::string::npos);
    }
    CHECK_THROWS(write_rows(rows, (dir / "out.x").string(), "xml"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("error rows and exit logic") {
    ScanConfig cfg;
    cfg.forms = {"no-such-form"};
    auto rows = run_scan(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "ERROR");
    CHECK(any_error(rows));
    ScanConfig good;
    good.forms = {"delta"};
    good.pmax = 5;
    good.nmax = 10;
    CHECK_FALSE(any_error(run_scan(good)));
}

TEST_CASE("class-pattern scan rows") {
    ScanConfig cfg;
    cfg.forms = {"delta"};
    cfg.pmin = 2;
    cfg.pmax = 5;
    cfg.kind = FilterSpec::Kind::ResidueClass;
    cfg.class_l = 1;
    cfg.class_m = 2;
    cfg.nmax = 20;
    auto rows = run_scan(cfg);
    for (const auto& r : rows) {
        CHECK(r.pattern == "class");
        CHECK(r.theorem5_status == "NoRealRoot");
        CHECK(r.change_count >= 1);
    }
}

TEST_CASE("all-zero odd class is a status, not a sign-change claim") {
    // the synthetic fixture has a(3) = 0, so the odd subsequence at p = 3
    // vanishes identically
    auto s = heckescan_test::synthetic_mod5(60);
    auto dir = std::filesystem::temp_directory_path() / "heckescan_allzero";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "in.json");
        out << canonical_form_json(s.table);
    }
    ingest_into_registry((dir / "in.json").string(), dir.string());
    ScanConfig cfg;
    cfg.forms = {s.table.spec().label};
    cfg.pmin = 3;
    cfg.pmax = 3;
    cfg.kind = FilterSpec::Kind::OddMultiples;
    cfg.js = {1};
    cfg.nmax = 10;
    cfg.forms_dir = dir.string();
    auto rows = run_scan(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "ALL_ZERO");
    CHECK(rows[0].change_count == 0);
    CHECK(rows[0].zero_count == 10);
    CHECK_FALSE(any_error(rows));
    std::filesystem::remove_all(dir);
}

TEST_CASE("class rows flag non-real chi0(p)^l and report both component censuses") {
    // mod-17 fixture: chi0(2) has order 8 (2 = 3^14 mod 17, so the order-16
    // character sends it to a primitive 8th root of unity)
    auto s = heckescan_test::synthetic_mod17(80);
    CHECK(char_value_order(s.chi0, 2) == 8);
    auto dir = std::filesystem::temp_directory_path() / "heckescan_order8";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "in.json");
        out << canonical_form_json(s.table);
    }
    ingest_into_registry((dir / "in.json").string(), dir.string());

    auto scan_l = [&](long l) {
        ScanConfig cfg;
        cfg.forms = {s.table.spec().label};
        cfg.pmin = 2;
        cfg.pmax = 2;
        cfg.kind = FilterSpec::Kind::ResidueClass;
        cfg.class_l = l;
        cfg.class_m = 8;
        cfg.nmax = 10;
        cfg.forms_dir = dir.string();
        auto rows = run_scan(cfg);
        REQUIRE(rows.size() == 1);
        return rows[0];
    };
    // l = 1: chi0(2)^1 is a primitive 8th root; neither real nor +-i
    ScanRow r1 = scan_l(1);
    CHECK(r1.status == "OK");
    CHECK(r1.message.find("order > 4") != std::string::npos);
    CHECK(r1.message.find("Re census") != std::string::npos);
    CHECK(r1.message.find("Im census") != std::string::npos);
    // l = 2: chi0(2)^2 = +-i, the remark's imaginary-part case
    ScanRow r2 = scan_l(2);
    CHECK(r2.message.find("+-i") != std::string::npos);
    // l = 4: chi0(2)^4 = -1 is real and nothing needs flagging
    ScanRow r4 = scan_l(4);
    CHECK(r4.message.empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("configs are validated") {
    ScanConfig bad;
    bad.forms = {"delta"};
    bad.pmin = 1;
    CHECK_THROWS(run_scan(bad));
    ScanConfig bad2;
    bad2.forms = {"delta"};
    bad2.nmax = 1;
    CHECK_THROWS(run_scan(bad2));
}

TEST_CASE("identity suite runs green on built-ins") {
    VerifyConfig cfg;
    cfg.forms = {"delta", "5.4.a"};
    cfg.pmax = 7;
    cfg.jmax = 3;
    cfg.order = 60;
    cfg.mmax = 3;
    cfg.rec_nmax = 25;
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 7);
    for (const auto& r : results) {
        INFO(r.name << " failed at " << r.detail);
        CHECK(r.pass);
    }
}
