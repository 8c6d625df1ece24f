#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "boofdeg/error.hpp"
#include "boofdeg/harness.hpp"

using namespace boofdeg;

namespace {

std::string temp_path(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("boofdeg_test_" + name);
    std::filesystem::remove(p);
    return p.string();
}

std::string csv_of(const ScanResult& r, const std::vector<Rational>& eps) {
    std::ostringstream os;
    write_csv(os, r.records, eps);
    return os.str();
}

}  // namespace

TEST_CASE("cache store, lookup and miss") {
    const auto path = temp_path("cache1.jsonl");
    {
        Cache c(path);
        CHECK(!c.lookup("k1"));
        CHECK(c.misses() == 1);
        c.store("k1", {{"value", 3}});
        c.store("k1", {{"value", 4}});
        REQUIRE(c.lookup("k1"));
        CHECK((*c.lookup("k1"))["value"] == 4);
    }
    Cache again(path);
    CHECK(again.size() == 1);
    CHECK((*again.lookup("k1"))["value"] == 4);
    CHECK(again.corrupted_lines() == 0);
    std::filesystem::remove(path);
}

TEST_CASE("cache tolerates a truncated final line") {
    const auto path = temp_path("cache2.jsonl");
    {
        Cache c(path);
        c.store("a", 1);
        c.store("b", 2);
    }
    {
        std::ofstream out(path, std::ios::app);
        out << "{\"key\": \"c\", \"val";
    }
    Cache c(path);
    CHECK(c.corrupted_lines() == 1);
    CHECK(c.size() == 2);
    CHECK(!c.lookup("c"));
    c.store("d", 5);
    Cache d(path);
    CHECK(d.corrupted_lines() == 1);
    CHECK((*d.lookup("d")) == 5);
    std::filesystem::remove(path);
}

TEST_CASE("cache on an unwritable path fails on store") {
    Cache c("/nonexistent-dir/for/cache.jsonl");
    CHECK(!c.lookup("x"));
    CHECK_THROWS_AS(c.store("x", 1), Error);
}

TEST_CASE("cached measures equal fresh measures") {
    const auto path = temp_path("cache3.jsonl");
    Cache cache(path);
    MeasureOptions with;
    with.cache = &cache;
    const auto f = majority_table(3);
    const auto a = compute_record(f, with);
    const auto b = compute_record(f, with);
    const auto c = compute_record(f, MeasureOptions{});
    CHECK(cache.hits() > 0);
    CHECK(a.csv_row(with.eps_list) == b.csv_row(with.eps_list));
    CHECK(a.csv_row(with.eps_list) == c.csv_row(with.eps_list));
    std::filesystem::remove(path);
}

TEST_CASE("analyze AND_2") {
    const auto r = compute_record(TruthTable::from_hex("8", 2), MeasureOptions{});
    CHECK(r.deg == 2);
    REQUIRE(r.at(Rational(1, 3)));
    CHECK(r.at(Rational(1, 3))->n_f.value == 1);
    CHECK(r.dt == 2);
    CHECK(r.complete);
    const auto j = r.to_json();
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["hex"] == "8");
}

TEST_CASE("analyze DNF carries read-k facts and embeddings") {
    const auto r = analyze_dnf(parse_dnf("(x1&x2)|(x3&x4)"), MeasureOptions{});
    REQUIRE(r.dnf);
    CHECK(r.dnf->alpha == 2);
    CHECK(r.dnf->beta == 2);
    CHECK(r.dnf->k == 1);
    CHECK(r.dnf->minimal);
    CHECK(r.extra.contains("readk_embed"));
    CHECK(r.floors.size() == 3);
    for (const auto& [name, ok] : r.floors) CHECK_MESSAGE(ok, name);
    SuiteResult s;
    s.add(r);
    CHECK(!s.violated());
    CHECK(s.inequality(9).held == 1);
}

TEST_CASE("analyze property nonempty gives OR_3") {
    const auto r = analyze_property(builtin_property("nonempty", 3, 2), MeasureOptions{});
    CHECK(r.hex == or_table(3).to_hex());
    for (const auto& [name, ok] : r.floors) CHECK_MESSAGE(ok, name);
    CHECK(r.extra["vertices"] == 3);
}

TEST_CASE("scan at n = 2") {
    ScanOptions o;
    o.n = 2;
    const auto all = run_scan(o);
    CHECK(all.records.size() == 16);
    CHECK(!all.suite.violated());
    std::set<std::string> classes;
    for (const auto& r : all.records) classes.insert(r.npn_class);
    CHECK(classes.size() == 4);
    o.npn = true;
    CHECK(run_scan(o).records.size() == 4);
}

TEST_CASE("scans are byte-identical across runs and worker counts") {
    ScanOptions o;
    o.n = 3;
    o.npn = true;
    const auto a = csv_of(run_scan(o), o.measure.eps_list);
    o.workers = 3;
    const auto b = csv_of(run_scan(o), o.measure.eps_list);
    CHECK(a == b);
    const auto header = a.substr(0, a.find('\n'));
    CHECK(header.rfind("schema_version,n,hex,npn_class,deg,ndeg,deg_sign,N_1/4", 0) == 0);
}

TEST_CASE("suite halts on the first violation") {
    auto r = compute_record(and_table(2), MeasureOptions{});
    r.ndeg = 5;
    SuiteResult s;
    s.add(r);
    CHECK(s.violated());
    CHECK(s.halted);
    CHECK(s.inequality(2).violated());
    s.add(compute_record(or_table(2), MeasureOptions{}));
    CHECK(s.records == 1);
    CHECK(s.to_json()["inequalities"][1]["status"] == "violated");
}

TEST_CASE("budget exhaustion yields a flagged bracket") {
    MeasureOptions o;
    o.nd.lp_budget = 1;
    const auto r = compute_record(xor_table(3), o);
    const auto* e = r.at(Rational(1, 3));
    REQUIRE(e);
    const int exact = approx_ndeg(xor_table(3), Rational(1, 3)).value;
    CHECK(e->n_f.lower <= exact);
    CHECK(exact <= e->n_f.upper);
    if (!e->n_f.exact) CHECK(!r.complete);
}

TEST_CASE("NOR table rows") {
    const auto rows = nor_table_rows(4);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].nd.value == 1);
    CHECK(rows[1].nd.value == 1);
    for (const auto& r : rows) {
        CHECK(r.meets_reference);
        CHECK(r.below_approx_degree);
    }
    CHECK_THROWS_AS(nor_table_rows(9), CapError);
}

TEST_CASE("verify is deterministic and rejects unknown targets") {
    const auto a = run_verify("restriction-monotonicity", 40, 5);
    const auto b = run_verify("restriction-monotonicity", 40, 5);
    CHECK(a.ok());
    CHECK(a.to_json() == b.to_json());
    CHECK(run_verify("composition", 1, 1).ok());
    CHECK_THROWS_AS(run_verify("nope", 1, 1), PreconditionError);
}

TEST_CASE("read-k corpus is minimal and within limits") {
    const auto corpus = readk_corpus();
    CHECK(corpus.size() >= 20);
    std::set<int> ks;
    for (const auto& text : corpus) {
        const auto d = parse_dnf(text);
        const auto a = dnf_analyze(d, d.k());
        CHECK_MESSAGE(a.minimal, text);
        CHECK(d.n <= 10);
        CHECK(d.k() <= 3);
        ks.insert(d.k());
    }
    CHECK(ks == std::set<int>{1, 2, 3});
}
