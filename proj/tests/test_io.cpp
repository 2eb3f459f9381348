#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>

#include "cometric/io.hpp"

using namespace cometric;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("cometric_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

} // namespace

TEST_CASE("scheme files round-trip through dump and load") {
    TempDir tmp;
    for (const auto& name : catalog_names()) {
        CatalogEntry entry = catalog_lookup(name);
        const std::string path = tmp.file("scheme.json");
        dump_catalog(name, path);
        RelationTable loaded = load_scheme(path);
        INFO(name);
        CHECK(loaded == entry.table);
    }
    CHECK_THROWS_AS(dump_catalog("nope", tmp.file("x.json")), UnknownName);
}

TEST_CASE("graph files load via the distance partition") {
    TempDir tmp;
    const std::string path = tmp.file("petersen_graph.json");
    json doc;
    doc["type"] = "graph";
    doc["n"] = 10;
    json edges = json::array();
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < 32; ++mask)
        if (__builtin_popcount(mask) == 2) subsets.push_back(mask);
    for (int x = 0; x < 10; ++x)
        for (int y = x + 1; y < 10; ++y)
            if ((subsets[x] & subsets[y]) == 0) edges.push_back({x, y});
    doc["edges"] = std::move(edges);
    write_file(path, doc.dump());
    RelationTable loaded = load_scheme(path);
    CHECK(loaded == petersen().table);
}

TEST_CASE("malformed files raise ParseError") {
    TempDir tmp;
    const std::string path = tmp.file("bad.json");
    SECTION("missing file") {
        CHECK_THROWS_AS(load_scheme(tmp.file("absent.json")), ParseError);
    }
    SECTION("not json") {
        write_file(path, "not json at all");
        CHECK_THROWS_AS(load_scheme(path), ParseError);
    }
    SECTION("entry out of range") {
        write_file(path, R"({"type":"relation_matrix","n":2,"d":2,
                             "rows":[[0,7],[7,0]]})");
        CHECK_THROWS_AS(load_scheme(path), ParseError);
    }
    SECTION("wrong row length") {
        write_file(path, R"({"type":"relation_matrix","n":2,"d":1,"rows":[[0,1],[1]]})");
        CHECK_THROWS_AS(load_scheme(path), ParseError);
    }
    SECTION("unknown type") {
        write_file(path, R"({"type":"hypergraph","n":2})");
        CHECK_THROWS_AS(load_scheme(path), ParseError);
    }
    SECTION("non-scheme relation matrix propagates NotAScheme") {
        // P_3 distance table
        write_file(path, R"({"type":"relation_matrix","n":3,"d":2,
                             "rows":[[0,1,2],[1,0,1],[2,1,0]]})");
        CHECK_THROWS_AS(load_scheme(path), NotAScheme);
    }
}

TEST_CASE("analyze produces consistent reports") {
    SECTION("Petersen") {
        AnalysisReport rep = analyze(petersen().table, {}, "petersen");
        CHECK_FALSE(rep.discrepancy);
        CHECK(rep.n == 10);
        CHECK(rep.d == 2);
        CHECK(rep.multiplicities == std::vector<long long>{1, 5, 4});
        REQUIRE(rep.per_e.size() == 2);
        const PerEResult& e1 = rep.per_e[0];
        REQUIRE(e1.ratio);
        CHECK(e1.ratio->is_qpoly);
        CHECK(*e1.ratio->l_witness == 2);
        CHECK(e1.ratio->K[0] == Catch::Approx(2.0));
        CHECK(e1.ratio->K[1] == Catch::Approx(-1.0));
    }
    SECTION("pentagon: two P-witnesses, non-integral ratios") {
        AnalysisReport rep = analyze(cycle(5).table, {}, "cycle:5");
        CHECK_FALSE(rep.discrepancy);
        CHECK(rep.p_witnesses.size() == 2);
        REQUIRE(rep.per_e[0].ratio);
        bool any_nonintegral = false;
        for (bool f : rep.per_e[0].ratio->integral_flags)
            any_nonintegral = any_nonintegral || !f;
        CHECK(any_nonintegral);
    }
    SECTION("class 1 is rejected") {
        CHECK_THROWS_WITH(analyze(cycle(3).table), Catch::Matchers::ContainsSubstring("d >= 2"));
    }
    SECTION("whole catalog analyzes without discrepancy") {
        for (const auto& name : catalog_names()) {
            CatalogEntry entry = catalog_lookup(name);
            if (entry.table.d < 2) continue;
            INFO(name);
            AnalysisReport rep = analyze(entry.table, {}, name);
            CHECK_FALSE(rep.discrepancy);
        }
    }
}

TEST_CASE("machine reports are byte-identical for a fixed seed") {
    AnalysisOptions opt;
    opt.seed = 99;
    std::string a = report_machine(analyze(petersen().table, opt, "petersen"));
    std::string b = report_machine(analyze(petersen().table, opt, "petersen"));
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}

TEST_CASE("text report mentions the verdicts") {
    AnalysisReport rep = analyze(petersen().table, {}, "petersen");
    std::string text = report_text(rep);
    CHECK(text.find("Q-polynomial") != std::string::npos);
    CHECK(text.find("petersen") != std::string::npos);
}
