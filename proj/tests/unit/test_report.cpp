#include <doctest.h>

#include "cychom/report.hpp"
#include "cychom/sha256.hpp"

#include <cstdlib>
#include <filesystem>

using namespace cychom;

TEST_CASE("sha256 known values") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    /* 56 bytes forces the length into a second padding block */
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("format names") {
    CHECK(report_format_of("md") == ReportFormat::Markdown);
    CHECK(report_format_of("csv") == ReportFormat::Csv);
    CHECK(report_format_of("json") == ReportFormat::Json);
    CHECK(!report_format_of("yaml").has_value());
}

TEST_CASE("gs relabeling") {
    /* marked-letter count n and filtration step r turn into the even
     * column 2r and the complementary column n - r */
    auto [p, q] = gs_labels(2, 1);
    CHECK(p == 2);
    CHECK(q == 1);
    auto [p0, q0] = gs_labels(3, 0);
    CHECK(p0 == 0);
    CHECK(q0 == 3);
}

TEST_CASE("cell sorting merges duplicates and rejects conflicts") {
    std::vector<TableCell> cells = {
        {"H(CC)", 1, 2, 0, 0, 5},
        {"H(CC)", 0, 2, 0, 0, 1},
        {"H(CC)", 1, 2, 0, 0, 5},
    };
    sort_cells(cells);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].w == 0);
    CHECK(cells[1].w == 1);
    CHECK(cells[1].value == 5);

    std::vector<TableCell> clash = {
        {"H(CC)", 1, 2, 0, 0, 5},
        {"H(CC)", 1, 2, 0, 0, 6},
    };
    CHECK_THROWS(sort_cells(clash));
}

TEST_CASE("cell table serialization round trip") {
    std::vector<TableCell> cells = {
        {"H(X:2)", 1, 0, 2, 0, 3},
        {"H(Xtot)", 2, -1, 0, 1, 7},
    };
    std::string bytes = cells_to_bytes(cells);
    auto back = cells_from_bytes(bytes);
    REQUIRE(back.has_value());
    REQUIRE(back->size() == 2);
    CHECK((*back)[0].table == "H(X:2)");
    CHECK((*back)[0].n == 2);
    CHECK((*back)[1].r == 1);
    CHECK((*back)[1].value == 7);
    CHECK(!cells_from_bytes("not a table").has_value());
}

TEST_CASE("cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "cychom-test-cache";
    fs::remove_all(dir);
    setenv("CYCHOM_CACHE_DIR", dir.string().c_str(), 1);
    CHECK(!cache_read("some-key").has_value());
    cache_write("some-key", "payload");
    auto got = cache_read("some-key");
    REQUIRE(got.has_value());
    CHECK(*got == "payload");
    unsetenv("CYCHOM_CACHE_DIR");
    fs::remove_all(dir);
}

TEST_CASE("report emission is deterministic") {
    Report r;
    r.input_name = "F";
    r.input_sha256 = sha256_hex("F");
    CheckReport c;
    c.name = "demo";
    c.window = "w 0..1, d 0..2";
    c.cells.push_back({"dim H", 1, 0, 1});
    r.checks.push_back(c);
    for (const TableCell& t : cells_of(c)) r.cells.push_back(t);
    sort_cells(r.cells);

    std::string a = emit_report(r, ReportFormat::Json);
    std::string b = emit_report(r, ReportFormat::Json);
    CHECK(a == b);
    CHECK(a.find("\"version\": 1") != std::string::npos);
    CHECK(a.find("\"engine\": \"1.0.0\"") != std::string::npos);
    CHECK(a.find("\"timings\"") == std::string::npos);

    std::string md = emit_report(r, ReportFormat::Markdown);
    CHECK(md.find("# cychom report") == 0);
    CHECK(md.find("| demo |") != std::string::npos);

    std::string csv = emit_report(r, ReportFormat::Csv);
    CHECK(csv.find("type,name,w,d,n,r,value,detail") == 0);
    CHECK(csv.find("cell,dim H,1,0,0,0,1,") != std::string::npos);

    /* failed checks surface their witnesses */
    CheckReport bad;
    bad.name = "broken";
    bad.window = "w 0..0";
    bad.fail("w=0 d=1: dimensions differ");
    Report rf;
    rf.input_name = "F";
    rf.input_sha256 = r.input_sha256;
    rf.checks.push_back(bad);
    CHECK(!rf.all_pass());
    std::string jf = emit_report(rf, ReportFormat::Json);
    CHECK(jf.find("\"verdict\": \"fail\"") != std::string::npos);
    CHECK(jf.find("dimensions differ") != std::string::npos);
}
