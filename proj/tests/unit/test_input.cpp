#include <doctest.h>

#include "cychom/input.hpp"

#include <cstdio>
#include <fstream>

using namespace cychom;

namespace {

const char* Q_TEXT =
    "# one loop plus a contracting generator\n"
    "name Q\n"
    "kind semifree\n"
    "objects pt\n"
    "cofibrant yes\n"
    "x: pt->pt deg=0 wt=1\n"
    "y: pt->pt deg=1 wt=2 d=x*x\n";

const char* D_TEXT =
    "name D\n"
    "kind finitedim\n"
    "objects pt\n"
    "basis one: pt->pt deg=0 wt=0 identity\n"
    "basis e: pt->pt deg=0 wt=1\n"
    "mul e*e = 0\n"
    "d e = 0\n";

ParseError capture(const std::string& text) {
    try {
        parse_input(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "unreachable");
}

} // namespace

TEST_CASE("semifree document round trip") {
    InputDocument doc = parse_input(Q_TEXT);
    REQUIRE(doc.kind == InputDocument::SemiFree);
    const SemiFreePresentation& p = doc.semifree;
    CHECK(p.name == "Q");
    CHECK(p.objects == std::vector<std::string>{"pt"});
    CHECK(p.cofibrant_asserted);
    REQUIRE(p.gens.size() == 2);
    CHECK(p.gens[0].name == "x");
    CHECK(p.gens[0].deg == 0);
    CHECK(p.gens[0].wt == 1);
    CHECK(p.gens[1].name == "y");
    CHECK(p.gens[1].deg == 1);
    CHECK(p.gens[1].wt == 2);
    CHECK(p.diff[0].empty());
    REQUIRE(p.diff[1].size() == 1);
    CHECK(p.diff[1].begin()->first == std::vector<int>{0, 0});
    CHECK(p.diff[1].begin()->second == rat(1));

    std::string canon = serialize(doc);
    InputDocument again = parse_input(canon);
    CHECK(serialize(again) == canon);
    CHECK(make_algebra(doc)->name() == "Q");
}

TEST_CASE("finitedim document round trip") {
    InputDocument doc = parse_input(D_TEXT);
    REQUIRE(doc.kind == InputDocument::FiniteDim);
    const FiniteDimPresentation& p = doc.finitedim;
    CHECK(p.name == "D");
    REQUIRE(p.basis.size() == 2);
    CHECK(p.basis[0].identity);
    CHECK(!p.basis[1].identity);
    CHECK(p.basis[1].wt == 1);
    /* the explicit zero product is normalized away */
    CHECK(p.mult.empty());
    CHECK(p.diff[1].empty());

    std::string canon = serialize(doc);
    CHECK(canon.find("mul") == std::string::npos);
    InputDocument again = parse_input(canon);
    CHECK(serialize(again) == canon);
    CHECK(make_algebra(doc)->name() == "D");
}

TEST_CASE("rational coefficients in expressions") {
    InputDocument doc = parse_input(
        "name R\nkind semifree\nobjects pt\n"
        "x: pt->pt deg=0 wt=1\n"
        "z: pt->pt deg=1 wt=2 d=1/2*x*x - x*x\n");
    const WordExpr& e = doc.semifree.diff[1];
    REQUIRE(e.size() == 1);
    CHECK(e.begin()->second == rat(-1) / rat(2));
    std::string canon = serialize(doc);
    InputDocument again = parse_input(canon);
    CHECK(serialize(again) == canon);
}

TEST_CASE("load fills the name from the file stem") {
    std::string path = "test_input_stem.dg";
    {
        std::ofstream out(path);
        out << "kind semifree\nobjects pt\nx: pt->pt deg=0 wt=1\n";
    }
    InputDocument doc = load_input(path);
    CHECK(doc.display_name() == "test_input_stem");
    std::remove(path.c_str());
}

TEST_CASE("parse errors carry their position") {
    ParseError bad_kind = capture("kind weird\n");
    CHECK(bad_kind.line == 1);
    CHECK(std::string(bad_kind.what()).find("kind must be") != std::string::npos);

    /* the unknown name inside a differential is found after all
     * generators are declared, at its own line and column */
    ParseError unknown = capture(
        "name B\nkind semifree\nobjects pt\n"
        "y: pt->pt deg=1 wt=2 d=q*q\n");
    CHECK(unknown.line == 4);
    CHECK(unknown.col == 24);
    CHECK(std::string(unknown.what()) == "4:24: unknown generator: q");

    ParseError missing = capture("kind semifree\nobjects pt\nx: pt->pt wt=1\n");
    CHECK(missing.line == 3);
    CHECK(std::string(missing.what()).find("needs deg=") != std::string::npos);

    ParseError constant = capture(
        "kind semifree\nobjects pt\n"
        "x: pt->pt deg=0 wt=1\n"
        "y: pt->pt deg=1 wt=2 d=x*x + 3\n");
    CHECK(constant.line == 4);
    CHECK(std::string(constant.what()).find("constant term") != std::string::npos);

    ParseError nonlinear = capture(
        "kind finitedim\nobjects pt\n"
        "basis one: pt->pt deg=0 wt=0 identity\n"
        "basis e: pt->pt deg=0 wt=1\n"
        "mul e*e = e*e\n");
    CHECK(nonlinear.line == 5);
    CHECK(std::string(nonlinear.what()).find("linear combination") != std::string::npos);

    ParseError dup = capture(
        "kind semifree\nobjects pt\n"
        "x: pt->pt deg=0 wt=1\n"
        "x: pt->pt deg=0 wt=1\n");
    CHECK(dup.line == 4);
    CHECK(std::string(dup.what()).find("duplicate generator") != std::string::npos);
}
