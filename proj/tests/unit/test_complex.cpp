#include <doctest.h>

#include "cychom/complex.hpp"

using namespace cychom;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<int>>& rows, int cols) {
    SparseMatrix m(static_cast<int>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < cols; ++c)
            if (rows[r][c] != 0) m.set(static_cast<int>(r), c, rat(rows[r][c]));
    return m;
}

/* 0 -> k -> k -> 0 on degrees 1, 0 with the given middle map. */
Complex two_term(const std::string& name, int diag) {
    Complex c(name, 0, -2, 3);
    c.set_basis(0, {"e0"});
    c.set_basis(1, {"e1"});
    c.set_diff(-1, SparseMatrix(0, 0));
    c.set_diff(0, SparseMatrix(0, 1));
    c.set_diff(1, from_rows({{diag}}, 1));
    c.set_diff(2, SparseMatrix(1, 0));
    c.set_diff(3, SparseMatrix(0, 0));
    return c;
}

} // namespace

TEST_CASE("complex windows guard every accessor") {
    Complex c = two_term("c", 1);
    CHECK(c.lo() == -2);
    CHECK(c.hi() == 3);
    CHECK(c.dim(0) == 1);
    CHECK(c.labels(1)[0] == "e1");
    CHECK_THROWS_AS(c.dim(4), WindowTooSmall);
    CHECK_THROWS_AS(c.labels(-3), WindowTooSmall);
    CHECK_THROWS_AS(c.diff(4), WindowTooSmall);
    CHECK_THROWS_AS(c.homology(-2), WindowTooSmall);
    CHECK_THROWS_AS(c.homology(3), WindowTooSmall);
    CHECK_THROWS_AS(Complex("bad", 0, 2, 1), WindowTooSmall);
}

TEST_CASE("homology of the two standard two-term complexes") {
    Complex id_map = two_term("iso", 1);
    id_map.check_differential();
    CHECK(id_map.homology(0) == 0);
    CHECK(id_map.homology(1) == 0);

    Complex zero_map = two_term("zero", 0);
    CHECK(zero_map.homology(0) == 1);
    CHECK(zero_map.homology(1) == 1);
}

TEST_CASE("check_differential rejects a non-complex") {
    Complex c("bad", 0, 0, 2);
    c.set_basis(0, {"a"});
    c.set_basis(1, {"b"});
    c.set_basis(2, {"c"});
    c.set_diff(1, from_rows({{1}}, 1));
    c.set_diff(2, from_rows({{1}}, 1));
    CHECK_THROWS_AS(c.check_differential(), CompositionNotZero);
}

TEST_CASE("set_diff validates the shape against both bases") {
    Complex c("c", 0, 0, 1);
    c.set_basis(0, {"a", "b"});
    c.set_basis(1, {"c"});
    CHECK_THROWS_AS(c.set_diff(1, SparseMatrix(1, 1)), DimensionMismatch);
    CHECK_THROWS_AS(c.set_diff(0, SparseMatrix(0, 2)), WindowTooSmall);
    c.set_diff(1, SparseMatrix(2, 1));
}

TEST_CASE("is_chain_map checks presence, shape, and commutation") {
    Complex a = two_term("a", 1);
    Complex b = two_term("b", 1);

    ChainMap f;
    f.name = "f";
    f.src = &a;
    f.dst = &b;
    std::string why;
    CHECK_FALSE(is_chain_map(f, &why));
    CHECK(why.find("missing matrix") != std::string::npos);

    for (int d = -2; d <= 3; ++d) f.mats[d] = SparseMatrix(b.dim(d), a.dim(d));
    f.mats[0] = from_rows({{1}}, 1);
    f.mats[1] = from_rows({{1}}, 1);
    CHECK(is_chain_map(f));

    f.mats[1] = from_rows({{2}}, 1);
    CHECK_FALSE(is_chain_map(f, &why));
    CHECK(why.find("commute") != std::string::npos);
}

TEST_CASE("cone of the identity is acyclic and cone of zero splits") {
    Complex a = two_term("a", 0);
    Complex b = two_term("b", 0);
    ChainMap f;
    f.name = "id";
    f.src = &a;
    f.dst = &b;
    for (int d = -2; d <= 3; ++d) f.mats[d] = SparseMatrix::identity(a.dim(d));

    Complex c = cone(f, "cone");
    c.check_differential();
    CHECK(c.lo() == -1);
    CHECK(c.hi() == 3);
    CHECK(c.dim(1) == 2);
    CHECK(c.labels(1)[1] == "s(e0)");
    CHECK(c.homology(1) == 0);

    ChainMap z;
    z.name = "zero";
    z.src = &a;
    z.dst = &b;
    for (int d = -2; d <= 3; ++d) z.mats[d] = SparseMatrix(b.dim(d), a.dim(d));
    Complex cz = cone(z, "cone0");
    cz.check_differential();
    CHECK(cz.homology(1) == 2);
}

TEST_CASE("is_quasi_iso accepts the identity and reports failures") {
    Complex a = two_term("a", 0);
    Complex b = two_term("b", 0);
    ChainMap f;
    f.name = "id";
    f.src = &a;
    f.dst = &b;
    for (int d = -2; d <= 3; ++d) f.mats[d] = SparseMatrix::identity(a.dim(d));
    CHECK(is_quasi_iso(f, 0, 1));
    CHECK_THROWS_AS(is_quasi_iso(f, 0, 3), WindowTooSmall);

    ChainMap z;
    z.name = "zero";
    z.src = &a;
    z.dst = &b;
    for (int d = -2; d <= 3; ++d) z.mats[d] = SparseMatrix(b.dim(d), a.dim(d));
    std::string why;
    CHECK_FALSE(is_quasi_iso(z, 0, 1, &why));
    CHECK(why.find("homology") != std::string::npos);
}
