#include <doctest.h>

#include "cychom/sparse_matrix.hpp"

#include <cstdint>
#include <vector>

using namespace cychom;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    SparseMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.set(i, j, rat(rows[i][j]));
    return m;
}

/* Small deterministic LCG so the property checks are reproducible. */
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
};

SparseMatrix random_matrix(Lcg& g, int rows, int cols, int fill_percent) {
    SparseMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (static_cast<int>(g.next() % 100) < fill_percent)
                m.set(i, j, rat(static_cast<long>(g.next() % 7) - 3));
    return m;
}

} // namespace

TEST_CASE("rank of basic matrices") {
    CHECK(rank(SparseMatrix(0, 0)) == 0);
    CHECK(rank(SparseMatrix(3, 5)) == 0);
    CHECK(rank(SparseMatrix::identity(2)) == 2);
    CHECK(rank(from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(from_rows({{1, 2}, {3, 4}})) == 2);
    CHECK(rank(from_rows({{0, 1, 0}, {0, 0, 1}})) == 2);
}

TEST_CASE("rank is invariant under row and column permutation") {
    auto m = from_rows({{1, 2, 0, 5}, {0, 1, 1, 0}, {1, 3, 1, 5}, {2, 0, 7, 1}});
    auto p = from_rows({{5, 0, 2, 1}, {0, 1, 1, 0}, {1, 7, 0, 2}, {5, 1, 3, 1}});
    CHECK(rank(m) == rank(p));
}

TEST_CASE("kernel of basic matrices") {
    CHECK(kernel_basis(SparseMatrix::identity(3)).empty());

    auto zk = kernel_basis(SparseMatrix(2, 3));
    REQUIRE(zk.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(zk[i][j] == rat(i == j ? 1 : 0));

    auto k = kernel_basis(from_rows({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == rat(-1));
    CHECK(k[0][1] == rat(1));
}

TEST_CASE("three-term piece with one-dimensional homology") {
    /* ker(d_out) is spanned by (1,2,3) and (0,3,... ) minus the image of
     * d_in leaves exactly one class. */
    auto d_in = from_rows({{1}, {2}, {3}});
    auto d_out = from_rows({{2, -1, 0}});
    CHECK(rank(d_in) == 1);
    CHECK(rank(d_out) == 1);
    CHECK(homology_dim(d_in, d_out) == 1);
}

TEST_CASE("homology_dim rejects bad input") {
    CHECK_THROWS_AS(homology_dim(SparseMatrix(2, 1), SparseMatrix(1, 3)), DimensionMismatch);
    CHECK_THROWS_AS(homology_dim(from_rows({{1}, {0}}), from_rows({{1, 0}})), CompositionNotZero);
}

TEST_CASE("homology_dim of exact and trivial pieces") {
    CHECK(homology_dim(SparseMatrix(3, 0), SparseMatrix(0, 3)) == 3);
    CHECK(homology_dim(SparseMatrix::identity(2), SparseMatrix(0, 2)) == 0);
    CHECK(homology_dim(SparseMatrix(2, 0), SparseMatrix::identity(2)) == 0);
}

TEST_CASE("rank-nullity and kernel membership on pseudo-random matrices") {
    Lcg g(2024);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + static_cast<int>(g.next() % 8);
        int cols = 1 + static_cast<int>(g.next() % 8);
        auto m = random_matrix(g, rows, cols, 40);
        auto k = kernel_basis(m);
        CHECK(rank(m) + static_cast<int>(k.size()) == cols);
        for (const auto& v : k) {
            auto image = m.apply(v);
            for (const auto& x : image) CHECK(is_zero(x));
        }
    }
}

TEST_CASE("homology_dim is invariant under basis change of the middle space") {
    auto d_in = from_rows({{1}, {2}, {3}});
    auto d_out = from_rows({{2, -1, 0}, {0, 0, 0}});
    REQUIRE(d_out.multiply(d_in).is_zero());
    long h = homology_dim(d_in, d_out);

    /* Conjugate by the unimodular map P and its inverse. */
    auto p = from_rows({{1, 1, 0}, {0, 1, 2}, {0, 0, 1}});
    auto p_inv = from_rows({{1, -1, 2}, {0, 1, -2}, {0, 0, 1}});
    REQUIRE(p.multiply(p_inv) == SparseMatrix::identity(3));
    CHECK(homology_dim(p.multiply(d_in), d_out.multiply(p_inv)) == h);
}

TEST_CASE("matrix arithmetic round trips") {
    auto a = from_rows({{1, 2}, {3, 4}});
    auto b = from_rows({{0, 1}, {1, 0}});
    CHECK(a.multiply(b) == from_rows({{2, 1}, {4, 3}}));
    CHECK(a.add_matrix(a.scale(rat(-1))).is_zero());
    CHECK(a.augment_columns(b).cols() == 4);
    CHECK(a.augment_columns(b).get(0, 3) == rat(1));

    auto v = a.apply({rat(1), ratio(1, 2)});
    CHECK(v[0] == rat(2));
    CHECK(v[1] == rat(5));

    auto c = SparseMatrix(2, 2);
    c.add(0, 0, ratio(1, 3));
    c.add(0, 0, ratio(2, 3));
    CHECK(c.get(0, 0) == rat(1));
    c.add(0, 0, rat(-1));
    CHECK(c.nnz() == 0);
}

TEST_CASE("quotient by a line in three-space") {
    SparseMatrix m(3, 1);
    m.set(0, 0, rat(1));
    m.set(1, 0, rat(1));
    QuotientSpace q(m);
    CHECK(q.ambient_dim() == 3);
    CHECK(q.dim() == 2);
    CHECK(q.is_in_subspace({rat(2), rat(2), rat(0)}));
    CHECK_FALSE(q.is_in_subspace({rat(1), rat(0), rat(0)}));

    /* reduce is constant on cosets */
    std::vector<Rational> v = {rat(5), ratio(1, 2), rat(-3)};
    std::vector<Rational> shifted = {rat(5) + rat(7), ratio(1, 2) + rat(7), rat(-3)};
    CHECK(q.reduce(v) == q.reduce(shifted));
}

TEST_CASE("quotient by zero subspace is the identity") {
    QuotientSpace q(SparseMatrix(4, 0));
    CHECK(q.dim() == 4);
    std::vector<Rational> v = {rat(1), rat(2), rat(3), rat(4)};
    CHECK(q.reduce(v) == v);
}

TEST_CASE("quotient coordinates do not depend on the generator order") {
    auto m1 = from_rows({{1, 1}, {1, 0}, {0, 1}});
    auto m2 = from_rows({{2, 1}, {0, 1}, {2, 0}});
    QuotientSpace q1(m1), q2(m2);
    REQUIRE(q1.dim() == q2.dim());
    CHECK(q1.surviving_rows() == q2.surviving_rows());
    std::vector<Rational> v = {rat(3), rat(-1), ratio(2, 5)};
    CHECK(q1.reduce(v) == q2.reduce(v));
}

TEST_CASE("full quotient has dimension zero") {
    QuotientSpace q(SparseMatrix::identity(3));
    CHECK(q.dim() == 0);
    CHECK(q.is_in_subspace({rat(1), rat(9), rat(-2)}));
}
