#include "cychom/xside.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <map>

using namespace cychom;

namespace {

std::map<int, long> homology_profile(const Complex& c) {
    std::map<int, long> out;
    for (int d = c.lo() + 1; d < c.hi(); ++d) {
        long h = c.homology(d);
        if (h != 0) out[d] = h;
    }
    return out;
}

bool equal(const SparseMatrix& a, const SparseMatrix& b) {
    return a.add_matrix(b.scale(rat(-1))).is_zero();
}

} // namespace

TEST_CASE("rotating leading A-letters picks up Koszul signs") {
    auto Q = fixtures::alg_Q();
    XWord w1{{XLetter{XLetter::A, 0}, XLetter{XLetter::SD, 0}}};
    auto [c1, s1] = x_canonical(Q, w1);
    CHECK(x_word_label(Q, c1) == "sD(x)*x");
    CHECK(s1 == 1);

    XWord w2{{XLetter{XLetter::A, 1}, XLetter{XLetter::SD, 0}}};
    auto [c2, s2] = x_canonical(Q, w2);
    CHECK(x_word_label(Q, c2) == "sD(x)*y");
    CHECK(s2 == -1);

    XWord w3{{XLetter{XLetter::A, 1}, XLetter{XLetter::SD, 1}}};
    auto [c3, s3] = x_canonical(Q, w3);
    CHECK(x_word_label(Q, c3) == "sD(y)*y");
    CHECK(s3 == 1);
}

TEST_CASE("bimodule words of the free algebra") {
    auto F = fixtures::alg_F();
    auto x1 = build_x(F, 1, 1, 0, 1);
    CHECK(x1.complex.labels(0) == std::vector<std::string>{"E_pt*x"});
    CHECK(x1.complex.labels(1) == std::vector<std::string>{"sD(x)"});
    CHECK(x1.complex.diff(1).is_zero());

    auto x2 = build_x(F, 1, 2, 0, 2);
    CHECK(x2.complex.labels(0) == std::vector<std::string>{"E_pt*x*x"});
    CHECK(x2.complex.labels(1) == std::vector<std::string>{"sD(x)*x"});
    CHECK(x2.complex.dim(2) == 0);
    CHECK(x2.complex.diff(1).is_zero());
    std::map<int, long> expect{{0, 1}, {1, 1}};
    CHECK(homology_profile(x2.complex) == expect);
}

TEST_CASE("differential of a relation generator cancels in the trace") {
    auto Q = fixtures::alg_Q();
    auto x = build_x(Q, 1, 2, 0, 2);
    CHECK(x.complex.labels(2) == std::vector<std::string>{"sD(y)"});
    CHECK(x.complex.labels(1) == std::vector<std::string>{"E_pt*y", "sD(x)*x"});
    CHECK(x.complex.labels(0) == std::vector<std::string>{"E_pt*x*x"});
    /* yE - Ey cancels after rotation; the inserted terms survive */
    CHECK(x.complex.diff(2).get(0, 0) == rat(0));
    CHECK(x.complex.diff(2).get(1, 0) == rat(-2));
    CHECK(x.complex.diff(1).get(0, 0) == rat(1));
    CHECK(x.complex.diff(1).get(0, 1) == rat(0));
    CHECK(homology_profile(x.complex).empty());
    x.complex.check_differential();
}

TEST_CASE("block rotation orbits on two tensor factors") {
    auto F = fixtures::alg_F();
    auto x = build_x(F, 2, 2, 0, 2);
    CHECK(x.complex.dim(0) == 3);
    CHECK(x.complex.dim(1) == 4);
    CHECK(x.complex.dim(2) == 1);

    for (int d = 0; d <= 2; ++d) {
        SparseMatrix tau = x_tau(x, d);
        CHECK(equal(tau.multiply(tau), SparseMatrix::identity(x.complex.dim(d))));
    }

    auto sc = build_sc(F, 2, 2, 0, 2);
    CHECK(sc.complex.dim(0) == 2);
    CHECK(sc.complex.dim(1) == 2);
    CHECK(sc.complex.dim(2) == 0); /* sD(x)*sD(x) has monodromy -1 */
    sc.complex.check_differential();
    std::string why;
    CHECK_MESSAGE(sc_differential_descends(sc, &why), why);
}

TEST_CASE("insertion squares to zero and anticommutes into E-conjugation") {
    auto Q = fixtures::alg_Q();
    for (int w = 1; w <= 3; ++w) {
        for (int n = 1; n <= 2; ++n) {
            int top = x_top_degree(Q, n, w) + 1;
            auto xn = build_x(Q, n, w, 0, top);
            auto xm = build_x(Q, n + 1, w, 0, top);
            auto xk = build_x(Q, n + 2, w, 0, top + 1);
            auto sm = build_sc(Q, n + 1, w, 0, top + 1);
            for (int d = 0; d <= top; ++d) {
                SparseMatrix s1 = x_sDtilde(xn, xm, d);
                SparseMatrix s2 = x_sDtilde(xm, xk, d + 1);
                CHECK(s2.multiply(s1).is_zero());
                /* the insertion map is only well defined into coinvariants,
                   so the anticommutator is compared after projection */
                SparseMatrix anti = xm.complex.diff(d + 1).multiply(s1).add_matrix(
                    x_sDtilde(xn, xm, d - 1).multiply(xn.complex.diff(d)));
                const SparseMatrix& p = sm.proj.at(d);
                CHECK(equal(p.multiply(anti), p.multiply(x_adE(xn, xm, d))));
            }
        }
    }
}

TEST_CASE("contracting homotopy splits id minus tau") {
    auto F = fixtures::alg_F();
    auto Q = fixtures::alg_Q();
    const SemiFreeAlgebra* algs[] = {&F, &Q};
    for (const SemiFreeAlgebra* a : algs)
        for (int n = 1; n <= 2; ++n)
            for (int w = 0; w <= 2; ++w) {
                int top = x_top_degree(*a, n, w) + 1;
                auto x = build_x(*a, n, w, 0, top);
                for (int d = 0; d <= top; ++d) {
                    SparseMatrix lhs = x.complex.diff(d + 1).multiply(x_homotopy(x, d));
                    lhs = lhs.add_matrix(x_homotopy(x, d - 1).multiply(x.complex.diff(d)));
                    SparseMatrix rhs = SparseMatrix::identity(x.complex.dim(d))
                                           .add_matrix(x_tau(x, d).scale(rat(-1)));
                    CHECK_MESSAGE(equal(lhs, rhs), x.complex.name(), " degree ", d,
                                  " weight ", w);
                }
            }
}

TEST_CASE("coinvariant pieces have descending differentials everywhere") {
    auto Q = fixtures::alg_Q();
    for (int n = 1; n <= 3; ++n)
        for (int w = 0; w <= 3; ++w) {
            auto sc = build_sc(Q, n, w, 0, x_top_degree(Q, n, w));
            sc.complex.check_differential();
            std::string why;
            CHECK_MESSAGE(sc_differential_descends(sc, &why), why);
        }
}

TEST_CASE("hodge total of the point") {
    auto K = fixtures::alg_K();
    auto h = build_hodge(K, 0, 0, -6, 0);
    for (int D = -6; D <= 0; ++D) CHECK(h.complex.dim(D) == (D % 2 == 0 ? 1 : 0));
    h.complex.check_differential();
    for (int D = -5; D < 0; ++D) CHECK(h.complex.homology(D) == (D % 2 == 0 ? 1 : 0));
    CHECK(h.complex.labels(0) == std::vector<std::string>{"[1_pt]"});
    CHECK(h.complex.labels(-2) == std::vector<std::string>{"u^1*E_pt"});

    auto h1 = build_hodge(K, 0, 1, -6, 0);
    CHECK(h1.complex.dim(0) == 0);
    CHECK(h1.complex.dim(-2) == 1);
    for (int D = -5; D < 0; ++D) CHECK(h1.complex.homology(D) == (D % 2 == 0 && D <= -2 ? 1 : 0));
}

TEST_CASE("hodge total of the free algebra in weight 1 is acyclic") {
    auto F = fixtures::alg_F();
    auto h = build_hodge(F, 1, 0, -6, 2);
    h.complex.check_differential();
    CHECK(homology_profile(h.complex).empty());
}

TEST_CASE("filtered hodge total matches the negative tower of the same input") {
    auto Q = fixtures::alg_Q();
    for (int w : {1, 3}) {
        auto h = build_hodge(Q, w, 1, -5, 1);
        h.complex.check_differential();
        auto cn = build_tower(Q, TowerKind::Negative, w, -3, 3);
        cn.complex.check_differential();
        std::map<int, long> shifted;
        for (int d = -2; d <= 2; ++d) {
            long v = cn.complex.homology(d);
            if (v != 0) shifted[d - 2] = v;
        }
        std::map<int, long> left;
        for (int d = -4; d <= 0; ++d) {
            long v = h.complex.homology(d);
            if (v != 0) left[d] = v;
        }
        CHECK_MESSAGE(left == shifted, "weight ", w);
    }
}
