#include <doctest.h>

#include "cychom/algebra.hpp"

#include <set>
#include <vector>

using namespace cychom;

namespace {

SemiFreePresentation free_on_x() {
    SemiFreePresentation p;
    p.name = "F";
    p.objects = {"pt"};
    p.gens.push_back(Generator{"x", 0, 0, 0, 1});
    p.diff.resize(1);
    return p;
}

SemiFreePresentation quadratic_pair() {
    SemiFreePresentation p;
    p.name = "Q";
    p.objects = {"pt"};
    p.gens.push_back(Generator{"x", 0, 0, 0, 1});
    p.gens.push_back(Generator{"y", 0, 0, 1, 2});
    p.diff.resize(2);
    p.diff[1][{0, 0}] = rat(1);
    return p;
}

SemiFreePresentation two_object_loop() {
    SemiFreePresentation p;
    p.name = "L";
    p.objects = {"a", "b"};
    p.gens.push_back(Generator{"f", 0, 1, 0, 1});
    p.gens.push_back(Generator{"g", 1, 0, 0, 1});
    p.diff.resize(2);
    return p;
}

FiniteDimPresentation dual_numbers() {
    FiniteDimPresentation p;
    p.name = "D";
    p.objects = {"pt"};
    p.basis.push_back(FdBasisElem{"1_pt", 0, 0, 0, 0, true});
    p.basis.push_back(FdBasisElem{"e", 0, 0, 0, 1, false});
    p.diff.resize(2);
    return p;
}

/* Independent enumeration: every letter sequence up to the weight
 * bound, filtered for composability and exact weight. */
std::set<std::vector<int>> naive_words(const SemiFreePresentation& p, int w) {
    std::set<std::vector<int>> out;
    std::vector<std::vector<int>> frontier = {{}};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& word : frontier) {
            for (int g = 0; g < static_cast<int>(p.gens.size()); ++g) {
                auto cand = word;
                cand.push_back(g);
                int wt = 0;
                bool ok = true;
                for (size_t i = 0; i < cand.size(); ++i) {
                    wt += p.gens[cand[i]].wt;
                    if (i + 1 < cand.size() && p.gens[cand[i]].src != p.gens[cand[i + 1]].tgt)
                        ok = false;
                }
                if (!ok || wt > w) continue;
                if (wt == w)
                    out.insert(cand);
                else
                    next.push_back(cand);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("free algebra basis has one word per weight") {
    SemiFreeAlgebra a(free_on_x());
    for (int w = 1; w <= 6; ++w) {
        REQUIRE(a.weight_count(w) == 1);
        CHECK(a.info(Handle{w, 0}).deg == 0);
    }
    CHECK(a.info(Handle{0, 0}).label == "1_pt");
}

TEST_CASE("word enumeration matches the naive filter") {
    auto pres = quadratic_pair();
    SemiFreeAlgebra a(pres);
    for (int w = 1; w <= 5; ++w) {
        auto expect = naive_words(pres, w);
        REQUIRE(a.weight_count(w) == static_cast<int>(expect.size()));
        for (int i = 0; i < a.weight_count(w); ++i)
            CHECK(expect.count(a.word_of(Handle{w, i})) == 1);
    }

    auto loop = two_object_loop();
    SemiFreeAlgebra b(loop);
    for (int w = 1; w <= 6; ++w) {
        auto expect = naive_words(loop, w);
        REQUIRE(b.weight_count(w) == static_cast<int>(expect.size()));
    }
    CHECK(b.weight_count(2) == 2);
    CHECK(b.info(Handle{2, 0}).src == b.info(Handle{2, 0}).tgt);
}

TEST_CASE("basis order is length first, then lexicographic") {
    SemiFreeAlgebra a(quadratic_pair());
    REQUIRE(a.weight_count(3) == 3);
    CHECK(a.info(Handle{3, 0}).label == "x*y");
    CHECK(a.info(Handle{3, 1}).label == "y*x");
    CHECK(a.info(Handle{3, 2}).label == "x*x*x");
}

TEST_CASE("products concatenate and respect endpoints") {
    SemiFreeAlgebra b(two_object_loop());
    Handle f{1, 0}, g{1, 1};
    CHECK(b.info(f).label == "f");
    auto fg = b.mul(f, g);
    REQUIRE(fg.size() == 1);
    CHECK(b.info(fg.begin()->first).label == "f*g");
    CHECK(b.mul(f, f).empty());

    auto idb = b.identity(1);
    CHECK(b.mul(idb, f) == Elem{{f, rat(1)}});
    CHECK(b.mul(f, idb).empty());
    CHECK(b.mul(b.identity(0), f).empty());
    CHECK(b.mul(f, b.identity(0)) == Elem{{f, rat(1)}});
}

TEST_CASE("differential extends by the graded Leibniz rule") {
    SemiFreeAlgebra a(quadratic_pair());
    Handle y = a.handle_of_word({1});
    auto dy = a.diff(y);
    REQUIRE(dy.size() == 1);
    CHECK(a.info(dy.begin()->first).label == "x*x");

    /* d(yy) = (dy)y - y(dy) since y is odd */
    Handle yy = a.handle_of_word({1, 1});
    auto dyy = a.diff(yy);
    REQUIRE(dyy.size() == 2);
    CHECK(dyy[a.handle_of_word({0, 0, 1})] == rat(1));
    CHECK(dyy[a.handle_of_word({1, 0, 0})] == rat(-1));

    /* d squared vanishes on every basis word up to weight 5 */
    for (int w = 1; w <= 5; ++w)
        for (int i = 0; i < a.weight_count(w); ++i)
            CHECK(a.diff_elem(a.diff(Handle{w, i})).empty());
}

TEST_CASE("semifree validation accepts the curated presentations") {
    auto s1 = validate(free_on_x());
    CHECK(s1.cofibrant_verified);
    auto s2 = validate(quadratic_pair());
    CHECK(s2.cofibrant_verified);
    auto s3 = validate(two_object_loop());
    CHECK(s3.cofibrant_verified);
}

TEST_CASE("semifree validation rejects bad differentials") {
    auto p = quadratic_pair();
    p.diff[1].clear();
    p.diff[1][{0}] = rat(1); /* wrong weight */
    CHECK_THROWS_AS(validate(p), ValidationError);

    auto q = quadratic_pair();
    q.gens.push_back(Generator{"z", 0, 0, 2, 2});
    q.diff.resize(3);
    q.diff[2][{1}] = rat(1); /* d(z)=y, then d^2(z)=x^2 */
    CHECK_THROWS_AS(validate(q), ValidationError);

    auto r = quadratic_pair();
    r.gens[0].wt = 0;
    CHECK_THROWS_AS(validate(r), ValidationError);
}

TEST_CASE("dual numbers behave as expected") {
    auto pres = dual_numbers();
    validate(pres);
    FiniteDimAlgebra d(pres);
    CHECK(d.weight_count(1) == 1);
    CHECK(d.weight_count(2) == 0);
    Handle e{1, 0};
    CHECK(d.mul(e, e).empty());
    CHECK(d.mul(d.identity(0), e) == Elem{{e, rat(1)}});
    CHECK(d.diff(e).empty());
    CHECK(d.max_deg_in_weight(3) == 0);
}

TEST_CASE("finite-dimensional validation rejects broken structure") {
    auto p = dual_numbers();
    p.basis[1].wt = 0; /* positive weight is mandatory off identities */
    CHECK_THROWS_AS(validate(p), ValidationError);

    auto q = dual_numbers();
    q.mult[{1, 1}][1] = rat(1); /* e*e = e is not weight-additive */
    CHECK_THROWS_AS(validate(q), ValidationError);

    auto r = dual_numbers();
    r.basis.push_back(FdBasisElem{"h", 0, 0, 1, 1, false});
    r.diff.resize(3);
    r.diff[2][1] = rat(1); /* d(h) = e */
    validate(r);           /* fine: d^2 = 0, Leibniz with zero products */

    r.mult[{2, 2}][2] = rat(1); /* h*h = h breaks grading */
    CHECK_THROWS_AS(validate(r), ValidationError);
}
