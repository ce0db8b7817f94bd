#include <doctest.h>

#include "cychom/naturalize.hpp"

using namespace cychom;

namespace {

SemiFreePresentation free_on_x() {
    SemiFreePresentation p;
    p.name = "F";
    p.objects = {"pt"};
    p.gens.push_back({"x", 0, 0, 0, 1});
    p.diff.resize(1);
    return p;
}

SemiFreePresentation quadratic_pair() {
    SemiFreePresentation p;
    p.name = "Q";
    p.objects = {"pt"};
    p.gens.push_back({"x", 0, 0, 0, 1});
    p.gens.push_back({"y", 0, 0, 1, 2});
    p.diff.resize(2);
    p.diff[1][{0, 0}] = rat(1);
    return p;
}

SemiFreePresentation point() {
    SemiFreePresentation p;
    p.name = "K";
    p.objects = {"pt"};
    return p;
}

} // namespace

TEST_CASE("free algebra has one cyclic class per weight") {
    SemiFreeAlgebra F(free_on_x());
    CyclicLetters L = letters_of(F);
    CHECK(L.count() == 1);
    CHECK(cyclic_basis(L, 0, 0).size() == 1);
    for (int w = 1; w <= 4; ++w) {
        CHECK(cyclic_basis(L, 0, w).size() == 1);
        CHECK(cyclic_basis(L, 1, w).empty());
    }
}

TEST_CASE("rotation classes collapse and pick up Koszul signs") {
    SemiFreeAlgebra Q(quadratic_pair());
    CyclicLetters L = letters_of(Q);

    CyclicCanon rot = cyclic_canonicalize(L, {1, 0});
    CHECK(rot.key.word == std::vector<int>{0, 1});
    CHECK(rot.sign == 1);
    CHECK_FALSE(rot.zero);

    CyclicCanon odd = cyclic_canonicalize(L, {1, 0, 1});
    CHECK(odd.key.word == std::vector<int>{0, 1, 1});
    CHECK(odd.sign == -1);

    CyclicCanon self = cyclic_canonicalize(L, {1, 1});
    CHECK(self.zero);
    CHECK(cyclic_basis(L, 2, 4).empty());
}

TEST_CASE("trace complex of the quadratic pair at weight 3") {
    SemiFreeAlgebra Q(quadratic_pair());
    CyclicLetters L = letters_of(Q);
    CHECK(cyclic_basis(L, 0, 3).size() == 1);
    CHECK(cyclic_basis(L, 1, 3).size() == 1);
    CHECK(cyclic_basis(L, 2, 3).empty());

    Complex c = cyclic_word_complex(L, "Q_nat", 3, 0, 2);
    c.check_differential();
    CHECK(c.labels(0) == std::vector<std::string>{"[x*x*x]"});
    CHECK(c.labels(1) == std::vector<std::string>{"[x*y]"});
    CHECK(c.diff(1).get(0, 0) == rat(1));
    CHECK(c.homology(0) == 0);
    CHECK(c.homology(1) == 0);
}

TEST_CASE("contracting loops over the point") {
    SemiFreeAlgebra K(point());
    CyclicLetters L = adjoin_contracting_loops(letters_of(K));
    CHECK(L.count() == 1);
    CHECK(L.names[0] == "t_pt");
    CHECK(L.deg[0] == 1);
    CHECK(L.wt[0] == 0);

    CHECK(cyclic_basis(L, 1, 0).size() == 1);
    CHECK(cyclic_basis(L, 2, 0).empty());
    CHECK(cyclic_basis(L, 3, 0).size() == 1);
    CHECK(cyclic_basis(L, 4, 0).empty());
    CHECK(cyclic_basis(L, 5, 0).size() == 1);

    Complex c = cyclic_word_complex(L, "K_t", 0, 0, 4);
    c.check_differential();
    CHECK(c.labels(0) == std::vector<std::string>{"[1_pt]"});
    CHECK(c.diff(1).get(0, 0) == rat(1));
    CHECK(c.diff(3).is_zero());
    CHECK(c.homology(0) == 0);
    CHECK(c.homology(1) == 0);
    CHECK(c.homology(2) == 0);
    CHECK(c.homology(3) == 1);
}

TEST_CASE("loop normalization rejects adjacent contracting loops") {
    SemiFreeAlgebra K(point());
    CyclicLetters LK = adjoin_contracting_loops(letters_of(K));
    CHECK(cyclic_basis(LK, 1, 0, true).size() == 1);
    CHECK(cyclic_basis(LK, 3, 0, true).empty());

    Complex ck = cyclic_word_complex(LK, "K_t_norm", 0, 0, 4, true);
    ck.check_differential();
    CHECK(ck.dim(1) == 1);
    CHECK(ck.dim(3) == 0);
    CHECK(ck.homology(0) == 0);
    CHECK(ck.homology(1) == 0);
    CHECK(ck.homology(3) == 0);

    SemiFreeAlgebra F(free_on_x());
    CyclicLetters LF = adjoin_contracting_loops(letters_of(F));
    CHECK(cyclic_basis(LF, 1, 1, true).size() == 1);
    CHECK(cyclic_basis(LF, 2, 1, true).empty());
    std::vector<CycKey> sep = cyclic_basis(LF, 1, 2, true);
    REQUIRE(sep.size() == 1);
    CHECK(LF.label(sep[0].word) == "[x*x*t_pt]");
}

TEST_CASE("trace complex differential respects weights across the alphabet") {
    SemiFreeAlgebra Q(quadratic_pair());
    CyclicLetters L = adjoin_contracting_loops(letters_of(Q));
    for (int w = 0; w <= 3; ++w) {
        Complex c = cyclic_word_complex(L, "Q_t", w, 0, 5);
        c.check_differential();
    }
    Complex c3 = cyclic_word_complex(L, "Q_t", 3, 0, 4, true);
    c3.check_differential();
}
