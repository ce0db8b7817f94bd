#pragma once

#include "cychom/algebra.hpp"
#include "cychom/complex.hpp"
#include "cychom/hochschild.hpp"
#include "cychom/naturalize.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cychom {

/* Letters of the resolution alphabet over a semifree presentation:
 * the generators themselves (kind A), one splitting idempotent E per
 * object (kind E, degree 0, weight 0), and one suspended formal
 * differential sD(g) per generator (degree deg g + 1, weight wt g). */
struct XLetter {
    enum Kind { A = 0, E = 1, SD = 2 };
    int kind = A;
    int idx = 0;
    bool operator<(const XLetter& o) const {
        return kind != o.kind ? kind < o.kind : idx < o.idx;
    }
    bool operator==(const XLetter& o) const { return kind == o.kind && idx == o.idx; }
};

/* Closed word in the extended alphabet, stored in its S-leading
 * rotation: the first letter is E or sD and marks which tensor factor
 * comes first. Words with the mark on a different letter are distinct
 * basis elements, related only by the block rotation tau. */
struct XWord {
    std::vector<XLetter> letters;
    bool operator<(const XWord& o) const {
        if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
        return letters < o.letters;
    }
    bool operator==(const XWord& o) const { return letters == o.letters; }
};

int x_deg(const SemiFreeAlgebra& a, const XLetter& l);
int x_wt(const SemiFreeAlgebra& a, const XLetter& l);
int x_src(const SemiFreeAlgebra& a, const XLetter& l);
int x_tgt(const SemiFreeAlgebra& a, const XLetter& l);
std::string x_label(const SemiFreeAlgebra& a, const XLetter& l);

int x_word_deg(const SemiFreeAlgebra& a, const XWord& w);
std::string x_word_label(const SemiFreeAlgebra& a, const XWord& w);
int x_e_count(const XWord& w);

/* Rotate leading A-letters to the back, with the Koszul sign of each
 * move, until an S-letter leads. The word must contain one. */
std::pair<XWord, int> x_canonical(const SemiFreeAlgebra& a, XWord w);

/* n-th tensor power of the resolution bimodule, naturalized: basis of
 * S-leading closed words with exactly n S-letters, with the letterwise
 * differential. */
struct XData {
    const SemiFreeAlgebra* alg = nullptr;
    int n = 1;
    int weight = 0;
    Complex complex;
    std::map<int, std::vector<XWord>> words;
    std::map<int, std::map<XWord, int>> index;
};

XData build_x(const SemiFreeAlgebra& a, int n, int w, int lo, int hi);

int x_top_degree(const SemiFreeAlgebra& a, int n, int w);

/* Block rotation: the last S-letter block moves to the front with its
 * Koszul sign. Order n on words with n S-letters. */
SparseMatrix x_tau(const XData& x, int d);

/* Insert sD at each A-letter (odd derivation); raises the S-count by
 * one, so columns live in src and rows in dst. */
SparseMatrix x_sDtilde(const XData& src, const XData& dst, int d);

/* The even derivation l -> l E - E l; equals the anticommutator of the
 * differential with sD-insertion. */
SparseMatrix x_adE(const XData& src, const XData& dst, int d);

/* Contracting homotopy for id - tau: kills words whose last S-letter
 * is sD-type, and turns a trailing-E block rotation into sD-insertion
 * otherwise. */
SparseMatrix x_homotopy(const XData& x, int d);

/* Coinvariants of the signed block rotation, by orbits: an orbit with
 * monodromy -1 dies, any other contributes its minimal word as a basis
 * class. proj and section realize the quotient and its splitting on
 * every materialized degree. */
struct ScData {
    XData base;
    Complex complex;
    std::map<int, SparseMatrix> proj;
    std::map<int, SparseMatrix> section;
};

ScData build_sc(const SemiFreeAlgebra& a, int n, int w, int lo, int hi);

bool sc_differential_descends(const ScData& s, std::string* why = nullptr);

/* Hodge-type total complex: product over n >= r of the coinvariant
 * pieces placed in degree d = (x-degree) - 2n, with differential
 * (internal) + u * (sD-insertion). Piece n = 0 is the trace space of
 * the presentation letters. */
struct HodgeData {
    const SemiFreeAlgebra* alg = nullptr;
    int weight = 0;
    int r = 0;
    Complex complex;
    std::map<int, std::vector<TowerBlock>> blocks; /* j = n, ch_degree = x-degree */
    std::vector<ScData> pieces;                    /* pieces[i] holds n = i + 1 */
    Complex cyc0;
    std::map<int, std::vector<CycKey>> cyc0_basis;
};

HodgeData build_hodge(const SemiFreeAlgebra& a, int w, int r, int lo, int hi);

} // namespace cychom
