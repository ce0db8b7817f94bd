#pragma once

#include "cychom/algebra.hpp"
#include "cychom/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace cychom {

/* Letter alphabet for cyclic-word complexes: the quiver generators,
 * optionally extended by one contracting loop per object (degree 1,
 * weight 0, bounding the identity). Differentials may use the empty
 * word, which stands for the identity at the matching object. */
struct CyclicLetters {
    std::vector<std::string> objects;
    std::vector<std::string> names;
    std::vector<int> src, tgt, deg, wt;
    std::vector<WordExpr> diff;

    int count() const { return static_cast<int>(names.size()); }
    int word_deg(const std::vector<int>& w) const;
    int word_wt(const std::vector<int>& w) const;
    bool closed_composable(const std::vector<int>& w) const;
    std::string label(const std::vector<int>& w) const;
};

CyclicLetters letters_of(const SemiFreeAlgebra& a);
CyclicLetters adjoin_contracting_loops(const CyclicLetters& base);

/* Basis key of the trace space: either the identity class of an
 * object (empty word) or the canonical rotation representative of a
 * closed word. */
struct CycKey {
    int obj = -1; /* set only for identity classes */
    std::vector<int> word;
    bool operator<(const CycKey& o) const {
        if (word.size() != o.word.size()) return word.size() < o.word.size();
        if (word != o.word) return word < o.word;
        return obj < o.obj;
    }
    bool operator==(const CycKey& o) const { return obj == o.obj && word == o.word; }
};

struct CyclicCanon {
    CycKey key;
    int sign = 1;   /* canonical rep = sign * input word */
    bool zero = false;
};

/* Minimal rotation with the Koszul sign of rotating letters around
 * the circle; classes whose minimal word returns with both signs are
 * zero in the trace space. */
CyclicCanon cyclic_canonicalize(const CyclicLetters& L, const std::vector<int>& word);

/* All nonzero cyclic classes in one (degree, weight) bigrade, sorted
 * length first then lexicographically. With normalized_loops set, a
 * word containing weight-0 letters is kept only when no cyclic gap
 * between consecutive weight-0 letters is empty, except for the
 * single-letter word, which stands for an identity class; this carves
 * out the subcomplex matched by normalized cyclic chains, where two
 * adjacent loops force an identity into a slot that rotation kills. */
std::vector<CycKey> cyclic_basis(const CyclicLetters& L, int deg, int wt,
                                 bool normalized_loops = false);

/* Trace complex of the letters: identity classes and cyclic words,
 * with the Leibniz differential descended to rotation classes.
 * Degrees are materialized on [lo-1, hi+1] so homology is available
 * on the requested window. */
Complex cyclic_word_complex(const CyclicLetters& L, const std::string& name, int wt, int lo,
                            int hi, bool normalized_loops = false);

} // namespace cychom
