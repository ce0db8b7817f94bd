#pragma once

#include "cychom/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cychom {

struct PresentationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Arrow generator of a quiver presentation. Degree is homological
 * (the differential lowers it by one), wt is the Adams weight. */
struct Generator {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;
    int wt = 1;
};

/* Formal rational combination of composable generator words. A word
 * stores generator indices left to right; the rightmost letter acts
 * first, so src(word) = src(back) and tgt(word) = tgt(front). Words
 * are never empty: identities cannot appear in a weight-homogeneous
 * differential or product of positive-weight elements. */
using WordExpr = std::map<std::vector<int>, Rational>;

struct SemiFreePresentation {
    std::string name;
    std::vector<std::string> objects;
    std::vector<Generator> gens;
    std::vector<WordExpr> diff; /* one entry per generator */
    bool cofibrant_asserted = false;

    int object_index(const std::string& o) const {
        for (size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == o) return static_cast<int>(i);
        throw PresentationError("unknown object: " + o);
    }
    int gen_index(const std::string& g) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == g) return static_cast<int>(i);
        throw PresentationError("unknown generator: " + g);
    }
};

struct FdBasisElem {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;
    int wt = 0;
    bool identity = false;
};

struct FiniteDimPresentation {
    std::string name;
    std::vector<std::string> objects;
    std::vector<FdBasisElem> basis;
    /* Structure constants for pairs of non-identity elements; missing
     * entries are zero. Identity products are implied. */
    std::map<std::pair<int, int>, std::map<int, Rational>> mult;
    std::vector<std::map<int, Rational>> diff; /* one entry per basis elem */

    int object_index(const std::string& o) const {
        for (size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == o) return static_cast<int>(i);
        throw PresentationError("unknown object: " + o);
    }
    int basis_index(const std::string& b) const {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].name == b) return static_cast<int>(i);
        throw PresentationError("unknown basis element: " + b);
    }
};

} // namespace cychom
