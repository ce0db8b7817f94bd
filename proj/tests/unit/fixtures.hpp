#pragma once

#include "cychom/algebra.hpp"
#include "cychom/presentation.hpp"

/* The four standing inputs used across the test suite:
 *   K  one object, no generators
 *   F  one generator x of degree 0, weight 1
 *   Q  x as in F plus y of degree 1, weight 2 with dy = x*x
 *   D  finite-dimensional span{1, e} with e*e = 0, e in weight 1
 */
namespace fixtures {

inline cychom::SemiFreePresentation pres_K() {
    cychom::SemiFreePresentation p;
    p.name = "K";
    p.objects = {"pt"};
    return p;
}

inline cychom::SemiFreePresentation pres_F() {
    cychom::SemiFreePresentation p;
    p.name = "F";
    p.objects = {"pt"};
    p.gens.push_back(cychom::Generator{"x", 0, 0, 0, 1});
    p.diff.push_back({});
    return p;
}

inline cychom::SemiFreePresentation pres_Q() {
    cychom::SemiFreePresentation p;
    p.name = "Q";
    p.objects = {"pt"};
    p.gens.push_back(cychom::Generator{"x", 0, 0, 0, 1});
    p.gens.push_back(cychom::Generator{"y", 0, 0, 1, 2});
    p.diff.push_back({});
    p.diff.push_back({{{0, 0}, cychom::rat(1)}});
    return p;
}

inline cychom::FiniteDimPresentation pres_D() {
    cychom::FiniteDimPresentation p;
    p.name = "D";
    p.objects = {"pt"};
    p.basis.push_back(cychom::FdBasisElem{"1", 0, 0, 0, 0, true});
    p.basis.push_back(cychom::FdBasisElem{"e", 0, 0, 0, 1, false});
    p.diff.resize(2);
    return p;
}

inline cychom::SemiFreeAlgebra alg_K() { return cychom::SemiFreeAlgebra(pres_K()); }
inline cychom::SemiFreeAlgebra alg_F() { return cychom::SemiFreeAlgebra(pres_F()); }
inline cychom::SemiFreeAlgebra alg_Q() { return cychom::SemiFreeAlgebra(pres_Q()); }
inline cychom::FiniteDimAlgebra alg_D() { return cychom::FiniteDimAlgebra(pres_D()); }

} // namespace fixtures
