#pragma once

#include "cychom/hochschild.hpp"
#include "cychom/naturalize.hpp"
#include "cychom/xside.hpp"

#include <map>
#include <string>
#include <vector>

namespace cychom {

/* One row of a homology-dimension table: which table, which bigrade,
 * what dimension. Reports sort these deterministically. */
struct DimCell {
    std::string table;
    int w = 0;
    int d = 0;
    long value = 0;
};

/* Outcome of one named verification. A failed check always carries at
 * least one witness; a skipped check carries the reason. */
struct CheckReport {
    std::string name;
    std::string window;
    bool pass = true;
    bool skipped = false;
    std::string reason;
    std::vector<std::string> witnesses;
    std::vector<DimCell> cells;

    void fail(std::string witness) {
        pass = false;
        witnesses.push_back(std::move(witness));
    }
};

/* The dg category with the same objects and no generators; the source
 * of the unit inclusion every reduced complex cones off. */
SemiFreePresentation unit_presentation(std::vector<std::string> objects);

/* Trace space of the presentation letters in one weight: identity
 * classes and rotation classes of closed generator words. */
struct NatData {
    CyclicLetters letters;
    Complex complex;
    std::map<int, std::vector<CycKey>> basis;
    std::map<int, std::map<CycKey, int>> index;
};

NatData build_natural(const SemiFreeAlgebra& a, int w, int lo, int hi);

/* Cone over the unit inclusion. In weight zero the unit side maps
 * isomorphically onto the identity span of the full side; in higher
 * weights it is empty and the cone is the full side. Throws if the
 * inclusion fails to be the expected degreewise match. */
Complex reduced_cone(const Complex& unit_side, const Complex& full_side, const std::string& name);

/* Rank of the map induced on degree-d homology by the degree-preserving
 * chain map f_at_d (columns: src degree d). */
long induced_homology_rank(const Complex& src, const Complex& dst, const SparseMatrix& f_at_d,
                           int d);

/* Named chain maps between the families. Matrices are keyed by source
 * degree over the overlap of the materialized windows. */
ChainMap map_cc_to_clambda(const Tower& cc, const ConnesData& cl);
ChainMap map_clambda_to_natural(const SemiFreeAlgebra& a, const ConnesData& cl,
                                const NatData& nat);
ChainMap map_ch_to_x(const SemiFreeAlgebra& a, const HochschildData& ch, const XData& x1);
ChainMap map_xn_to_x(const SemiFreeAlgebra& a, const XData& xn, const XData& x1);
ChainMap map_x_to_natural(const SemiFreeAlgebra& a, const XData& x1, const NatData& nat);

/* Degree +1 trace-to-resolution map: insert sD into each letter of a
 * rotation class representative. Keyed by source degree. */
std::map<int, SparseMatrix> map_nat_B(const SemiFreeAlgebra& a, const NatData& nat,
                                      const XData& x1, int lo, int hi);

/* f: src_d -> dst_{d+1} anticommutes with the differentials on [lo, hi]. */
bool anticommutes(const Complex& src, const Complex& dst,
                  const std::map<int, SparseMatrix>& f, int lo, int hi,
                  std::string* why = nullptr);

/* The cyclic tower surjects onto the rotation coinvariants and the
 * surjection is a quasi-isomorphism per interior bigrade. */
CheckReport check_cc_clambda_qiso(const Algebra& a, int wlo, int whi, int dlo, int dhi);

/* hb + bh = id - tau on the n-marked complexes. */
CheckReport check_homotopy(const SemiFreeAlgebra& a, int nlo, int nhi, int wlo, int whi,
                           int dlo, int dhi);

/* cone(proj: X -> coinvariants) is acyclic per interior bigrade. */
CheckReport check_pi_qiso(const SemiFreeAlgebra& a, int nlo, int nhi, int wlo, int whi,
                          int dlo, int dhi);

/* cone[Clambda -> trace] is isomorphic, basis by basis with matching
 * differentials, to the trace complex extended by contracting loops. */
CheckReport check_cone_iso(const SemiFreeAlgebra& a, int wlo, int whi, int dlo, int dhi);

/* The reduced quotient map from the reduced cyclic complex to
 * cone[unit -> trace] is a quasi-isomorphism. */
CheckReport check_feigin_tsygan(const SemiFreeAlgebra& a, int wlo, int whi, int dlo, int dhi);

/* Exact commutativity of every square of the five-row ladder through
 * column n = 3, the two bridging lemmas, the scaling law, and the
 * quasi-isomorphism claims (gated on cofibrancy where required). */
CheckReport check_master_diagram(const SemiFreeAlgebra& a, int wlo, int whi, int dlo, int dhi);

/* Filtered total complex against the negative tower shifted by 2r, and
 * the reduced total against the reduced periodic tower. The tower side
 * runs on `target` when given (a model the caller asserts equivalent),
 * else on q itself. r = 0 cells are informational only. */
CheckReport check_hodge_theorem(const SemiFreeAlgebra& q, const Algebra* target, int rlo,
                                int rhi, int wlo, int whi, int dlo, int dhi);

/* Both reduced three-term towers (negative-into-periodic-onto-cyclic
 * and filtered-total-into-total-onto-trace) induce exact dimension
 * ladders, and the two ladders coincide. */
CheckReport check_sbi(const SemiFreeAlgebra& a, int wlo, int whi, int dlo, int dhi);

} // namespace cychom
