#pragma once

#include "cychom/algebra.hpp"
#include "cychom/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace cychom {

/* Normalized cyclic-bar chain (a_0; a_1, ..., a_n): slot 0 may be an
 * identity, later slots never are; src(a_i) = tgt(a_{i+1}) cyclically.
 * Degree n + sum |a_i|, weight sum wt(a_i). */
struct Chain {
    std::vector<Handle> slots;

    int n() const { return static_cast<int>(slots.size()) - 1; }
    bool operator<(const Chain& o) const {
        if (slots.size() != o.slots.size()) return slots.size() < o.slots.size();
        return slots < o.slots;
    }
    bool operator==(const Chain& o) const { return slots == o.slots; }
};

/* One Adams weight of the Hochschild complex together with its chain
 * basis, materialized on [lo-1, hi+1]. */
struct HochschildData {
    const Algebra* alg = nullptr;
    int weight = 0;
    Complex complex;
    std::map<int, std::vector<Chain>> chains;
    std::map<int, std::map<Chain, int>> index;
};

HochschildData build_hochschild(const Algebra& a, int w, int lo, int hi);

/* Largest degree with a nonzero chain space in this weight. */
int hochschild_top_degree(const Algebra& a, int w);

std::string chain_label(const Algebra& a, const Chain& c);

/* Signed cyclic rotation (last slot to the front); sends chains whose
 * head lands in a later slot as an identity to zero. */
SparseMatrix hochschild_t(const HochschildData& h, int d);

/* Connes boundary: prepend an identity to every rotation, skipping
 * identity-headed chains. Raises degree by one. */
SparseMatrix hochschild_B(const HochschildData& h, int d);

/* Columnwise coinvariants under the signed rotation with the descended
 * differential; basis = surviving chain representatives. */
struct ConnesData {
    HochschildData base;
    Complex complex;
    std::map<int, QuotientSpace> quot;
};

ConnesData build_connes(const Algebra& a, int w, int lo, int hi);

/* The differential maps im(id - t) into im(id - t) on the window. */
bool connes_b_descends(const ConnesData& c, std::string* why = nullptr);

/* A u-tower: one of the cyclic (u^{-j}, j >= 0, truncated B), negative
 * (u^j, j >= 0) or periodic (all j) totals of (C^H, b, B). Blocks per
 * degree record which power of u and which Hochschild degree each
 * basis span comes from. */
struct TowerBlock {
    int j = 0;
    int ch_degree = 0;
    int offset = 0;
    int size = 0;
};

enum class TowerKind { Cyclic, Negative, Periodic };

struct Tower {
    TowerKind kind = TowerKind::Cyclic;
    HochschildData base;
    Complex complex;
    std::map<int, std::vector<TowerBlock>> blocks;
};

Tower build_tower(const Algebra& a, TowerKind kind, int w, int lo, int hi);

/* Multiplication by u: degree -2 relabeling isomorphism of CP. */
SparseMatrix tower_u(const Tower& t, int d);

} // namespace cychom
