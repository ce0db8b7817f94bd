#!/usr/bin/env python3
"""Brute-force reference values for the one-generator free algebra k<x>,
|x| = 0, weight(x) = 1, one object.

Everything here is computed from first principles with dense Fraction
elimination: no code is shared with the engine. The output is frozen at
expected_free_algebra.json and guards the engine's Hochschild homology,
naturalization, and reduced-cone dimensions.

Chains of the normalized Hochschild complex at weight w are tuples
(e_0, e_1, ..., e_n) with e_0 >= 0, e_i >= 1 for i >= 1, sum e_i = w.
All entries have degree 0, so the chain degree is n and the boundary is
the classical one:

  b(a_0 x ... x a_n) = sum_{i=0}^{n-1} (-1)^i (a_0 x ... a_i a_{i+1} ... x a_n)
                       + (-1)^n (a_n a_0 x a_1 x ... x a_{n-1})

Merged interior entries are powers x^(e_i + e_{i+1}), never the identity,
so normalization only constrains the enumeration, not the boundary.
"""

import itertools
import json
import sys
from fractions import Fraction


def compositions(total, parts, minimum):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def chain_basis(weight, degree):
    out = []
    for e0 in range(0, weight + 1):
        for rest in compositions(weight - e0, degree, 1):
            out.append((e0,) + rest)
    out.sort()
    return out


def boundary(chain):
    n = len(chain) - 1
    terms = {}
    for i in range(n):
        merged = chain[:i] + (chain[i] + chain[i + 1],) + chain[i + 2:]
        terms[merged] = terms.get(merged, 0) + (-1) ** i
    if n >= 1:
        merged = (chain[-1] + chain[0],) + chain[1:-1]
        terms[merged] = terms.get(merged, 0) + (-1) ** n
    return {k: v for k, v in terms.items() if v != 0}


def boundary_matrix(weight, degree):
    src = chain_basis(weight, degree)
    dst = chain_basis(weight, degree - 1)
    index = {c: i for i, c in enumerate(dst)}
    rows = len(dst)
    cols = len(src)
    mat = [[Fraction(0)] * cols for _ in range(rows)]
    for j, chain in enumerate(src):
        for merged, coeff in boundary(chain).items():
            mat[index[merged]][j] += coeff
    return mat, rows, cols


def rank(mat):
    if not mat or not mat[0]:
        return 0
    work = [row[:] for row in mat]
    nrows = len(work)
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][col]
        for i in range(nrows):
            if i != r and work[i][col] != 0:
                factor = work[i][col] / pv
                for jj in range(col, ncols):
                    work[i][jj] -= factor * work[r][jj]
        r += 1
        if r == nrows:
            break
    return r


def hochschild_dims(max_weight):
    table = {}
    for w in range(0, max_weight + 1):
        degs = range(0, w + 2)
        dims = {}
        for d in degs:
            basis = chain_basis(w, d)
            if not basis:
                continue
            mat_in, _, _ = boundary_matrix(w, d + 1)
            mat_out, _, _ = boundary_matrix(w, d)
            ker = len(basis) - rank(mat_out)
            dims[str(d)] = ker - rank(mat_in)
        table[str(w)] = dims
    return table


def cyclic_word_classes(max_weight):
    counts = {}
    for w in range(1, max_weight + 1):
        words = {tuple([1] * w)}
        reps = set()
        for word in words:
            rotations = {word[i:] + word[:i] for i in range(len(word))}
            reps.add(min(rotations))
        counts[str(w)] = len(reps)
    return counts


def reduced_natural_cone_dims(max_weight):
    """H of cone[ kO_nat -> F_nat ] per (degree, weight).

    F_nat at weight w has one class (x^w) in degree 0; kO_nat is one class
    in bidegree (0,0). The cone at weight 0 is [k -> k] with the identity.
    """
    dims = {}
    for w in range(0, max_weight + 1):
        if w == 0:
            target = [[Fraction(1)]]
            h0 = 1 - rank(target)
            h1 = 1 - rank(target)
            cells = {}
            if h0:
                cells["0"] = h0
            if h1:
                cells["1"] = h1
            dims[str(w)] = cells
        else:
            dims[str(w)] = {"0": 1}
    return dims


def main():
    data = {
        "algebra": "free on one degree-0 weight-1 generator, one object",
        "hochschild_homology": hochschild_dims(4),
        "cyclic_word_classes": cyclic_word_classes(4),
        "reduced_natural_cone_homology": reduced_natural_cone_dims(4),
    }
    json.dump(data, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
