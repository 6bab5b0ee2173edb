"""Shared fixtures: tiny constructors, seeded generators, slice oracles."""

from itertools import product

import numpy as np

from convres import (
    CodePresentation,
    Poly,
    PolyMatrix,
    Ring,
    parse_poly,
    validate_complex,
)
from convres.groebner import syzygy_basis
from convres.oracle import rref_mod_p


def ring2():
    return Ring(2, 2)


def P(text, ring):
    return parse_poly(text, ring)


def mat(ring, rows):
    return PolyMatrix.from_rows(ring, [[parse_poly(s, ring) for s in row]
                                       for row in rows])


def code(ring, rows):
    return CodePresentation(ring, mat(ring, rows))


def koszul_code():
    return code(ring2(), [["D1", "D2"]])


def koszul_complex():
    r = ring2()
    return validate_complex([mat(r, [["D1", "D2"]]), mat(r, [["D2"], ["D1"]])])


def paper_matrix():
    """The 3x2 univariate golden matrix over F_101."""
    r = Ring(101, 1)
    return mat(r, [["2*D1^3 + D1 + 1", "D1^2 - 10"],
                   ["D1^2 - 5", "D1 + 4"],
                   ["3*D1^4 + 7*D1", "D1^2 + 1"]])


# -- seeded random generators -------------------------------------------

def random_poly(rng, ring, max_deg, nonzero=False):
    coeffs = {}
    for _ in range(rng.randint(1, 3)):
        exps = [0] * ring.nvars
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            exps[rng.randrange(ring.nvars)] += 1
        coeffs[tuple(exps)] = coeffs.get(tuple(exps), 0) + rng.randrange(ring.p)
    f = Poly.from_dict(ring, coeffs)
    if nonzero and f.is_zero:
        return Poly.const(ring, 1 + rng.randrange(ring.p - 1))
    return f


def random_code(rng, p=None, n=None, q=None, max_cols=3, max_deg=2):
    p = p if p is not None else rng.choice([2, 3, 101])
    n = n if n is not None else rng.randint(1, 3)
    q = q if q is not None else rng.randint(1, 3)
    ring = Ring(p, n)
    t = rng.randint(1, max_cols)
    while True:
        rows = [[random_poly(rng, ring, max_deg) for _ in range(t)] for _ in range(q)]
        m = PolyMatrix.from_rows(ring, rows)
        if not m.has_zero_column():
            return CodePresentation(ring, m)


def random_complex(rng):
    """A random valid complex: products vanish, no zero columns.

    Mix of single matrices, genuine syzygy pairs, and pairs damaged by
    scaling or dropping syzygy columns (still a complex, often inexact).
    """
    p = rng.choice([2, 3, 101])
    n = rng.randint(1, 2)
    ring = Ring(p, n)
    q = rng.randint(1, 3)
    t = rng.randint(1, 3)
    while True:
        rows = [[random_poly(rng, ring, 2) for _ in range(t)] for _ in range(q)]
        g1 = PolyMatrix.from_rows(ring, rows)
        if not g1.has_zero_column():
            break
    style = rng.random()
    if style < 0.4:
        return validate_complex([g1])
    syz = syzygy_basis(g1)
    if syz.ncols == 0:
        return validate_complex([g1])
    cols = syz.columns()
    if style < 0.7:
        cols = cols[:3]
    else:
        cols = cols[:3]
        k = rng.randrange(len(cols))
        slot = rng.randrange(ring.nvars)
        shift = tuple(1 if i == slot else 0 for i in range(ring.nvars))
        cols[k] = tuple(f.mul_term(1, shift) for f in cols[k])
        if len(cols) > 1 and rng.random() < 0.5:
            cols.pop(rng.randrange(len(cols)))
    g2 = PolyMatrix.from_columns(ring, g1.ncols, cols)
    return validate_complex([g1, g2])


# -- graded slice oracle over T -------------------------------------------

def _exact_degree_monomials(nvars, d):
    if d < 0:
        return []
    return sorted(e for e in product(range(d + 1), repeat=nvars) if sum(e) == d)


def graded_minimal_generator_count(generators, rank, twist, ring):
    """Number of minimal generators of a graded submodule of T^rank.

    Works degree by degree with plain rank computations: in each degree
    the new-generator count is dim M_d minus the dimension of the span
    of the variable shifts of a basis of M_{d-1}.
    """
    p = ring.p
    degs = []
    for g in generators:
        d = None
        for pos, f in enumerate(g):
            if not f.is_zero:
                d = int(f.degree) + twist[pos]
        degs.append(d)
    dmax = max(degs)

    def slice_basis_index(d):
        monos = []
        for pos in range(rank):
            for e in _exact_degree_monomials(ring.nvars, d - twist[pos]):
                monos.append((pos, e))
        return {t: i for i, t in enumerate(monos)}, monos

    def vectorize(elem, index, dim):
        v = np.zeros(dim, dtype=np.int64)
        for pos, f in enumerate(elem):
            for e, c in f.terms:
                v[index[(pos, e)]] = c
        return v

    total = 0
    prev_basis_elems = []
    for d in range(0, dmax + 1):
        index, monos = slice_basis_index(d)
        dim = len(monos)
        rows = []
        # Full degree-d slice of the module: all shifts of all generators.
        for g, gd in zip(generators, degs):
            for e in _exact_degree_monomials(ring.nvars, d - gd):
                rows.append(vectorize(tuple(f.mul_term(1, e) for f in g), index, dim))
        m_d = 0
        basis_elems = []
        if rows:
            rref, _ = rref_mod_p(np.array(rows, dtype=np.int64), p)
            m_d = rref.shape[0]
            for r in range(m_d):
                per = [dict() for _ in range(rank)]
                for i, c in enumerate(rref[r]):
                    if c % p:
                        pos, e = monos[i]
                        per[pos][e] = int(c)
                basis_elems.append(tuple(Poly.from_dict(ring, t) for t in per))
        # Trivial part: variable shifts of the previous slice.
        shifted = []
        for elem in prev_basis_elems:
            for slot in range(ring.nvars):
                sh = tuple(1 if i == slot else 0 for i in range(ring.nvars))
                shifted.append(vectorize(tuple(f.mul_term(1, sh) for f in elem),
                                         index, dim))
        triv = 0
        if shifted:
            rref, _ = rref_mod_p(np.array(shifted, dtype=np.int64), p)
            triv = rref.shape[0]
        total += m_d - triv
        prev_basis_elems = basis_elems
    return total
