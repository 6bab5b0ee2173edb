"""Brute-force verification by degree-truncated linear algebra.

Everything here is deliberately independent of the Groebner engine:
spaces of bounded-degree module elements are laid out over explicit
monomial bases and handled with dense row reduction modulo p.  This is
the second route against which the exact machinery is checked: Hilbert
values, exactness of degree slices, kernels of truncated maps, and the
memory recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import CodePresentation, ModElem, Poly, PolyMatrix, Ring, check_twist
from .errors import StructuralError


def rref_mod_p(mat: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns (rref, pivot_columns)."""
    m = mat.astype(np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        touched = np.nonzero(col)[0]
        if touched.size:
            m[touched] = (m[touched] - np.outer(col[touched], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : mat @ x = 0} as rows, from the RREF free columns."""
    rref, pivots = rref_mod_p(mat, p)
    cols = mat.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, c in enumerate(free):
        basis[idx, c] = 1
        for r, pc in enumerate(pivots):
            basis[idx, pc] = (-rref[r, c]) % p
    return basis


def monomials_up_to(n: int, d: int):
    """All exponent vectors in n variables of total degree <= d, sorted."""
    if d < 0:
        return []
    out = [e for e in product(range(d + 1), repeat=n) if sum(e) <= d]
    out.sort()
    return out


@dataclass(frozen=True)
class _SliceBasis:
    """Monomial basis of {f in S^rank : deg_twist(f) <= d}."""

    ring: Ring
    rank: int
    twist: tuple
    d: int
    index: dict
    monos: tuple

    @classmethod
    def build(cls, ring: Ring, rank: int, twist, d: int):
        twist = check_twist(twist, rank)
        monos = []
        for pos in range(rank):
            for e in monomials_up_to(ring.n, d - twist[pos]):
                monos.append((pos, e))
        index = {t: i for i, t in enumerate(monos)}
        return cls(ring, rank, twist, d, index, tuple(monos))

    @property
    def dim(self):
        return len(self.monos)

    def vector(self, elem: ModElem) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for pos, poly in enumerate(elem):
            for e, c in poly.terms:
                v[self.index[(pos, e)]] = c
        return v

    def element(self, row: np.ndarray) -> ModElem:
        per_pos = [dict() for _ in range(self.rank)]
        for i, c in enumerate(row):
            if c % self.ring.p:
                pos, e = self.monos[i]
                per_pos[pos][e] = int(c) % self.ring.p
        return tuple(Poly.from_dict(self.ring, d) for d in per_pos)


@dataclass(frozen=True)
class TruncatedSpace:
    """RREF basis of a degree slice of a submodule of S^rank."""

    ring: Ring
    rank: int
    twist: tuple
    d: int
    basis: tuple
    dimension: int
    cap_used: int
    stabilized: bool

    def __eq__(self, other):
        return (isinstance(other, TruncatedSpace) and self.ring == other.ring
                and self.rank == other.rank and self.twist == other.twist
                and self.d == other.d and self.basis == other.basis)


@lru_cache(maxsize=128)
def _echelon_at_cap(code: CodePresentation, cap: int):
    """Echelonized span of all generator shifts of degree <= cap.

    Columns are permuted so total degree decreases left to right; the
    "degree > d" column blocks then nest over d, and a single echelon
    form answers every degree cut: a row lies in the degree-<= d slice
    exactly when its pivot falls past the "> d" block.

    Returns (rref, pivot_degrees, big_basis, perm) with pivot_degrees
    the column degree at every pivot.
    """
    ring = code.ring
    q = code.q
    big = _SliceBasis.build(ring, q, (0,) * q, cap)
    perm = sorted(range(big.dim), key=lambda i: (-sum(big.monos[i][1]), i))
    rows = []
    for g in code.generators.columns():
        gdeg = max(int(f.degree) for f in g if not f.is_zero)
        for e in monomials_up_to(ring.n, cap - gdeg):
            shifted = tuple(f.mul_term(1, e) for f in g)
            rows.append(big.vector(shifted)[perm])
    if not rows:
        return (np.zeros((0, big.dim), dtype=np.int64), [], big, perm)
    rref, pivots = rref_mod_p(np.array(rows, dtype=np.int64), ring.p)
    pivot_degrees = [sum(big.monos[perm[c]][1]) for c in pivots]
    return rref, pivot_degrees, big, perm


def _slice_from_echelon(code: CodePresentation, d: int, cap: int):
    rref, pivot_degrees, big, perm = _echelon_at_cap(code, cap)
    keep = [r for r, deg in enumerate(pivot_degrees) if deg <= d]
    return rref, keep, big, perm


def truncated_code_space(code: CodePresentation, d: int, cap: int = None) -> TruncatedSpace:
    """Macaulay-style basis of the codewords of degree <= d.

    The generating products are truncated at ``cap`` (default
    d + 2 * max generator degree) and the cap is raised until the
    dimension is unchanged for two consecutive increments; the
    ``stabilized`` flag records that the heuristic converged.
    """
    ring = code.ring
    if d < 0:
        return TruncatedSpace(ring, code.q, (0,) * code.q, d, (), 0, cap or 0, True)
    maxdeg = max(1, max(code.generators.column_degrees()))
    c = max(cap if cap is not None else d + 2 * maxdeg, d)
    dims = []
    while True:
        _, keep, _, _ = _slice_from_echelon(code, d, c)
        dims.append(len(keep))
        if len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3]:
            stabilized = True
            c -= 2
            break
        if len(dims) > 12:
            stabilized = False
            break
        c += 1
    rref, keep, big, perm = _slice_from_echelon(code, d, c)
    small = _SliceBasis.build(ring, code.q, (0,) * code.q, d)
    if keep:
        unperm = np.zeros((len(keep), big.dim), dtype=np.int64)
        unperm[:, perm] = rref[keep]
        elems = [big.element(unperm[r]) for r in range(len(keep))]
        mat2 = np.array([small.vector(e) for e in elems], dtype=np.int64)
        rref2, _ = rref_mod_p(mat2, ring.p)
        basis = tuple(small.element(rref2[r]) for r in range(rref2.shape[0]))
    else:
        basis = ()
    return TruncatedSpace(ring, code.q, (0,) * code.q, d, basis, len(basis),
                          c, stabilized)


def hilbert_oracle(code: CodePresentation, d: int) -> int:
    """dim of the space of codewords of degree <= d, by brute force."""
    return truncated_code_space(code, d).dimension


def _truncated_map(mat: PolyMatrix, src: _SliceBasis, dst: _SliceBasis) -> np.ndarray:
    """Matrix of the F_p-linear map between two degree slices."""
    out = np.zeros((dst.dim, src.dim), dtype=np.int64)
    for j, (pos, e) in enumerate(src.monos):
        col = tuple(mat.entry(i, pos).mul_term(1, e) for i in range(mat.nrows))
        out[:, j] = dst.vector(col)
    return out


def truncated_exactness(cx, d: int) -> bool:
    """Exactness of the degree-<= d slice of the filtered chain of a complex.

    Checks injectivity of the last map, rank complementarity at every
    inner level, and surjectivity of the first map onto the truncated
    span of its image columns.
    """
    ring = cx.ring
    p = ring.p
    from .complexes import column_degree_table
    table = ((0,) * cx.q,) + column_degree_table(cx)
    slices = [_SliceBasis.build(ring, len(tw), tw, d) for tw in table]
    maps = [_truncated_map(cx.matrices[k], slices[k + 1], slices[k])
            for k in range(cx.length)]
    ranks = [len(rref_mod_p(m, p)[1]) for m in maps]
    if ranks[-1] != slices[-1].dim:
        return False
    for k in range(cx.length - 1):
        if ranks[k] + ranks[k + 1] != slices[k + 1].dim:
            return False
    code = CodePresentation(ring, cx.matrices[0])
    return ranks[0] == truncated_code_space(code, d).dimension


def truncated_kernel(mat: PolyMatrix, row_twist, col_twist, d: int):
    """Basis of the kernel of the degree-<= d slice of the map."""
    ring = mat.ring
    src = _SliceBasis.build(ring, mat.ncols, check_twist(col_twist, mat.ncols), d)
    dst = _SliceBasis.build(ring, mat.nrows, check_twist(row_twist, mat.nrows), d)
    m = _truncated_map(mat, src, dst)
    rows = nullspace_mod_p(m, ring.p)
    return [src.element(rows[r]) for r in range(rows.shape[0])]


def memory_recovery_check(code: CodePresentation, m: int, d_max: int) -> bool:
    """Whether the degree-<= m slice regenerates all slices up to d_max.

    Starting from the oracle basis of the degree-<= m slice, each next
    candidate slice is the span of the previous one and its products
    with the variables; the check succeeds when every candidate matches
    the oracle slice exactly.
    """
    ring = code.ring
    p = ring.p
    if d_max <= m:
        raise StructuralError("d_max must exceed the starting degree")
    current = list(truncated_code_space(code, m).basis)
    for d in range(m + 1, d_max + 1):
        basis = _SliceBasis.build(ring, code.q, (0,) * code.q, d)
        rows = []
        for elem in current:
            rows.append(basis.vector(elem))
            for slot in range(ring.n):
                shift = tuple(1 if t == slot else 0 for t in range(ring.n))
                rows.append(basis.vector(tuple(f.mul_term(1, shift) for f in elem)))
        if rows:
            rref, _ = rref_mod_p(np.array(rows, dtype=np.int64), p)
            candidate = [basis.element(rref[r]) for r in range(rref.shape[0])]
        else:
            candidate = []
        truth = list(truncated_code_space(code, d).basis)
        if candidate != truth:
            return False
        current = candidate
    return True
