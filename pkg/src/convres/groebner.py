"""Module Groebner engine over S and T.

Submodules of a free module R^p are handled through a degree-compatible
term-over-position order: a term is a monomial sitting in one coordinate
of R^p, terms are compared by twisted weight first, then by grevlex on
the monomial, then by position (lower position wins).  The engine
provides normal forms, Buchberger completion, reduced (canonical) bases,
membership and module equality, syzygies via Schreyer's construction
with coordinates converted back to the caller's generators, and
extraction of minimal homogeneous generating sets of graded submodules.

Everything is plain Buchberger; no signature-based or Hilbert-driven
shortcuts.  Inputs at desk scale keep this comfortably fast.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .algebra import (
    ModElem,
    NEG_INF,
    Poly,
    PolyMatrix,
    Ring,
    check_twist,
    twisted_degree,
    vec_is_zero,
)
from .errors import DomainError, StructuralError

# Internally a module element is a flat dict {(position, exponents): coeff}.


@dataclass(frozen=True)
class ModuleOrder:
    """Degree-compatible term-over-position order on R^p with a twist.

    The weight of a monomial m at position i is deg(m) + twist[i];
    comparison is weight, then grevlex on m, then smaller position.
    """

    ring: Ring
    twist: tuple[int, ...]

    def __post_init__(self):
        check_twist(self.twist, len(self.twist))

    @property
    def rank(self) -> int:
        return len(self.twist)

    def key(self, term):
        pos, exps = term
        deg, tail = self.ring.mono_key(exps)
        return (deg + self.twist[pos], deg, tail, -pos)


def zero_order(ring: Ring, rank: int) -> ModuleOrder:
    return ModuleOrder(ring, (0,) * rank)


@dataclass(frozen=True)
class SubmodulePresentation:
    """Generators of a submodule of R^rank, plus the ambient twist."""

    ring: Ring
    rank: int
    generators: tuple
    twist: tuple[int, ...] = None

    def __post_init__(self):
        if self.rank < 1:
            raise StructuralError("ambient rank must be >= 1")
        if not self.generators:
            raise StructuralError("need at least one generator")
        for g in self.generators:
            if len(g) != self.rank:
                raise StructuralError("generator rank mismatch")
            if vec_is_zero(g):
                raise DomainError("zero generator column")
        if self.twist is None:
            object.__setattr__(self, "twist", (0,) * self.rank)
        else:
            object.__setattr__(self, "twist", check_twist(self.twist, self.rank))

    @classmethod
    def from_matrix(cls, matrix: PolyMatrix, twist=None) -> "SubmodulePresentation":
        return cls(matrix.ring, matrix.nrows, tuple(matrix.columns()), twist)


# -- flat representation helpers ----------------------------------------

def _to_flat(vec: ModElem) -> dict:
    return {(i, e): c for i, poly in enumerate(vec) for e, c in poly.terms}


def _from_flat(ring: Ring, rank: int, flat: dict) -> ModElem:
    per_pos = [dict() for _ in range(rank)]
    for (pos, e), c in flat.items():
        per_pos[pos][e] = c
    return tuple(Poly.from_dict(ring, d) for d in per_pos)


def _addmul(target: dict, src: dict, coeff: int, shift: tuple[int, ...], p: int):
    """target += coeff * D^shift * src, in place."""
    if coeff % p == 0:
        return
    for (pos, e), c in src.items():
        key = (pos, tuple(a + b for a, b in zip(e, shift)))
        v = (target.get(key, 0) + coeff * c) % p
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def _divides(e1: tuple[int, ...], e2: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


class _GBItem:
    __slots__ = ("flat", "lead", "expr")

    def __init__(self, flat, lead, expr=None):
        self.flat = flat      # monic: coefficient of lead is 1
        self.lead = lead      # (position, exponents)
        self.expr = expr      # flat dict over input indices, or None


def _reduce_flat(f: dict, items, order: ModuleOrder, want_quotients=False):
    """Full normal form of ``f`` against monic ``items``.

    Returns (remainder, quotients) where quotients[k] is the flat dict
    of the multiplier applied to items[k] (only when requested).
    """
    p = order.ring.p
    work = dict(f)
    rem: dict = {}
    quotients = [dict() for _ in items] if want_quotients else None
    while work:
        t = max(work, key=order.key)
        c = work[t]
        pos, exps = t
        for k, item in enumerate(items):
            lpos, lexps = item.lead
            if lpos == pos and _divides(lexps, exps):
                shift = tuple(a - b for a, b in zip(exps, lexps))
                _addmul(work, item.flat, -c, shift, p)
                if want_quotients:
                    key = shift
                    v = (quotients[k].get(key, 0) + c) % p
                    if v:
                        quotients[k][key] = v
                    else:
                        quotients[k].pop(key, None)
                break
        else:
            rem[t] = c
            del work[t]
    return rem, quotients


def _spair_parts(gi: _GBItem, gj: _GBItem, order: ModuleOrder):
    """S-pair of two monic items with leads in the same position.

    Returns (spair_flat, shift_i, shift_j) where
    spair = D^shift_i * gi - D^shift_j * gj.
    """
    p = order.ring.p
    (pos, ei), (_, ej) = gi.lead, gj.lead
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    ui = tuple(a - b for a, b in zip(lcm, ei))
    uj = tuple(a - b for a, b in zip(lcm, ej))
    s: dict = {}
    _addmul(s, gi.flat, 1, ui, p)
    _addmul(s, gj.flat, -1, uj, p)
    return s, ui, uj


def _monic(flat: dict, order: ModuleOrder):
    """Scale to leading coefficient 1; returns (flat, lead, applied inverse)."""
    p = order.ring.p
    lead = max(flat, key=order.key)
    inv = pow(flat[lead], p - 2, p)
    if inv != 1:
        flat = {t: (c * inv) % p for t, c in flat.items()}
    return flat, lead, inv


def _pair_weight(gi: _GBItem, gj: _GBItem, order: ModuleOrder) -> int:
    (pos, ei), (_, ej) = gi.lead, gj.lead
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    return sum(lcm) + order.twist[pos]


def _buchberger(gens_flat, order: ModuleOrder, track=False):
    """Complete ``gens_flat`` to a Groebner basis (normal strategy).

    With ``track`` each basis element carries its expression in the
    input generators, so syzygies can be pulled back to the caller's
    coordinates afterwards.
    """
    p = order.ring.p
    items: list[_GBItem] = []
    for j, flat in enumerate(gens_flat):
        if not flat:
            raise DomainError("zero generator")
        flat, lead, inv = _monic(dict(flat), order)
        expr = {(j, (0,) * order.ring.nvars): inv} if track else None
        items.append(_GBItem(flat, lead, expr))

    heap = []
    for i in range(len(items)):
        for j in range(i):
            if items[i].lead[0] == items[j].lead[0]:
                heapq.heappush(heap, (_pair_weight(items[i], items[j], order), j, i))

    while heap:
        _, i, j = heapq.heappop(heap)
        s, ui, uj = _spair_parts(items[i], items[j], order)
        rem, quots = _reduce_flat(s, items, order, want_quotients=track)
        if not rem:
            continue
        if track:
            expr: dict = {}
            _addmul(expr, items[i].expr, 1, ui, p)
            _addmul(expr, items[j].expr, -1, uj, p)
            for k, q in enumerate(quots):
                for shift, c in q.items():
                    _addmul(expr, items[k].expr, -c, shift, p)
        else:
            expr = None
        rem, lead, inv = _monic(rem, order)
        if track and inv != 1:
            expr = {t: (c * inv) % p for t, c in expr.items()}
        new = _GBItem(rem, lead, expr)
        items.append(new)
        hi = len(items) - 1
        for k in range(hi):
            if items[k].lead[0] == new.lead[0]:
                heapq.heappush(heap, (_pair_weight(items[k], new, order), k, hi))
    return items


def _interreduce(items, order: ModuleOrder):
    """Canonical reduced basis: minimal leads, fully tail-reduced, sorted."""
    keyed = sorted(items, key=lambda it: order.key(it.lead))
    kept: list[_GBItem] = []
    for it in keyed:
        pos, exps = it.lead
        if any(k.lead[0] == pos and _divides(k.lead[1], exps) for k in kept):
            continue
        kept.append(it)
    # Leads are now pairwise non-divisible; one tail-reduction pass is
    # enough because divisibility only looks at leads, which are fixed.
    reduced = []
    for idx, it in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        rem, _ = _reduce_flat(it.flat, others, order)
        rem, lead, _ = _monic(rem, order)
        assert lead == it.lead
        reduced.append(_GBItem(rem, lead))
    reduced.sort(key=lambda it: order.key(it.lead), reverse=True)
    return reduced


class GroebnerBasis:
    """A (reduced) Groebner basis of a submodule of R^rank."""

    __slots__ = ("ring", "rank", "order", "elements", "reduced", "_items")

    def __init__(self, ring, rank, order, items, reduced):
        self.ring = ring
        self.rank = rank
        self.order = order
        self._items = items
        self.elements = tuple(_from_flat(ring, rank, it.flat) for it in items)
        self.reduced = reduced

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.rank == other.rank and self.order == other.order
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.ring, self.rank, self.order, self.elements))


def groebner_basis(module: SubmodulePresentation,
                   order: ModuleOrder = None) -> GroebnerBasis:
    """Reduced Groebner basis; canonical for (module, order)."""
    if order is None:
        order = ModuleOrder(module.ring, module.twist)
    if order.rank != module.rank or order.ring != module.ring:
        raise StructuralError("order does not match the presentation")
    items = _buchberger([_to_flat(g) for g in module.generators], order)
    items = _interreduce(items, order)
    return GroebnerBasis(module.ring, module.rank, order, items, reduced=True)


def normal_form(f: ModElem, basis: GroebnerBasis) -> ModElem:
    """Remainder of f on division by the basis; f - result is in the span."""
    if len(f) != basis.rank:
        raise StructuralError(f"element of rank {len(f)} against basis of rank {basis.rank}")
    for poly in f:
        if poly.ring != basis.ring:
            raise StructuralError("element ring does not match basis ring")
    rem, _ = _reduce_flat(_to_flat(f), basis._items, basis.order)
    return _from_flat(basis.ring, basis.rank, rem)


def membership(f: ModElem, module: SubmodulePresentation) -> bool:
    return vec_is_zero(normal_form(f, groebner_basis(module)))


def module_equal(m1: SubmodulePresentation, m2: SubmodulePresentation) -> bool:
    """Whether two presentations span the same submodule.

    Compares reduced bases under the shared zero-twist order, so the
    answer does not depend on the presentations' own twists.
    """
    if m1.ring != m2.ring or m1.rank != m2.rank:
        raise StructuralError("presentations live in different ambient modules")
    order = zero_order(m1.ring, m1.rank)
    return groebner_basis(m1, order).elements == groebner_basis(m2, order).elements


# -- syzygies ------------------------------------------------------------

def syzygy_basis(matrix: PolyMatrix, row_twist=None) -> PolyMatrix:
    """Generators of {y : matrix @ y = 0}, as columns over the matrix's ring.

    Schreyer's construction: complete the columns to a Groebner basis
    while tracking expressions in the original columns, reduce every
    same-position S-pair of the final basis to zero, and pull the
    resulting relations back to the original coordinates.  The columns
    of (I - A B), with A the tracked expressions and B the division of
    the originals by the basis, complete the generating set.

    A 0-column result means the matrix is injective.  For a matrix that
    is homogeneous with respect to ``row_twist`` the returned syzygies
    are homogeneous as well.
    """
    ring = matrix.ring
    q, t = matrix.nrows, matrix.ncols
    if t == 0:
        return PolyMatrix.from_columns(ring, 0, [])
    if matrix.has_zero_column():
        raise DomainError("matrix has a zero column")
    order = ModuleOrder(ring, (0,) * q if row_twist is None else check_twist(row_twist, q))
    p = ring.p

    gens_flat = [_to_flat(col) for col in matrix.columns()]
    items = _buchberger(gens_flat, order, track=True)

    # Schreyer relations of the completed basis.
    raw: list[dict] = []
    for j in range(len(items)):
        for i in range(j):
            if items[i].lead[0] != items[j].lead[0]:
                continue
            s, ui, uj = _spair_parts(items[i], items[j], order)
            rem, quots = _reduce_flat(s, items, order, want_quotients=True)
            assert not rem, "S-pair of a completed basis must reduce to zero"
            sigma: dict = {}
            _addmul(sigma, {(i, (0,) * ring.nvars): 1}, 1, ui, p)
            _addmul(sigma, {(j, (0,) * ring.nvars): 1}, -1, uj, p)
            for k, quot in enumerate(quots):
                for shift, c in quot.items():
                    v = (sigma.get((k, shift), 0) - c) % p
                    if v:
                        sigma[(k, shift)] = v
                    else:
                        sigma.pop((k, shift), None)
            if sigma:
                raw.append(sigma)

    # Pull basis-coordinate relations back to the original columns.
    candidates: list[dict] = []
    for sigma in raw:
        out: dict = {}
        for (k, shift), c in sigma.items():
            _addmul(out, items[k].expr, c, shift, p)
        if out:
            candidates.append(out)

    # Unit relations from re-dividing the originals by the basis.
    for j, flat in enumerate(gens_flat):
        rem, quots = _reduce_flat(flat, items, order, want_quotients=True)
        assert not rem, "original generator must reduce to zero against its basis"
        col: dict = {(j, (0,) * ring.nvars): 1}
        for k, quot in enumerate(quots):
            for shift, c in quot.items():
                _addmul(col, items[k].expr, -c, shift, p)
        if col:
            candidates.append(col)

    col_twist = matrix.column_degrees(row_twist)
    syz_order = ModuleOrder(ring, col_twist)
    seen = set()
    cleaned = []
    for flat in candidates:
        flat, lead, _ = _monic(flat, syz_order)
        key = tuple(sorted(flat.items()))
        if key in seen:
            continue
        seen.add(key)
        cleaned.append((syz_order.key(lead), flat))
    cleaned.sort(key=lambda pair: pair[0])
    columns = [_from_flat(ring, t, flat) for _, flat in cleaned]
    return PolyMatrix.from_columns(ring, t, columns)


def matrix_kernel(matrix: PolyMatrix) -> PolyMatrix:
    """Generators of {y : matrix @ y = 0}, with zero columns permitted.

    A zero column contributes a free unit generator; the remaining
    relations come from the syzygies of the nonzero columns.
    """
    ring = matrix.ring
    t = matrix.ncols
    zero_cols = [j for j in range(t) if vec_is_zero(matrix.column(j))]
    if len(zero_cols) == t:
        return PolyMatrix.identity(ring, t)
    live = [j for j in range(t) if j not in zero_cols]
    sub = PolyMatrix.from_columns(ring, matrix.nrows,
                                  [matrix.column(j) for j in live])
    syz = syzygy_basis(sub)
    zero = Poly.zero(ring)
    one = Poly.const(ring, 1)
    cols = []
    for k in range(syz.ncols):
        col = syz.column(k)
        full = [zero] * t
        for idx, j in enumerate(live):
            full[j] = col[idx]
        cols.append(tuple(full))
    for j in zero_cols:
        unit = [zero] * t
        unit[j] = one
        cols.append(tuple(unit))
    return PolyMatrix.from_columns(ring, t, cols)


def left_kernel(matrix: PolyMatrix) -> PolyMatrix:
    """Rows h with h @ matrix = 0; the kernel of the transpose."""
    return matrix_kernel(matrix.transpose()).transpose()


# -- minimal homogeneous generators ---------------------------------------

def homogeneous_column_degree(vec: ModElem, twist: tuple[int, ...]):
    """Common twisted degree of a homogeneous element, or raise DomainError."""
    d = twisted_degree(vec, twist)
    if d is NEG_INF:
        raise DomainError("zero element has no homogeneous degree")
    for f, a in zip(vec, twist):
        if f.is_zero:
            continue
        if not f.is_homogeneous or f.degree != d - a:
            raise DomainError("element is not homogeneous for the given twist")
    return d


def minimal_generators(module: SubmodulePresentation, twist=None) -> PolyMatrix:
    """Extract a minimal homogeneous generating set of a graded submodule.

    Generators are inspected in increasing degree; one is kept exactly
    when it is not a combination of those already kept.  Over a graded
    module this greedy pass realizes the (unique) minimal number of
    generators per degree, so the size and the degree multiset of the
    output are invariants of the module.
    """
    twist = module.twist if twist is None else check_twist(twist, module.rank)
    degrees = [homogeneous_column_degree(g, twist) for g in module.generators]
    indexed = sorted(range(len(degrees)), key=lambda k: (degrees[k], k))
    kept: list = []
    for k in indexed:
        g = module.generators[k]
        if kept:
            pres = SubmodulePresentation(module.ring, module.rank, tuple(kept), twist)
            if membership(g, pres):
                continue
        kept.append(g)
    return PolyMatrix.from_columns(module.ring, module.rank, kept)
