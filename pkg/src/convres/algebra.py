"""Exact multivariate polynomial arithmetic over prime fields.

Two rings appear throughout the package:

* ``S = F_p[D1..Dn]``, the base ring in which codes live, and
* ``T = F_p[D0, D1..Dn]``, its homogeneous companion with one extra
  variable ``D0`` used to pass between filtered and graded data.

Monomials are dense exponent vectors.  In ``S`` slot ``i`` holds the
exponent of ``D(i+1)``; in ``T`` slot 0 holds the exponent of ``D0``.
The monomial order is graded reverse lexicographic with
``D1 > D2 > ... > Dn`` and, in ``T``, ``D0`` smallest.  Making ``D0``
the least variable keeps leading monomials free of ``D0`` whenever the
monomial has any other variable, which is what the homogenization
machinery relies on.

All values are immutable; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, PolyParseError, StructuralError

# Degree of the zero polynomial.  A genuine -infinity, never -1: the
# binomial conventions elsewhere need honest integer degrees.
NEG_INF = float("-inf")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Ring:
    """A polynomial ring F_p[D1..Dn] (or F_p[D0..Dn] when ``homog``)."""

    p: int
    n: int
    homog: bool = False

    def __post_init__(self):
        if not (2 <= self.p < 2**31 and is_prime(self.p)):
            raise DomainError(f"modulus must be a prime in [2, 2^31), got {self.p}")
        if self.n < 1:
            raise DomainError(f"need at least one variable, got n={self.n}")

    @property
    def nvars(self) -> int:
        return self.n + 1 if self.homog else self.n

    def var_name(self, slot: int) -> str:
        return f"D{slot}" if self.homog else f"D{slot + 1}"

    def var_slot(self, name: str) -> int:
        """Slot index of a variable name like ``D2``; raises on unknown names."""
        if not (len(name) > 1 and name[0] == "D" and name[1:].isdigit()):
            raise DomainError(f"unknown variable {name!r}")
        k = int(name[1:])
        lo = 0 if self.homog else 1
        if not (lo <= k <= self.n):
            raise DomainError(f"variable {name!r} not in ring with n={self.n}"
                              + (" (D0 allowed)" if self.homog else ""))
        return k if self.homog else k - 1

    def mono_key(self, exps: tuple[int, ...]):
        """Sort key realizing grevlex; larger key = larger monomial."""
        arranged = exps[1:] + exps[:1] if self.homog else exps
        return (sum(exps), tuple(-e for e in reversed(arranged)))

    def homogeneous_companion(self) -> "Ring":
        if self.homog:
            raise StructuralError("ring already has the homogenizing variable")
        return Ring(self.p, self.n, homog=True)

    def base(self) -> "Ring":
        if not self.homog:
            raise StructuralError("ring has no homogenizing variable to drop")
        return Ring(self.p, self.n, homog=False)


def _check_same_ring(a: "Poly", b: "Poly"):
    if a.ring != b.ring:
        raise StructuralError(f"ring mismatch: {a.ring} vs {b.ring}")


class Poly:
    """Immutable polynomial in canonical form.

    ``terms`` is a tuple of ``(exponents, coefficient)`` pairs with
    coefficients in ``[1, p)``, no duplicate monomials, sorted strictly
    decreasing in the ring's monomial order.  The empty tuple is the
    zero polynomial.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_dict(cls, ring: Ring, coeffs: dict) -> "Poly":
        p = ring.p
        nv = ring.nvars
        cleaned = {}
        for exps, c in coeffs.items():
            if len(exps) != nv:
                raise StructuralError(
                    f"exponent vector {exps} has length {len(exps)}, ring needs {nv}")
            c %= p
            if c:
                cleaned[tuple(exps)] = c
        ordered = tuple(sorted(cleaned.items(), key=lambda t: ring.mono_key(t[0]),
                               reverse=True))
        return cls(ring, ordered)

    @classmethod
    def zero(cls, ring: Ring) -> "Poly":
        return cls(ring, ())

    @classmethod
    def const(cls, ring: Ring, c: int) -> "Poly":
        c %= ring.p
        if not c:
            return cls.zero(ring)
        return cls(ring, (((0,) * ring.nvars, c),))

    @classmethod
    def variable(cls, ring: Ring, name: str) -> "Poly":
        slot = ring.var_slot(name)
        exps = tuple(1 if i == slot else 0 for i in range(ring.nvars))
        return cls(ring, ((exps, 1),))

    @classmethod
    def monomial(cls, ring: Ring, exps, coeff: int = 1) -> "Poly":
        return cls.from_dict(ring, {tuple(exps): coeff})

    # -- queries ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree, NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e, _ in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) <= 1

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    @property
    def is_nonzero_scalar(self) -> bool:
        return len(self.terms) == 1 and not any(self.terms[0][0])

    def constant_value(self) -> int:
        """Value of a constant polynomial as an integer in [0, p)."""
        if not self.terms:
            return 0
        if not self.is_constant:
            raise DomainError("polynomial is not constant")
        return self.terms[0][1]

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        _check_same_ring(self, other)
        acc = dict(self.terms)
        p = self.ring.p
        for e, c in other.terms:
            v = (acc.get(e, 0) + c) % p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Poly.from_dict(self.ring, acc)

    def __sub__(self, other: "Poly") -> "Poly":
        _check_same_ring(self, other)
        acc = dict(self.terms)
        p = self.ring.p
        for e, c in other.terms:
            v = (acc.get(e, 0) - c) % p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Poly.from_dict(self.ring, acc)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        _check_same_ring(self, other)
        p = self.ring.p
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (acc.get(e, 0) + c1 * c2) % p
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return Poly.from_dict(self.ring, acc)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise DomainError("negative polynomial power")
        out = Poly.const(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: int) -> "Poly":
        c %= self.ring.p
        if not c:
            return Poly.zero(self.ring)
        return Poly(self.ring, tuple((e, (c * v) % self.ring.p) for e, v in self.terms))

    def mul_term(self, coeff: int, exps: tuple[int, ...]) -> "Poly":
        """Multiply by a single term coeff * D^exps."""
        coeff %= self.ring.p
        if not coeff:
            return Poly.zero(self.ring)
        return Poly.from_dict(self.ring, {
            tuple(a + b for a, b in zip(e, exps)): (c * coeff)
            for e, c in self.terms})

    # -- degree-structure operations ----------------------------------

    def homogeneous_part(self, d: int) -> "Poly":
        """Sum of the terms of total degree exactly d (zero if none)."""
        if d < 0:
            return Poly.zero(self.ring)
        return Poly(self.ring, tuple((e, c) for e, c in self.terms if sum(e) == d))

    def homogenize(self, d: int) -> "Poly":
        """Lift into T as a homogeneous polynomial of degree exactly d.

        Every term D^m picks up the factor D0^(d - |m|).  Requires
        total degree <= d; the map is a bijection from polynomials of
        degree <= d onto the degree-d homogeneous slice of T.
        """
        if self.ring.homog:
            raise StructuralError("polynomial already lives in the homogeneous ring")
        deg = self.degree
        if deg is not NEG_INF and deg > d:
            raise DomainError(f"cannot homogenize degree {deg} polynomial in degree {d}")
        tring = self.ring.homogeneous_companion()
        return Poly(tring, tuple(((d - sum(e),) + e, c) for e, c in self.terms))

    def dehomogenize(self) -> "Poly":
        """Substitute D0 := 1 and return the result over S."""
        if not self.ring.homog:
            raise StructuralError("polynomial has no homogenizing variable")
        sring = self.ring.base()
        acc: dict = {}
        for e, c in self.terms:
            k = e[1:]
            acc[k] = (acc.get(k, 0) + c) % self.ring.p
        return Poly.from_dict(sring, acc)

    def set_d0_zero(self) -> "Poly":
        """Substitute D0 := 0, staying in T."""
        if not self.ring.homog:
            raise StructuralError("polynomial has no homogenizing variable")
        return Poly(self.ring, tuple((e, c) for e, c in self.terms if e[0] == 0))

    # -- text ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for slot, k in enumerate(e):
                if k == 0:
                    continue
                name = self.ring.var_name(slot)
                factors.append(name if k == 1 else f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


# -- polynomial text grammar ------------------------------------------
#
#   expr   := term (('+' | '-') term)*
#   term   := ['+' | '-'] factor ('*' factor)*
#   factor := INT | VAR ['^' INT]
#
# with VAR one of D0..Dn (D0 only over T).  Coefficients are reduced
# modulo p while parsing.

def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch == "D":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyParseError("variable name needs an index", i)
            tokens.append(("VAR", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the documented polynomial grammar into canonical form."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take(kind):
        nonlocal pos
        tk = peek()
        if tk[0] != kind:
            raise PolyParseError(f"expected {kind}, found {tk[1]!r}", tk[2])
        pos += 1
        return tk

    def parse_factor() -> Poly:
        kind, value, at = peek()
        if kind == "INT":
            take("INT")
            return Poly.const(ring, int(value))
        if kind == "VAR":
            take("VAR")
            try:
                var = Poly.variable(ring, value)
            except DomainError as exc:
                raise PolyParseError(str(exc), at) from None
            if peek()[0] == "^":
                take("^")
                etok = take("INT")
                return var ** int(etok[1])
            return var
        raise PolyParseError(f"expected a coefficient or variable, found {value!r}", at)

    def parse_term() -> Poly:
        sign = 1
        while peek()[0] in ("+", "-"):
            if take(peek()[0])[0] == "-":
                sign = -sign
        out = parse_factor()
        while peek()[0] == "*":
            take("*")
            out = out * parse_factor()
        return out.scale(sign)

    result = parse_term()
    while pos < len(tokens):
        kind, value, at = peek()
        if kind not in ("+", "-"):
            raise PolyParseError(f"expected '+' or '-', found {value!r}", at)
        result = result + parse_term()
    return result


# -- module elements ---------------------------------------------------
#
# An element of S^p (or T^p) is a plain tuple of Poly of length p.

ModElem = tuple

def vec_zero(ring: Ring, rank: int) -> ModElem:
    return tuple(Poly.zero(ring) for _ in range(rank))


def vec_is_zero(vec: ModElem) -> bool:
    return all(f.is_zero for f in vec)


def vec_add(a: ModElem, b: ModElem) -> ModElem:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: ModElem, b: ModElem) -> ModElem:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: ModElem, c: int) -> ModElem:
    return tuple(x.scale(c) for x in a)


def vec_mul_poly(a: ModElem, f: Poly) -> ModElem:
    return tuple(x * f for x in a)


def twisted_degree(vec: ModElem, twist: tuple[int, ...]):
    """max_i twist(i) + deg(vec_i); NEG_INF on the zero element."""
    if len(vec) != len(twist):
        raise StructuralError(
            f"element of rank {len(vec)} against twist of length {len(twist)}")
    best = NEG_INF
    for f, a in zip(vec, twist):
        d = f.degree
        if d is not NEG_INF and a + d > best:
            best = a + d
    return best


def check_twist(twist, rank: int) -> tuple[int, ...]:
    twist = tuple(twist)
    if len(twist) != rank:
        raise StructuralError(f"twist length {len(twist)} does not match rank {rank}")
    if any(a < 0 for a in twist):
        raise DomainError(f"twist entries must be non-negative, got {twist}")
    return twist


# -- matrices ----------------------------------------------------------

class PolyMatrix:
    """Immutable matrix of Poly, stored row-major.

    Empty matrices (0 rows or 0 columns) are representable so that
    kernel computations can report triviality; contexts that require a
    genuine matrix validate shape themselves.
    """

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: Ring, nrows: int, ncols: int, entries):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "PolyMatrix":
        rows = tuple(tuple(row) for row in rows)
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise StructuralError(f"row {i} has {len(row)} entries, expected {ncols}")
            for f in row:
                if f.ring != ring:
                    raise StructuralError("matrix entry from a different ring")
        return cls(ring, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, ring: Ring, nrows: int, columns) -> "PolyMatrix":
        columns = list(columns)
        for col in columns:
            if len(col) != nrows:
                raise StructuralError("column length does not match row count")
        rows = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(ring, nrows, len(columns), rows)

    @classmethod
    def identity(cls, ring: Ring, q: int) -> "PolyMatrix":
        one = Poly.const(ring, 1)
        zero = Poly.zero(ring)
        return cls.from_rows(ring, [[one if i == j else zero for j in range(q)]
                                    for i in range(q)])

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def row(self, i: int) -> ModElem:
        return self.entries[i]

    def column(self, j: int) -> ModElem:
        return tuple(self.entries[i][j] for i in range(self.nrows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        rows = tuple(tuple(self.entries[i][j] for i in range(self.nrows))
                     for j in range(self.ncols))
        return PolyMatrix(self.ring, self.ncols, self.nrows, rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ring != other.ring:
            raise StructuralError("matrix product across different rings")
        if self.ncols != other.nrows:
            raise StructuralError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        zero = Poly.zero(self.ring)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return PolyMatrix(self.ring, self.nrows, other.ncols, tuple(rows))

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for row in self.entries for f in row)

    def has_zero_column(self) -> bool:
        return any(vec_is_zero(self.column(j)) for j in range(self.ncols))

    def column_degrees(self, row_twist=None) -> tuple[int, ...]:
        """Twisted degree of every column; a zero column is a domain error."""
        twist = (0,) * self.nrows if row_twist is None else check_twist(row_twist, self.nrows)
        out = []
        for j in range(self.ncols):
            d = twisted_degree(self.column(j), twist)
            if d is NEG_INF:
                raise DomainError(f"column {j} is zero")
            out.append(d)
        return tuple(out)

    def map_entries(self, fn, ring: Ring) -> "PolyMatrix":
        rows = tuple(tuple(fn(f) for f in row) for row in self.entries)
        return PolyMatrix(ring, self.nrows, self.ncols, rows)

    def to_strings(self) -> list:
        return [[str(f) for f in row] for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring
                and self.entries == other.entries
                and self.nrows == other.nrows and self.ncols == other.ncols)

    def __hash__(self):
        return hash((self.ring, self.nrows, self.ncols, self.entries))

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, {self.to_strings()})"


@dataclass(frozen=True)
class CodePresentation:
    """A convolutional code C of length q, given by a generator matrix.

    The columns of ``generators`` (a q x t matrix over S with no zero
    column) generate C as a submodule of S^q.
    """

    ring: Ring
    generators: PolyMatrix

    def __post_init__(self):
        if self.ring.homog:
            raise StructuralError("codes live over S, not the homogeneous ring")
        if self.generators.ring != self.ring:
            raise StructuralError("generator matrix ring mismatch")
        if self.generators.nrows < 1 or self.generators.ncols < 1:
            raise DomainError("generator matrix must be at least 1x1")
        if self.generators.has_zero_column():
            raise DomainError("generator matrix has a zero column")

    @property
    def q(self) -> int:
        return self.generators.nrows

    @classmethod
    def from_strings(cls, p: int, n: int, rows) -> "CodePresentation":
        ring = Ring(p, n)
        mat = PolyMatrix.from_rows(ring, [[parse_poly(s, ring) for s in row]
                                          for row in rows])
        return cls(ring, mat)
