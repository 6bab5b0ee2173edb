import random
from math import comb

import pytest

from convres import NEG_INF, Poly, PolyParseError, Ring, parse_poly, twisted_degree
from convres.errors import DomainError, StructuralError

from helpers import P


def test_addition_cancels_in_characteristic_two():
    r = Ring(2, 1)
    f = P("D1 + 1", r)
    assert (f + f).is_zero


def test_product_of_variables():
    r = Ring(5, 2)
    assert P("D1", r) * P("D2", r) == P("D1*D2", r)


def test_schoolbook_square_mod_two():
    r = Ring(2, 2)
    f = P("D1 + D2", r)
    assert f * f == P("D1^2 + D2^2", r)


def test_canonical_form_is_order_independent():
    rng = random.Random(7)
    r = Ring(3, 2)
    for _ in range(50):
        items = [(tuple(rng.randrange(4) for _ in range(2)), rng.randrange(3))
                 for _ in range(6)]
        acc = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        direct = Poly.from_dict(r, acc)
        total = Poly.zero(r)
        rng.shuffle(items)
        for e, c in items:
            total = total + Poly.monomial(r, e, c)
        assert total == direct


def test_total_degree():
    r = Ring(101, 2)
    assert P("2*D1^3*D2 + 1", r).degree == 4
    assert Poly.zero(r).degree is NEG_INF
    assert P("D1^2 + D2^5", r).degree == 5


def test_twisted_degree_by_hand():
    r = Ring(101, 1)
    f = (P("1", r), P("D1", r))
    assert twisted_degree(f, (4, 2)) == 4
    assert twisted_degree((Poly.zero(r), Poly.zero(r)), (4, 2)) is NEG_INF
    # zero twist is the plain column degree
    g = (P("D1^3", r), P("D1", r))
    assert twisted_degree(g, (0, 0)) == 3


def test_twisted_degree_rank_mismatch():
    r = Ring(2, 1)
    with pytest.raises(StructuralError):
        twisted_degree((Poly.zero(r),), (0, 0))


def test_homogenize_depends_on_the_degree():
    r = Ring(101, 2)
    f = P("2*D1^3*D2 + 1", r)
    t = r.homogeneous_companion()
    assert f.homogenize(4) == P("2*D1^3*D2 + D0^4", t)
    assert f.homogenize(5) == P("2*D0*D1^3*D2 + D0^5", t)
    assert Poly.zero(r).homogenize(3).is_zero


def test_homogenize_rejects_too_small_degree():
    r = Ring(101, 2)
    with pytest.raises(DomainError):
        P("2*D1^3*D2 + 1", r).homogenize(3)


def test_dehomogenize():
    t = Ring(101, 2, homog=True)
    assert P("2*D0*D1^3*D2 + D0^5", t).dehomogenize() == P("2*D1^3*D2 + 1", Ring(101, 2))
    assert P("D0^4", t).dehomogenize() == P("1", Ring(101, 2))


def test_homogenize_round_trip():
    rng = random.Random(11)
    r = Ring(7, 2)
    for _ in range(40):
        coeffs = {tuple(rng.randrange(3) for _ in range(2)): rng.randrange(7)
                  for _ in range(4)}
        f = Poly.from_dict(r, coeffs)
        d = (int(f.degree) if not f.is_zero else 0) + rng.randrange(3)
        assert f.homogenize(d).dehomogenize() == f


def test_homogenization_bijects_onto_the_degree_slice():
    # For homogeneous h of degree d in T, homogenize(dehomogenize(h), d) = h.
    rng = random.Random(13)
    t = Ring(5, 2, homog=True)
    for _ in range(40):
        d = rng.randrange(1, 5)
        coeffs = {}
        for _ in range(4):
            e1 = rng.randrange(d + 1)
            e2 = rng.randrange(d + 1 - e1)
            coeffs[(d - e1 - e2, e1, e2)] = rng.randrange(5)
        h = Poly.from_dict(t, coeffs)
        if h.is_zero:
            continue
        assert h.is_homogeneous and h.degree == d
        assert h.dehomogenize().homogenize(d) == h


def test_homogeneous_part():
    r = Ring(101, 1)
    assert P("D1^2 - 10", r).homogeneous_part(2) == P("D1^2", r)
    assert P("D1^2 - 5", r).homogeneous_part(1).is_zero
    assert P("D1^2 + D1", r).homogeneous_part(-1).is_zero


def test_set_d0_zero():
    t = Ring(101, 1, homog=True)
    assert P("2*D0*D1^3 + D1^4", t).set_d0_zero() == P("D1^4", t)
    assert P("D0^4", t).set_d0_zero().is_zero
    assert P("D1*D0^0", t).set_d0_zero() == P("D1", t)


def test_low_degree_space_dimensions_match_binomials():
    # dim S_{<=d} = C(d+n, n), checked by monomial enumeration.
    from convres.oracle import monomials_up_to
    for n in (1, 2, 3):
        for d in range(0, 9):
            assert len(monomials_up_to(n, d)) == comb(d + n, n)
        assert len(monomials_up_to(n, -1)) == 0


def test_grevlex_order_in_t_keeps_d0_smallest():
    t = Ring(7, 1, homog=True)
    f = P("D1^2 + D0*D1 + D0^2", t)
    assert [e for e, _ in f.terms] == [(0, 2), (1, 1), (2, 0)]


def test_ring_validation():
    with pytest.raises(DomainError):
        Ring(4, 1)
    with pytest.raises(DomainError):
        Ring(2, 0)
    with pytest.raises(DomainError):
        Ring(1, 1)


def test_arith_rejects_ring_mismatch():
    with pytest.raises(StructuralError):
        P("D1", Ring(2, 1)) + P("D1", Ring(3, 1))
    with pytest.raises(StructuralError):
        P("D1", Ring(2, 1)) * P("D1", Ring(2, 2))


def test_column_degrees_reject_zero_columns():
    from convres import PolyMatrix
    r = Ring(2, 2)
    m = PolyMatrix.from_rows(r, [[P("D1", r), Poly.zero(r)]])
    with pytest.raises(DomainError):
        m.column_degrees()


def test_parse_grammar():
    r = Ring(101, 2)
    assert parse_poly("2*D1^3*D2 + 1", r) == Poly.from_dict(r, {(3, 1): 2, (0, 0): 1})
    assert parse_poly("-D1 - 7", r) == Poly.from_dict(r, {(1, 0): 100, (0, 0): 94})
    assert parse_poly(" 0 ", r).is_zero
    assert parse_poly("102", r) == Poly.const(r, 1)
    assert parse_poly("3*2", r) == Poly.const(r, 6)


def test_parse_errors_carry_positions():
    r = Ring(5, 1)
    with pytest.raises(PolyParseError) as info:
        parse_poly("D1 + D9", r)
    assert info.value.position == 5
    with pytest.raises(PolyParseError):
        parse_poly("D1 +", r)
    with pytest.raises(PolyParseError):
        parse_poly("", r)
    with pytest.raises(PolyParseError):
        parse_poly("x + 1", r)
    with pytest.raises(PolyParseError):
        parse_poly("D0", r)  # D0 only over T


def test_str_parse_round_trip():
    rng = random.Random(3)
    for ring in (Ring(2, 2), Ring(101, 3), Ring(3, 1, homog=True)):
        for _ in range(30):
            coeffs = {tuple(rng.randrange(3) for _ in range(ring.nvars)):
                      rng.randrange(ring.p) for _ in range(4)}
            f = Poly.from_dict(ring, coeffs)
            assert parse_poly(str(f), ring) == f
