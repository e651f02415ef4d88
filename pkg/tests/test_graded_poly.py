import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qchar.errors import AmbientMismatch, TruncationOverflow, UnknownVariable
from qchar.graded_poly import QQ, ZZ, AmbientSpec, TruncatedPoly, from_json
from qchar.gw_arith import GWElement, gw_equal, gw_ring, hyperbolic

AMB = AmbientSpec.from_string("HP(3)*HP(2)*HP(4)")
BIG = AmbientSpec.from_string("HP(inf)^3")


def polys(amb=AMB):
    exps = st.tuples(*[st.integers(0, 4)] * 3)
    return st.dictionaries(exps, st.integers(-5, 5), max_size=6).map(
        lambda d: TruncatedPoly(amb, {e: c for e, c in d.items() if amb.fits(e)})
    )


def test_ambient_parsing():
    assert AmbientSpec.from_string("HP(5)^3").bounds == (5, 5, 5)
    assert AmbientSpec.from_string("HP(1)*HP(1)*HP(8)").bounds == (1, 1, 8)
    assert AmbientSpec.from_string("HP(inf)^2").bounds == (None, None)
    assert AmbientSpec.from_string("HP(1)*HP(1)*HP(8)").names == ("u1", "u2", "u3")
    assert AmbientSpec.from_string("HP(2)^2").total_degree() == 4
    assert BIG.total_degree() is None
    for bad in ("", "P(3)", "HP(0)", "HP(x)"):
        with pytest.raises(ValueError):
            AmbientSpec.from_string(bad)
    with pytest.raises(UnknownVariable):
        AMB.index("v")


def test_truncation_drops_high_powers():
    a = AmbientSpec.hp(2)
    u = TruncatedPoly.variable(a, "u1")
    assert not u ** 3
    assert (1 + u) ** 5 == 1 + 5 * u + 10 * u * u
    with pytest.raises(UnknownVariable):
        TruncatedPoly.variable(a, "u2")


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedPoly.zero(AMB)
    assert a * 1 == a


@settings(max_examples=60, deadline=None)
@given(polys(BIG), polys(BIG))
def test_truncation_is_a_ring_map(a, b):
    small = AmbientSpec.hp(2, 3, 1)

    def cut(p):
        return TruncatedPoly(small, {e: c for e, c in p.terms.items() if small.fits(e)})

    assert cut(a * b) == cut(a) * cut(b)
    assert cut(a + b) == cut(a) + cut(b)


@settings(max_examples=60, deadline=None)
@given(polys(BIG), polys(BIG))
def test_specialization_is_a_ring_map(a, b):
    target = AmbientSpec.hp(None, None)
    f = {"u1": "u1", "u2": "u1", "u3": 0}
    assert (a * b).specialize(f, target) == a.specialize(f, target) * b.specialize(f, target)
    assert (a - b).specialize(f, target) == a.specialize(f, target) - b.specialize(f, target)


def test_specialize_examples():
    a = AmbientSpec.hp(2, 2)
    u1, u2 = TruncatedPoly.variable(a, "u1"), TruncatedPoly.variable(a, "u2")
    p = u1 * u2 + u2 * u2 + u1
    assert p.specialize({"u2": "u1"}) == 2 * u1 * u1 + u1
    assert (p * u1).specialize({"u2": "u1"}) == u1 * u1
    assert p.specialize({"u2": 0}) == u1
    one = AmbientSpec.hp(3)
    v = TruncatedPoly.variable(one, "u1")
    assert p.specialize({"u2": "u1"}, one) == 2 * v * v + v
    with pytest.raises(UnknownVariable):
        p.specialize({"w": 0})


def test_degree_and_parts():
    u1 = TruncatedPoly.variable(AMB, "u1")
    u3 = TruncatedPoly.variable(AMB, "u3")
    p = 3 + u1 - 2 * u1 * u3 ** 2
    assert p.degree() == 3
    assert p.homogeneous_part(1) == u1
    assert p.coefficient((1, 0, 2)) == -2
    assert p.coefficient((2, 0, 0)) == 0


def test_ambient_mismatch():
    other = AmbientSpec.hp(3, 2, 5)
    with pytest.raises(AmbientMismatch):
        TruncatedPoly.one(AMB) + TruncatedPoly.one(other)
    with pytest.raises(AmbientMismatch):
        TruncatedPoly.one(AMB).retruncate(AmbientSpec.hp(1, prefix="v"))
    with pytest.raises(TruncationOverflow):
        (TruncatedPoly.variable(AMB, "u3") ** 4).check_fits(AmbientSpec.hp(3, 3, 3))


def test_rendering():
    a = AmbientSpec.hp(2, 2)
    u1, u2 = TruncatedPoly.variable(a, "u1"), TruncatedPoly.variable(a, "u2")
    p = -2 * u1 * u1 + u1 * u2 - 3
    assert str(p) == "-2*u1^2 + u1*u2 - 3"
    assert p.to_latex() == "-2u_{1}^{2} + u_{1}u_{2} - 3"
    assert str(TruncatedPoly.zero(a)) == "0"


def test_gw_coefficients_render():
    a = AmbientSpec.hp(3)
    R = gw_ring()
    u = TruncatedPoly.variable(a, "u1", R)
    p = u * (2 * GWElement.unit(-1) + hyperbolic(2)) - u * u * hyperbolic(1)
    text = str(p)
    assert "2<-1> + 2h" in text and text.startswith("-h*u1^2")


def test_json_round_trip():
    a = AmbientSpec.hp(3, None)
    u1, u2 = TruncatedPoly.variable(a, "u1"), TruncatedPoly.variable(a, "u2")
    p = (1 - u1 + 4 * u2) ** 3
    data = json.loads(json.dumps(p.to_json()))
    assert from_json(data) == p
    R = gw_ring()
    q = p.map_coefficients(lambda c: GWElement.from_int(c), R) * GWElement.unit(-1)
    back = from_json(json.loads(json.dumps(q.to_json())), R, GWElement.from_json)
    assert all(gw_equal(back.coefficient(e), c) for e, c in q.terms.items())


def test_rational_ring():
    from fractions import Fraction

    a = AmbientSpec.hp(2)
    u = TruncatedPoly.variable(a, "u1", QQ)
    p = (u * Fraction(1, 2) + 1) ** 2
    assert p.coefficient((2,)) == Fraction(1, 4)
    assert ZZ.coerce(3) == 3
