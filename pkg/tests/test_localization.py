import json
from fractions import Fraction
from math import factorial

import pytest

from qchar.errors import NoOrderings, NotInvertible
from qchar.gw_arith import Fp, GWElement, hyperbolic
from qchar.localization import LocalizedGW, localize, normalization_factor
from qchar.operations import psi


def test_localize_examples():
    x = localize(psi(1))
    assert x.rank == 360 and list(x.sigs.values()) == [-24]
    assert str(x) == "(rank 360; sig P0: -24)"
    assert not localize(GWElement.unit(2) - GWElement.unit(1))
    assert localize(hyperbolic(3)) == LocalizedGW(6, {next(iter(x.sigs)): 0})
    with pytest.raises(NoOrderings):
        localize(GWElement.unit(2, Fp(5)))


def test_ring_operations():
    a, b = localize(psi(1)), localize(psi(3))
    assert (a * b) / b == a
    assert a * a.invert() == LocalizedGW.from_int(1)
    assert (a - a) == LocalizedGW.from_int(0)
    assert localize(psi(1) * psi(3)) == a * b
    assert localize(psi(1) + psi(3)) == a + b
    with pytest.raises(NotInvertible):
        localize(hyperbolic(2)).invert()


def test_normalization():
    f = normalization_factor(3)
    assert f == localize(psi(1)).invert()
    assert f.to_json() == {"rank": "1/360", "sigs": {"P0": "-1/24"}}
    for n in (3, 5, 7, 9, 11):
        g = normalization_factor(n)
        assert g.rank == Fraction(2, factorial(2 * n))
        assert g.is_invertible()


def test_json_round_trip():
    a = localize(psi(5)).invert()
    back = LocalizedGW.from_json(json.loads(json.dumps(a.to_json())))
    assert back == a and hash(back) == hash(a)
    assert a.to_latex().count(r"\frac") >= 1
