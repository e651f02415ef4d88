import random

import pytest

from qchar.bundles import H, U, VirtualBundle, sym3
from qchar.errors import ExpressionSyntaxError
from qchar.expr import parse_bundle, parse_expression, parse_form
from qchar.gw_arith import Fp, GWElement, gw_equal, gw_from_diagonal, hyperbolic


def test_bundle_examples():
    assert parse_bundle("(U1-H)*(U2-H)*U3") == (U(1) - H()) * (U(2) - H()) * U(3)
    assert parse_bundle("Sym3(U2) * H") == sym3(2) * H()
    assert parse_bundle("U 4") == U(4)
    assert parse_bundle("<-1>*U1 + 2U2") == U(1).twisted(-1) + U(2) * 2
    assert parse_bundle("3") == VirtualBundle.unit() * 3
    assert parse_bundle("-U1") == -U(1)


def test_form_examples():
    assert gw_equal(parse_form("<-2,-6>"), gw_from_diagonal([-2, -6]))
    assert gw_equal(parse_form("8<-1> + 16h"), GWElement.unit(-1) * 8 + hyperbolic(16))
    assert gw_equal(parse_form("<-1>*8"), GWElement.unit(-1) * 8)
    assert gw_equal(parse_form("-3 + <3>"), GWElement({1: -3, 3: 1}))
    assert parse_form("<2>", Fp(7)).backend == Fp(7)
    assert isinstance(parse_expression("7"), GWElement)


@pytest.mark.parametrize(
    "text, offset",
    [("U1*", 3), ("<1> + U1", 4), ("U0", 0), ("Sym3(H)", 5), ("<0>", 0), ("Q", 0), ("(U1", 3), ("<1,>", 3), ("U1 )", 3)],
)
def test_syntax_errors(text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.offset == offset


def test_kind_mismatch():
    with pytest.raises(ExpressionSyntaxError):
        parse_bundle("<2>")
    with pytest.raises(ExpressionSyntaxError):
        parse_form("U1")


def test_round_trip():
    rng = random.Random(4)
    pool = [U(1), U(2), U(3), H(), sym3(1), U(2).twisted(-1), U(1).twisted(6)]
    for _ in range(100):
        v = VirtualBundle()
        for _ in range(rng.randint(1, 4)):
            m = VirtualBundle.unit()
            for _ in range(rng.randint(0, 3)):
                m = m * rng.choice(pool)
            v = v + m * rng.choice([1, 2, -1, -3])
        assert parse_bundle(str(v)) == v
    for _ in range(100):
        a = gw_from_diagonal([rng.choice([1, -1, 2, -3, 5, 6, -10]) for _ in range(rng.randint(0, 5))])
        a = a - hyperbolic(rng.randint(0, 3))
        assert gw_equal(parse_form(str(a)), a), str(a)
        assert gw_equal(parse_form(a.to_expr()), a)
