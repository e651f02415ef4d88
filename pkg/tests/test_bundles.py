import pytest

from qchar.bundles import H, Monomial, U, VirtualBundle, gw_action, sym3, tensor_expand, twist
from qchar.errors import InvalidUnit
from qchar.gw_arith import GWElement, hyperbolic


def test_expansion_example():
    v = (U(1) - H()) * (U(2) - H()) * U(3)
    assert str(v) == "U1*U2*U3 - U1*U3*H - U2*U3*H + U3*H*H"
    assert v.rank() == 8 - 8 - 8 + 8
    assert v == tensor_expand([U(1) - H(), U(2) - H(), U(3)])


def test_ranks():
    assert U(1).rank() == 2 and H().rank() == 2 and sym3(1).rank() == 4
    assert (sym3(1) * U(2)).rank() == 8
    assert VirtualBundle.unit().rank() == 1
    assert (U(1) * 3 - H()).rank() == 4
    assert (U(1) ** 3).rank() == 8


def test_honest():
    assert (U(1) + H()).is_honest()
    assert not (U(1) - H()).is_honest()


def test_twists():
    assert U(1).twisted(2).twisted(2) == U(1)
    assert U(1).twisted(-4) == U(1).twisted(-1)
    assert twist(3, U(1)) * twist(3, U(2)) == U(1) * U(2)
    assert str(U(1).twisted(-1) + U(1)) == "U1 + <-1>*U1"
    with pytest.raises(InvalidUnit):
        U(1).twisted(0)


def test_gw_action():
    v = U(1) * U(2)
    assert gw_action(hyperbolic(1), v) == v + v.twisted(-1)
    assert v * GWElement.from_diagonal([2, 3]) == v.twisted(2) + v.twisted(3)
    assert v * GWElement.from_int(-2) == -2 * v


def test_bilinearity():
    pool = [U(1), U(2), H(), sym3(1), U(3).twisted(5), VirtualBundle.unit()]
    for a in pool:
        for b in pool:
            for c in pool:
                assert a * (b + c) == a * b + a * c
                assert (a - b) * c == a * c - b * c
                assert a * b == b * a
                assert (a * b).rank() == a.rank() * b.rank()


def test_monomial_sorting():
    assert Monomial((U(2).terms.popitem()[0].factors + U(1).terms.popitem()[0].factors)) == (U(1) * U(2)).items()[0][0]
    assert str(H() * U(2) * U(1)) == "U1*U2*H"
    assert (U(3) * U(1)).max_index() == 3
    assert VirtualBundle.unit().max_index() == 0


def test_zero_and_json():
    assert not (U(1) - U(1))
    assert str(U(1) - U(1)) == "0"
    data = (U(1) - H().twisted(-1) * 2).to_json()
    assert {"factors": ["H"], "twist": -1, "n": -2} in data
