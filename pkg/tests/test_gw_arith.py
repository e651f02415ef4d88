import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint, legendre_symbol

from qchar.errors import BackendMismatch, InvalidPrime, InvalidUnit, NoOrderings
from qchar.gw_arith import (
    Fp,
    GWElement,
    Q,
    WittElement,
    WittFp,
    gw_equal,
    gw_from_diagonal,
    hyperbolic,
    invariants,
    parse_backend,
    squarefree_part,
    witt_equal,
)

units = st.integers(-60, 60).filter(bool)
forms = st.lists(units, min_size=0, max_size=4).map(gw_from_diagonal)


# --- independent oracle: Hasse-Minkowski classification of diagonal forms -------


def _split(a, p):
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    return k, a


def hilbert(a, b, p):
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2))
    return s * legendre_symbol(u % p, p) ** beta * legendre_symbol(v % p, p) ** alpha


def isometric(xs, ys):
    """Classical test for nondegenerate diagonal forms of equal dimension over Q."""
    if len(xs) != len(ys):
        return False
    if sum(x < 0 for x in xs) != sum(y < 0 for y in ys):
        return False
    dx, dy = 1, 1
    for x in xs:
        dx *= x
    for y in ys:
        dy *= y
    if squarefree_part(dx) != squarefree_part(dy):
        return False
    primes = {2}
    for z in list(xs) + list(ys):
        primes |= set(factorint(abs(z)))
    for p in primes:
        hx = 1
        for a, b in combinations(xs, 2):
            hx *= hilbert(a, b, p)
        hy = 1
        for a, b in combinations(ys, 2):
            hy *= hilbert(a, b, p)
        if hx != hy:
            return False
    return True


def test_gw_equal_matches_hasse_minkowski():
    rng = random.Random(11)
    pool = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, 10, -10, 14, 15, -15, 21, 30]
    hits = 0
    for _ in range(400):
        n = rng.randint(1, 4)
        xs = [rng.choice(pool) for _ in range(n)]
        ys = [rng.choice(pool) for _ in range(n)]
        if rng.random() < 0.3 and n >= 2 and xs[0] + xs[1]:
            # <a, b> = <a + b, ab(a + b)>
            a, b = xs[0], xs[1]
            ys = [(a + b) * rng.randint(1, 4) ** 2, a * b * (a + b)] + xs[2:]
            rng.shuffle(ys)
        want = isometric(xs, ys)
        hits += want
        assert gw_equal(gw_from_diagonal(xs), gw_from_diagonal(ys)) == want, (xs, ys)
    assert hits > 10  # the oracle saw both answers


# --- examples -------------------------------------------------------------------


def test_diagonal_examples():
    h = gw_from_diagonal([1, -1])
    assert h.rank() == 2 and gw_equal(h, hyperbolic(1))
    assert gw_from_diagonal([4]).terms == {1: 1}
    a = gw_from_diagonal([-2, -6])
    assert witt_equal(a, GWElement({1: -3, 3: 1}))
    assert witt_equal(a, GWElement({-1: 3, 3: 1}))
    assert gw_equal(a, gw_from_diagonal([-8, -24 * 9]))
    assert not gw_equal(a, GWElement({-1: 1, 3: 1}))


def test_zero_unit_rejected():
    with pytest.raises(InvalidUnit):
        gw_from_diagonal([1, 0])
    with pytest.raises(InvalidUnit):
        gw_from_diagonal([7], Fp(7))


def test_ring_examples():
    three = GWElement.unit(3)
    assert (three * three).terms == {1: 1}
    for a in (2, -5, 7, 30):
        assert gw_equal(hyperbolic(1) * GWElement.unit(a), hyperbolic(1))
    assert gw_equal(three * 4, GWElement.from_int(4))
    assert not gw_equal(three * 2, GWElement.from_int(2))


def test_backend_mismatch():
    with pytest.raises(BackendMismatch):
        GWElement.unit(2) + GWElement.unit(2, Fp(5))
    with pytest.raises(BackendMismatch):
        gw_equal(GWElement.unit(2), GWElement.unit(2, Fp(7)))


def test_invariants_examples():
    assert GWElement.unit(-1).signature() == -1
    assert GWElement.unit(3).residue(3) == WittFp.one(3)
    assert not GWElement.unit(1).residue(3)
    psi6 = GWElement.unit(-1) * 24 + hyperbolic(168)
    assert psi6.rank() == 360 == 6 * 5 * 4 * 3
    inv = invariants(GWElement.from_diagonal([3, -6]))
    assert inv.rank == 2 and set(inv.residues) == {2, 3}
    with pytest.raises(InvalidPrime):
        GWElement.unit(3).residue(4)
    with pytest.raises(NoOrderings):
        GWElement.unit(3, Fp(5)).signature()


def test_witt_equal_examples():
    a = gw_from_diagonal([-2, -6])
    b = GWElement({-1: 3, 3: 1})
    for backend in (Q, Fp(5), Fp(7)):
        assert witt_equal(gw_from_diagonal([-2, -6], backend), GWElement({-1: 3, 3: 1}, backend))
    assert witt_equal(a, b)
    assert not witt_equal(GWElement.unit(1), GWElement.unit(2))
    assert GWElement.unit(1).residue(2) == WittFp.zero(2)
    assert (GWElement.unit(1) - GWElement.unit(2)).residue(2) == WittFp.one(2)
    assert gw_equal(hyperbolic(1) * hyperbolic(1), hyperbolic(2))


def test_hyperbolic():
    assert hyperbolic(1).rank() == 2 and hyperbolic(1).signature() == 0
    assert not hyperbolic(0)
    assert hyperbolic(0).rank() == 0
    assert str(hyperbolic(16)) == "16h"


def test_backend_parsing():
    assert parse_backend("q") is Q or parse_backend("q") == Q
    assert parse_backend("fp:13") == Fp(13)
    for bad in ("fp:3", "fp:2", "fp:9", "fp:x", "r"):
        with pytest.raises(InvalidPrime):
            parse_backend(bad)


def test_square_class_of_fractions():
    assert Q.square_class(Fraction(3, 4)) == 3
    assert Q.square_class(Fraction(-8, 27)) == -6
    assert Fp(5).square_class(4) == 1
    assert Fp(5).square_class(2) == 2


def test_display_forms():
    assert str(WittElement({1: -3, 3: 1})) == "-3 + <3>"
    assert str(gw_from_diagonal([-2, -6]).witt()) == "-3 + <3>"
    assert str(GWElement.unit(-1) * 8 + hyperbolic(16)) == "8<-1> + 16h"
    assert str(GWElement.unit(-1) * 2 + hyperbolic(2)) == "2<-1> + 2h"
    assert str(GWElement({})) == "0"


def test_json_round_trip():
    a = gw_from_diagonal([-2, -6, 5, 5, 3])
    data = json.loads(json.dumps(a.to_json()))
    assert data["backend"] == "q"
    assert gw_equal(GWElement.from_json(data), a)


def test_divide_odd():
    x = WittElement({1: -6, 3: 1, 5: 2})
    for m in (1, 3, 5, 7):
        y = (x * m).divide_odd(m)
        assert y == x
    for p in (5, 7, 13):
        z = GWElement.from_diagonal([2, 3], Fp(p)).witt()
        assert (z * 3).divide_odd(3) == z


# --- properties -----------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.integers(-200, 200).filter(bool), st.integers(1, 30), st.integers(1, 30))
def test_square_class_canonical(a, num, den):
    c = Fraction(num, den)
    assert gw_from_diagonal([a * c * c]).terms == gw_from_diagonal([a]).terms


@settings(max_examples=100, deadline=None)
@given(forms, forms, forms)
def test_equality_is_a_congruence(x, y, z):
    y2 = y + hyperbolic(1) * GWElement.unit(5) - hyperbolic(1)  # same element, other words
    assert gw_equal(y, y2)
    assert gw_equal(x + y, x + y2)
    assert gw_equal(x * y + z, x * y2 + z)


@settings(max_examples=100, deadline=None)
@given(forms, forms)
def test_rank_and_signature_are_homomorphisms(x, y):
    assert (x + y).rank() == x.rank() + y.rank()
    assert (x * y).rank() == x.rank() * y.rank()
    assert (x * y).signature() == x.signature() * y.signature()
    assert (x - y).signature() == x.signature() - y.signature()


@settings(max_examples=100, deadline=None)
@given(forms, forms, st.sampled_from([2, 3, 5, 7]), st.integers(1, 40))
def test_residues(x, y, p, u):
    assert (x + y).residue(p) == x.residue(p) + y.residue(p)
    if u % p:
        assert (GWElement.unit(u) * x).residue(p) == WittFp.from_unit(p, u) * x.residue(p)


@settings(max_examples=100, deadline=None)
@given(forms)
def test_h_times_x(x):
    assert gw_equal(hyperbolic(1) * x, hyperbolic(x.rank()))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 17]), st.lists(st.integers(1, 100), max_size=5))
def test_four_torsion_fp(p, us):
    B = Fp(p)
    x = GWElement.from_diagonal([u for u in us if u % p], B)
    assert not (x.witt() * 4)


def test_wittfp_ring_axioms_exhaustive():
    for p in (5, 7, 13, 11):
        elems = {WittFp.zero(p), WittFp.one(p)}
        for u in range(1, p):
            elems.add(WittFp.from_unit(p, u))
        grew = True
        while grew:
            new = {a + b for a in elems for b in elems} | {a * b for a in elems for b in elems}
            grew = not new <= elems
            elems |= new
        assert len(elems) == 4
        for a in elems:
            assert a * 4 == WittFp.zero(p)
            for b in elems:
                assert a * b == b * a
                for c in elems:
                    assert (a + b) * c == a * c + b * c
                    assert (a * b) * c == a * (b * c)


def test_fp_equality_is_rank_and_discriminant():
    rng = random.Random(3)
    for p in (5, 7, 11):
        B = Fp(p)
        for _ in range(50):
            xs = [rng.randint(1, p - 1) for _ in range(rng.randint(1, 4))]
            ys = [rng.randint(1, p - 1) for _ in range(len(xs))]
            dx = dy = 1
            for x in xs:
                dx *= x
            for y in ys:
                dy *= y
            same_disc = legendre_symbol(dx % p, p) == legendre_symbol(dy % p, p)
            assert gw_equal(gw_from_diagonal(xs, B), gw_from_diagonal(ys, B)) == same_disc
