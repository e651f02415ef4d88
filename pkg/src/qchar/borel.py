"""Borel polynomials of virtual symplectic bundles in three channels.

Chow: formal Chern roots, ``b_i = (-1)^i c_{2i}``.
Witt: a small table of rules per tensor monomial, plus the classes of
``Sym3 U`` and of ``U1 (x) U2 (x) U3`` obtained by solving for unknown
coefficients against already-known restrictions.
GW: the unique element with prescribed rank (Chow) and Witt image.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement

from .bundles import BasicBundle, Monomial, VirtualBundle
from .errors import (
    AmbientMismatch,
    DerivationInconsistent,
    ParityMismatch,
    TruncationOverflow,
    UnsupportedBundle,
)
from .graded_poly import ZZ, AmbientSpec, CoefficientRing, TruncatedPoly
from .gw_arith import Q, Backend, GWElement, WittElement, gw_ring, hyperbolic, witt_ring

CHANNELS = ("chow", "witt", "gw")


class BorelPolynomial:
    """``b_t = 1 + b_1 t + b_2 t^2 + ...`` known exactly through ``t^precision``."""

    __slots__ = ("ambient", "ring", "precision", "_coeffs")

    def __init__(self, ambient: AmbientSpec, ring: CoefficientRing, coeffs=None, precision: int = 0):
        self.ambient = ambient
        self.ring = ring
        self.precision = precision
        self._coeffs = {}
        for i, p in (coeffs or {}).items():
            if i < 1 or i > precision:
                continue
            if p.ambient != ambient:
                raise AmbientMismatch(f"class b_{i} lives in {p.ambient}, expected {ambient}")
            if p:
                self._coeffs[i] = p

    @classmethod
    def one(cls, ambient, ring, precision):
        return cls(ambient, ring, {}, precision)

    def __getitem__(self, i: int) -> TruncatedPoly:
        if i == 0:
            return TruncatedPoly.one(self.ambient, self.ring)
        if i > self.precision:
            raise TruncationOverflow(f"b_{i} is beyond the computed precision {self.precision}")
        return self._coeffs.get(i, TruncatedPoly.zero(self.ambient, self.ring))

    def classes(self) -> list[TruncatedPoly]:
        """[b_1, ..., b_precision]."""
        return [self[i] for i in range(1, self.precision + 1)]

    def degree(self) -> int:
        return max(self._coeffs, default=0)

    def _full(self) -> list[TruncatedPoly]:
        return [self[i] for i in range(self.precision + 1)]

    def _check(self, other: BorelPolynomial):
        if other.ambient != self.ambient or other.ring.name != self.ring.name:
            raise AmbientMismatch("Borel polynomials over different rings")

    def __mul__(self, other: BorelPolynomial) -> BorelPolynomial:
        self._check(other)
        prec = min(self.precision, other.precision)
        a, b = self._full()[: prec + 1], other._full()[: prec + 1]
        out = {}
        for k in range(1, prec + 1):
            acc = TruncatedPoly.zero(self.ambient, self.ring)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out[k] = acc
        return BorelPolynomial(self.ambient, self.ring, out, prec)

    def inverse(self) -> BorelPolynomial:
        """Formal inverse of a series with constant term 1."""
        b = self._full()
        inv = [TruncatedPoly.one(self.ambient, self.ring)]
        for k in range(1, self.precision + 1):
            acc = TruncatedPoly.zero(self.ambient, self.ring)
            for i in range(1, k + 1):
                if b[i] and inv[k - i]:
                    acc = acc - b[i] * inv[k - i]
            inv.append(acc)
        return BorelPolynomial(self.ambient, self.ring, dict(enumerate(inv)), self.precision)

    def __pow__(self, k: int) -> BorelPolynomial:
        base = self if k >= 0 else self.inverse()
        out = BorelPolynomial.one(self.ambient, self.ring, self.precision)
        for _ in range(abs(k)):
            out = out * base
        return out

    def truncate(self, precision: int) -> BorelPolynomial:
        return BorelPolynomial(self.ambient, self.ring, self._coeffs, min(precision, self.precision))

    def map(self, f, ring: CoefficientRing) -> BorelPolynomial:
        return BorelPolynomial(
            self.ambient, ring, {i: p.map_coefficients(f, ring) for i, p in self._coeffs.items()}, self.precision
        )

    def specialize(self, assignment, target: AmbientSpec | None = None) -> BorelPolynomial:
        target = target or self.ambient
        return BorelPolynomial(
            target, self.ring, {i: p.specialize(assignment, target) for i, p in self._coeffs.items()}, self.precision
        )

    def twisted(self, scale) -> BorelPolynomial:
        """Multiply b_i by scale(i)."""
        return BorelPolynomial(
            self.ambient, self.ring, {i: p.scale(scale(i)) for i, p in self._coeffs.items()}, self.precision
        )

    def __eq__(self, other):
        if not isinstance(other, BorelPolynomial):
            return NotImplemented
        if other.ambient != self.ambient or other.precision != self.precision:
            return False
        return all(self[i] == other[i] for i in range(1, self.precision + 1))

    __hash__ = None

    def __str__(self) -> str:
        lines = [f"b{i} = {self[i]}" for i in range(1, self.precision + 1)]
        return "\n".join(lines) if lines else "b_t = 1"

    def to_latex(self) -> str:
        return "\n".join(f"b_{{{i}}} = {self[i].to_latex()}" for i in range(1, self.precision + 1))

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "ring": self.ring.name,
            "precision": self.precision,
            "classes": {str(i): self[i].to_json()["terms"] for i in range(1, self.precision + 1)},
        }


# --- Chow channel --------------------------------------------------------------


class RootRing:
    """Polynomials in formal roots xi_i with xi_i^2 = u_i, kept linear in each xi.

    Elements are dicts: bitmask of xi's present -> TruncatedPoly over ZZ.
    """

    def __init__(self, ambient: AmbientSpec):
        self.ambient = ambient
        self._u = [TruncatedPoly.variable(ambient, n) for n in ambient.names]

    def zero(self) -> dict:
        return {}

    def one(self) -> dict:
        return {0: TruncatedPoly.one(self.ambient)}

    def root(self, linear: dict[int, int]) -> dict:
        """sum_i k_i xi_i for a mapping factor position -> k_i."""
        return {1 << i: TruncatedPoly.constant(self.ambient, k) for i, k in linear.items() if k}

    def add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for m, p in b.items():
            out[m] = out[m] + p if m in out else p
        return {m: p for m, p in out.items() if p}

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for m1, p1 in a.items():
            for m2, p2 in b.items():
                p = p1 * p2
                common = m1 & m2
                i = 0
                while common:
                    if common & 1:
                        p = p * self._u[i]
                    common >>= 1
                    i += 1
                if not p:
                    continue
                m = m1 ^ m2
                out[m] = out[m] + p if m in out else p
        return {m: p for m, p in out.items() if p}

    def even_part(self, a: dict) -> TruncatedPoly:
        """The xi-free part; raise if anything odd in the xi's survives."""
        for m, p in a.items():
            if m and p:
                raise DerivationInconsistent("odd root monomial survived in a symmetric expression")
        return a.get(0, TruncatedPoly.zero(self.ambient))


def _factor_roots(f: BasicBundle, ambient: AmbientSpec) -> list[dict[int, int]]:
    if f.kind == "H":
        return [{}, {}]
    i = f.index - 1
    if i >= len(ambient):
        raise AmbientMismatch(f"{f} needs at least {f.index} factors, ambient is {ambient}")
    if f.kind == "U":
        return [{i: 1}, {i: -1}]
    return [{i: 3}, {i: 1}, {i: -1}, {i: -3}]


def monomial_roots(m: Monomial, ambient: AmbientSpec) -> list[dict[int, int]]:
    """Chern roots of a tensor monomial as linear forms in the xi's."""
    roots: list[dict[int, int]] = [{}]
    for f in m.factors:
        new = []
        for r in roots:
            for s in _factor_roots(f, ambient):
                t = dict(r)
                for i, k in s.items():
                    t[i] = t.get(i, 0) + k
                new.append(t)
        roots = new
    return roots


def chern_classes(m: Monomial, ambient: AmbientSpec, upto: int) -> list[dict]:
    """Total Chern class c_0..c_upto of a monomial, in the root ring."""
    R = RootRing(ambient)
    c = [R.one()] + [R.zero() for _ in range(upto)]
    for r in monomial_roots(m, ambient):
        rr = R.root(r)
        if not rr:
            continue
        for j in range(upto, 0, -1):
            if c[j - 1]:
                c[j] = R.add(c[j], R.mul(rr, c[j - 1]))
    return c


@lru_cache(maxsize=512)
def _chow_monomial(m: Monomial, ambient: AmbientSpec, precision: int) -> BorelPolynomial:
    R = RootRing(ambient)
    c = chern_classes(m, ambient, 2 * precision + 1)
    coeffs = {}
    for j, cj in enumerate(c):
        if j % 2:
            if cj:
                raise DerivationInconsistent(f"odd Chern class c_{j} of {m} is nonzero")
            continue
        if j:
            i = j // 2
            coeffs[i] = R.even_part(cj) * (-1) ** i
    return BorelPolynomial(ambient, ZZ, coeffs, precision)


def _resolve_precision(v: VirtualBundle, ambient: AmbientSpec, max_degree: int | None) -> int:
    total = ambient.total_degree()
    if max_degree is None:
        if v.is_honest():
            r = v.rank() // 2
            return r if total is None else min(r, total)
        if total is None:
            raise TruncationOverflow("a virtual bundle over HP(inf) needs an explicit max_degree")
        return total
    if max_degree < 0:
        raise TruncationOverflow("max_degree must be nonnegative")
    if total is not None and max_degree > total:
        raise TruncationOverflow(f"degree {max_degree} exceeds the top degree {total} of {ambient}")
    return max_degree


def _check_indices(v: VirtualBundle, ambient: AmbientSpec):
    if v.max_index() > len(ambient):
        raise AmbientMismatch(f"bundle uses U{v.max_index()} but ambient {ambient} has {len(ambient)} factors")


def _assemble(v: VirtualBundle, ambient, ring, precision, per_monomial) -> BorelPolynomial:
    out = BorelPolynomial.one(ambient, ring, precision)
    for m, n in v.items():
        out = out * per_monomial(m) ** n
    return out


def chow_borel_poly(v: VirtualBundle, ambient: AmbientSpec, max_degree: int | None = None) -> BorelPolynomial:
    """Chow-valued Borel polynomial via formal Chern roots."""
    _check_indices(v, ambient)
    prec = _resolve_precision(v, ambient, max_degree)
    return _assemble(v, ambient, ZZ, prec, lambda m: _chow_monomial(m, ambient, prec))


# --- Witt channel ----------------------------------------------------------------


def _w(backend: Backend, n: int = 0) -> WittElement:
    return WittElement.from_int(n, backend)


def _wclass(backend: Backend, d) -> WittElement:
    return WittElement.unit(d, backend)


@lru_cache(maxsize=None)
def _one_var(backend: Backend) -> AmbientSpec:
    return AmbientSpec((("u", None),))


@lru_cache(maxsize=None)
def derive_sym3_classes(backend: Backend = Q) -> tuple[WittElement, WittElement]:
    """Coefficients (s1, s2) with b_t(Sym3 U) = 1 + s1 u t + s2 u^2 t^2 in W.

    Solved from U^(x)3 = <2>U + <6>U + Sym3 U, whose first two classes come
    from the diagonal restriction of the threefold classes.
    """
    _, low = _threefold_low(backend)
    e1, e2 = low
    two, six = _wclass(backend, 2), _wclass(backend, 6)
    s1 = e1 - (two + six)
    s2 = e2 - two * six - s1 * (two + six)
    # the same root sum as <-2> + <-6>
    if not s1 == _wclass(backend, -2) + _wclass(backend, -6):
        raise DerivationInconsistent("first Sym3 class disagrees with <-2> + <-6>")
    expect1 = _w(backend, -3) + _wclass(backend, 3)
    expect2 = _w(backend, -4) + _wclass(backend, 3)
    if not (s1 == expect1 and s2 == expect2):
        raise DerivationInconsistent(f"Sym3 classes came out as {s1}, {s2}")
    return expect1, expect2


@lru_cache(maxsize=None)
def cube_classes(backend: Backend = Q) -> tuple[WittElement, ...]:
    """Coefficients of u^k, k = 1..4, in b_t(U (x) U (x) U), from the decomposition."""
    s1, s2 = derive_sym3_classes(backend)
    two, six = _wclass(backend, 2), _wclass(backend, 6)
    zero, one = _w(backend), _w(backend, 1)
    factors = [[one, two], [one, six], [one, s1, s2]]
    prod = [one]
    for f in factors:
        new = [zero] * (len(prod) + len(f) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(f):
                new[i + j] = new[i + j] + a * b
        prod = new
    return tuple(x.simplified() for x in prod[1:5])


def _partitions(k: int, parts: int = 3) -> list[tuple[int, ...]]:
    out = []

    def rec(rem, maxp, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        if len(acc) == parts:
            return
        for p in range(min(rem, maxp), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(k, k, [])
    return out


def _orbit(lam: tuple[int, ...]) -> set[tuple[int, int, int]]:
    from itertools import permutations

    padded = tuple(lam) + (0,) * (3 - len(lam))
    return set(permutations(padded))


def _universal3() -> AmbientSpec:
    return AmbientSpec.hp(None, None, None)


def _restriction_data(backend: Backend):
    """Known Witt classes of U1(x)H(x)H and U1(x)U2(x)H on the universal ambient."""
    amb = _universal3()
    one_factor = _witt_monomial(Monomial((BasicBundle("U", 1), BasicBundle("H"), BasicBundle("H"))), amb, 4, backend)
    two_factor = _witt_monomial(
        Monomial((BasicBundle("U", 1), BasicBundle("U", 2), BasicBundle("H"))), amb, 4, backend
    )
    return one_factor, two_factor


def _solve_degree(k: int, backend: Backend, diag_value: WittElement | None):
    """Orbit coefficients of b_k for U1(x)U2(x)U3; 3-part orbits need ``diag_value``."""
    one_factor, two_factor = _restriction_data(backend)
    coeffs: dict[tuple, WittElement] = {}
    for lam in _partitions(k):
        e = tuple(lam) + (0,) * (3 - len(lam))
        if len(lam) == 1:
            coeffs[lam] = one_factor[k].coefficient(e)
        elif len(lam) == 2:
            c = two_factor[k].coefficient(e)
            if not (c == two_factor[k].coefficient((e[1], e[0], 0))):
                raise DerivationInconsistent(f"two-factor restriction is not symmetric in degree {k}")
            if not (two_factor[k].coefficient((k, 0, 0)) == one_factor[k].coefficient((k, 0, 0))):
                raise DerivationInconsistent(f"one- and two-factor restrictions disagree in degree {k}")
            coeffs[lam] = c
    unknown = [lam for lam in _partitions(k) if len(lam) == 3]
    known_diag = WittElement.from_int(0, backend)
    for lam, c in coeffs.items():
        known_diag = known_diag + c * len(_orbit(lam))
    if len(unknown) > 1:
        raise DerivationInconsistent(f"degree {k}: {len(unknown)} unknowns, one diagonal equation")
    if unknown:
        if diag_value is None:
            raise DerivationInconsistent(f"degree {k} needs the diagonal value")
        lam = unknown[0]
        coeffs[lam] = (diag_value - known_diag).divide_odd(len(_orbit(lam)))
    elif diag_value is not None and not (known_diag == diag_value):
        raise DerivationInconsistent(f"diagonal check failed in degree {k}")
    return coeffs, known_diag if not unknown else diag_value


def _orbit_poly(coeffs, k, amb, backend) -> TruncatedPoly:
    terms = {}
    for lam, c in coeffs.items():
        for e in _orbit(lam):
            terms[e] = c.simplified()
    return TruncatedPoly(amb, terms, witt_ring(backend))


@lru_cache(maxsize=None)
def _threefold_low(backend: Backend):
    """Degree 1 and 2 threefold classes, plus their diagonal values."""
    amb = _universal3()
    polys, diags = {}, []
    for k in (1, 2):
        coeffs, diag = _solve_degree(k, backend, None)
        polys[k] = _orbit_poly(coeffs, k, amb, backend)
        diags.append(diag)
    return polys, tuple(diags)


@lru_cache(maxsize=None)
def _threefold_universal(backend: Backend) -> BorelPolynomial:
    amb = _universal3()
    polys, _ = _threefold_low(backend)
    polys = dict(polys)
    cube = cube_classes(backend)
    for k in (3, 4):
        coeffs, _ = _solve_degree(k, backend, cube[k - 1])
        polys[k] = _orbit_poly(coeffs, k, amb, backend)
    b = BorelPolynomial(amb, witt_ring(backend), polys, 4)
    _verify_threefold(b, backend)
    return b


def _verify_threefold(b: BorelPolynomial, backend: Backend) -> None:
    one_factor, two_factor = _restriction_data(backend)
    amb = b.ambient
    if b.specialize({"u2": 0, "u3": 0}, amb) != one_factor:
        raise DerivationInconsistent("threefold classes fail the one-factor restriction")
    if b.specialize({"u3": 0}, amb) != two_factor:
        raise DerivationInconsistent("threefold classes fail the two-factor restriction")
    line = _one_var(backend)
    diag = b.specialize({"u1": "u", "u2": "u", "u3": "u"}, line)
    cube = cube_classes(backend)
    for k in range(1, 5):
        if diag[k] != TruncatedPoly.monomial(line, (k,), cube[k - 1], witt_ring(backend)):
            raise DerivationInconsistent(f"diagonal of b_{k} disagrees with the cube")


def derive_threefold_witt(ambient: AmbientSpec | None = None, backend: Backend = Q) -> BorelPolynomial:
    """Witt classes of U1 (x) U2 (x) U3, solved from restrictions to fewer factors."""
    b = _threefold_universal(backend)
    if ambient is None:
        return b
    if len(ambient) != 3:
        raise AmbientMismatch("the threefold product needs exactly three factors")
    if any(x is not None and x < 5 for x in ambient.bounds):
        raise TruncationOverflow("derivation needs every truncation bound >= 5")
    return b.specialize(dict(zip(b.ambient.names, ambient.names)), ambient)


def _series(ambient, backend, precision, classes: dict[int, TruncatedPoly]) -> BorelPolynomial:
    return BorelPolynomial(ambient, witt_ring(backend), classes, precision)


def _linear(ambient, backend, precision, i: int, coeff: WittElement) -> BorelPolynomial:
    """1 + coeff * u_i t."""
    e = [0] * len(ambient)
    e[i] = 1
    return _series(ambient, backend, precision, {1: TruncatedPoly.monomial(ambient, e, coeff, witt_ring(backend))})


def _pontryagin_pair(ambient, backend, precision, a: int, b: int) -> BorelPolynomial:
    """Witt Pontryagin classes of U_a (x) U_b: p2 = -2(ua^2+ub^2), p4 = (ua^2-ub^2)^2."""
    R = witt_ring(backend)
    ua = TruncatedPoly.variable(ambient, ambient.names[a], R)
    ub = TruncatedPoly.variable(ambient, ambient.names[b], R)
    sq_a, sq_b = ua * ua, ub * ub
    return _series(ambient, backend, precision, {2: (sq_a + sq_b) * (-2), 4: (sq_a - sq_b) * (sq_a - sq_b)})


def _odd_core(core, ambient, backend, precision, t: int) -> BorelPolynomial:
    """Witt classes of <t> * core for a core of odd symplectic parity."""
    R = witt_ring(backend)
    tw = lambda i: WittElement.unit(t, backend) ** (i % 2)  # noqa: E731  <t^i> = <t> or <1>
    if len(core) == 1:
        f = core[0]
        i = f.index - 1
        if f.kind == "U":
            return _linear(ambient, backend, precision, i, WittElement.unit(t, backend))
        s1, s2 = derive_sym3_classes(backend)
        e1 = [0] * len(ambient)
        e1[i] = 1
        e2 = [0] * len(ambient)
        e2[i] = 2
        b = _series(
            ambient,
            backend,
            precision,
            {1: TruncatedPoly.monomial(ambient, e1, s1, R), 2: TruncatedPoly.monomial(ambient, e2, s2, R)},
        )
        return b.twisted(tw)
    if len(core) == 3 and all(f.kind == "U" for f in core):
        idx = [f.index - 1 for f in core]
        if idx[0] == idx[1] == idx[2]:
            cube = cube_classes(backend)
            terms = {}
            for k in range(1, 5):
                e = [0] * len(ambient)
                e[idx[0]] = k
                terms[k] = TruncatedPoly.monomial(ambient, e, cube[k - 1], R)
            b = _series(ambient, backend, precision, terms)
        else:
            uni = _threefold_universal(backend)
            names = ambient.names
            b = uni.specialize({"u1": names[idx[0]], "u2": names[idx[1]], "u3": names[idx[2]]}, ambient)
            b = BorelPolynomial(ambient, R, {i: b[i] for i in range(1, min(4, precision) + 1)}, precision)
        return b.twisted(tw)
    raise UnsupportedBundle(f"no Witt rule for the tensor product {'*'.join(map(str, core))}")


def _even_core(core, ambient, backend, precision) -> BorelPolynomial:
    """Witt Pontryagin classes of an orthogonal core (empty or U_a (x) U_b)."""
    if not core:
        return BorelPolynomial.one(ambient, witt_ring(backend), precision)
    if len(core) == 2 and all(f.kind == "U" for f in core):
        return _pontryagin_pair(ambient, backend, precision, core[0].index - 1, core[1].index - 1)
    raise UnsupportedBundle(f"no Witt rule for the tensor product {'*'.join(map(str, core))}")


def _witt_monomial(m: Monomial, ambient: AmbientSpec, precision: int, backend: Backend) -> BorelPolynomial:
    return _witt_monomial_cached(m, ambient, precision, backend)


@lru_cache(maxsize=512)
def _witt_monomial_cached(m: Monomial, ambient, precision, backend) -> BorelPolynomial:
    for f in m.factors:
        if f.kind != "H" and f.index > len(ambient):
            raise AmbientMismatch(f"{f} needs at least {f.index} factors, ambient is {ambient}")
    core = m.core()
    k = m.count("H")
    t = backend.square_class(m.twist)
    if len(core) % 2:
        if k == 0:
            return _odd_core(core, ambient, backend, precision, t)
        # X (x) H = X + <-1>X, applied k times
        plus = _odd_core(core, ambient, backend, precision, t)
        minus = _odd_core(core, ambient, backend, precision, backend.mul_classes(t, backend.square_class(-1)))
        return (plus * minus) ** (2 ** (k - 1))
    if k == 0:
        if not core:
            return BorelPolynomial.one(ambient, witt_ring(backend), precision)
        # a bare orthogonal product is given its Pontryagin classes
        return _even_core(core, ambient, backend, precision)
    # E (x) H is the hyperbolic bundle H(E); further H's double it
    return _even_core(core, ambient, backend, precision) ** (2 ** (k - 1))


def witt_borel_poly(
    v: VirtualBundle, ambient: AmbientSpec, max_degree: int | None = None, backend: Backend = Q
) -> BorelPolynomial:
    """Witt-valued Borel polynomial assembled monomial by monomial."""
    _check_indices(v, ambient)
    prec = _resolve_precision(v, ambient, max_degree)
    return _assemble(v, ambient, witt_ring(backend), prec, lambda m: _witt_monomial(m, ambient, prec, backend))


# --- GW channel --------------------------------------------------------------------


def lift_coefficient(chow: int, witt: WittElement) -> GWElement:
    """The GW element with rank ``chow`` and Witt image ``witt``."""
    w = witt.simplified()
    diff = chow - w.rank()
    if diff % 2:
        raise ParityMismatch(f"Chow coefficient {chow} and Witt coefficient {witt} have different parity")
    return w.lift() + hyperbolic(diff // 2, witt.backend)


def lift_poly(chow: TruncatedPoly, witt: TruncatedPoly, backend: Backend = Q) -> TruncatedPoly:
    if chow.ambient != witt.ambient:
        raise AmbientMismatch(f"{chow.ambient} vs {witt.ambient}")
    zero = WittElement.from_int(0, backend)
    out = {}
    for e in set(chow.terms) | set(witt.terms):
        w = witt.terms.get(e, zero)
        out[e] = lift_coefficient(chow.terms.get(e, 0), w)
    return TruncatedPoly(chow.ambient, out, gw_ring(backend))


def lift_to_gw(chow: BorelPolynomial, witt: BorelPolynomial, backend: Backend | None = None) -> BorelPolynomial:
    """Glue Chow and Witt Borel polynomials into GW-valued ones."""
    if chow.ambient != witt.ambient:
        raise AmbientMismatch(f"{chow.ambient} vs {witt.ambient}")
    if chow.precision != witt.precision:
        raise AmbientMismatch(f"precision {chow.precision} vs {witt.precision}")
    if backend is None:
        backend = witt.ring.zero().backend
    classes = {i: lift_poly(chow[i], witt[i], backend) for i in range(1, chow.precision + 1)}
    return BorelPolynomial(chow.ambient, gw_ring(backend), classes, chow.precision)


def gw_borel_classes(
    v: VirtualBundle, ambient: AmbientSpec, max_degree: int | None = None, backend: Backend = Q
) -> BorelPolynomial:
    """Chow-Witt (GW-valued) Borel polynomial: the lift of the two channels."""
    chow = chow_borel_poly(v, ambient, max_degree)
    witt = witt_borel_poly(v, ambient, max_degree, backend)
    return lift_to_gw(chow, witt, backend)


def borel_poly(
    v: VirtualBundle, ambient: AmbientSpec, channel: str, max_degree: int | None = None, backend: Backend = Q
) -> BorelPolynomial:
    if channel == "chow":
        return chow_borel_poly(v, ambient, max_degree)
    if channel == "witt":
        return witt_borel_poly(v, ambient, max_degree, backend)
    if channel == "gw":
        return gw_borel_classes(v, ambient, max_degree, backend)
    raise ValueError(f"unknown channel {channel!r}; use chow, witt or gw")


def rank_image(b: BorelPolynomial) -> BorelPolynomial:
    """Chow projection of a GW Borel polynomial."""
    return b.map(lambda c: c.rank(), ZZ)


def witt_image(b: BorelPolynomial) -> BorelPolynomial:
    backend = b.ring.zero().backend
    return b.map(lambda c: c.witt(), witt_ring(backend))


def symmetric_monomials(k: int, nvars: int = 3):
    """Exponent vectors of total degree k (used by tests and the verifier)."""
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        c = Counter(combo)
        out.append(tuple(c.get(i, 0) for i in range(nvars)))
    return out


def clear_caches() -> None:
    """Drop every memoized derivation (used to time cold computations)."""
    from . import localization

    for f in (
        _chow_monomial,
        _witt_monomial_cached,
        derive_sym3_classes,
        cube_classes,
        _threefold_low,
        _threefold_universal,
        localization.normalization_factor,
    ):
        f.cache_clear()
