"""Grothendieck-Witt and Witt rings of Q and of prime fields F_p.

Elements are stored as formal integer combinations of square classes
``sum n_d <d>``.  The representation is not unique: ``<1> + <-1>`` and
``<2> + <-2>`` are the same form.  Equality is therefore decided through
invariants instead of a normal form.  Over Q these are the rank, the
signature at the unique ordering and the second residues at every prime
dividing a square-class representative; together they detect GW(Q).  Over
F_p rank and the image in the finite ring W(F_p) suffice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from sympy import factorint, isprime

from .errors import BackendMismatch, InvalidPrime, InvalidUnit, NoOrderings


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    if n == 0:
        raise InvalidUnit("zero has no square class")
    out = 1
    for p, e in _factor(abs(n)):
        if e % 2:
            out *= p
    return out if n > 0 else -out


def _as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, (int, str)):
        return Fraction(a)
    raise InvalidUnit(f"cannot read {a!r} as a rational unit")


@lru_cache(maxsize=None)
def _least_nonresidue(p: int) -> int:
    s = 2
    while pow(s, (p - 1) // 2, p) != p - 1:
        s += 1
    return s


@dataclass(frozen=True)
class Ordering:
    """An ordering of the base field; Q has exactly one."""

    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Backend:
    """Base field of the coefficient rings: Q when ``p`` is None, else F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isprime(self.p):
                raise InvalidPrime(f"{self.p} is not prime")
            if self.p in (2, 3):
                raise InvalidPrime("characteristic 2 and 3 are excluded")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def name(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    def __str__(self) -> str:
        return self.name

    def orderings(self) -> tuple[Ordering, ...]:
        return (Ordering("P0"),) if self.p is None else ()

    def square_class(self, a) -> int:
        """Canonical representative of the square class of the unit ``a``."""
        a = _as_fraction(a)
        if a == 0:
            raise InvalidUnit("zero is not a unit")
        if self.p is None:
            return squarefree_part(a.numerator * a.denominator)
        p = self.p
        u = (a.numerator * a.denominator) % p
        if u == 0:
            raise InvalidUnit(f"{a} is not a unit in F_{p}")
        return 1 if pow(u, (p - 1) // 2, p) == 1 else _least_nonresidue(p)

    def mul_classes(self, c: int, d: int) -> int:
        if self.p is None:
            g = gcd(c, d)
            return (c // g) * (d // g)
        return self.square_class(c * d)


Q = Backend()


def Fp(p: int) -> Backend:
    return Backend(p)


def parse_backend(text: str) -> Backend:
    text = text.strip().lower()
    if text in ("q", "qq"):
        return Q
    if text.startswith("fp:"):
        try:
            return Fp(int(text[3:]))
        except ValueError as exc:
            if isinstance(exc, InvalidPrime):
                raise
            raise InvalidPrime(f"bad prime in backend {text!r}") from None
    raise InvalidPrime(f"unknown backend {text!r}; use q or fp:<prime>")


@dataclass(frozen=True)
class WittFp:
    """Element of W(F_p) in its smallest faithful encoding.

    p = 2: a bit (rank mod 2).  p = 3 mod 4: an integer mod 4, since <-1> = -<1>.
    p = 1 mod 4: multiplicities of <1> and <s> mod 2 (group ring of F_p^*/squares).
    """

    p: int
    value: int | tuple[int, int]

    @classmethod
    def zero(cls, p: int) -> WittFp:
        return cls(p, (0, 0) if p % 4 == 1 else 0)

    @classmethod
    def one(cls, p: int) -> WittFp:
        return cls(p, (1, 0) if p % 4 == 1 else 1)

    @classmethod
    def from_unit(cls, p: int, u: int) -> WittFp:
        if p == 2:
            return cls(2, 1)
        if u % p == 0:
            raise InvalidUnit(f"{u} is not a unit mod {p}")
        square = pow(u % p, (p - 1) // 2, p) == 1
        if p % 4 == 3:
            return cls(p, 1 if square else 3)
        return cls(p, (1, 0) if square else (0, 1))

    def _check(self, other: WittFp) -> None:
        if other.p != self.p:
            raise BackendMismatch(f"W(F_{self.p}) vs W(F_{other.p})")

    def __add__(self, other):
        if not isinstance(other, WittFp):
            return NotImplemented
        self._check(other)
        if self.p % 4 == 1:
            a, b = self.value
            c, d = other.value
            return WittFp(self.p, ((a + c) % 2, (b + d) % 2))
        mod = 2 if self.p == 2 else 4
        return WittFp(self.p, (self.value + other.value) % mod)

    def __neg__(self):
        if self.p % 4 == 3:
            return WittFp(self.p, (-self.value) % 4)
        return self

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if self.p % 4 == 1:
                a, b = self.value
                return WittFp(self.p, (a * other % 2, b * other % 2))
            mod = 2 if self.p == 2 else 4
            return WittFp(self.p, self.value * other % mod)
        if not isinstance(other, WittFp):
            return NotImplemented
        self._check(other)
        if self.p % 4 == 1:
            a, b = self.value
            c, d = other.value
            return WittFp(self.p, ((a * c + b * d) % 2, (a * d + b * c) % 2))
        mod = 2 if self.p == 2 else 4
        return WittFp(self.p, self.value * other.value % mod)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self != WittFp.zero(self.p)

    def __str__(self) -> str:
        if self.p % 4 == 1:
            a, b = self.value
            parts = [t for t, k in (("<1>", a), ("<s>", b)) if k]
            return " + ".join(parts) or "0"
        return f"{self.value} mod {2 if self.p == 2 else 4}"


def _sign(n: int) -> int:
    return 1 if n > 0 else -1


def _fmt_class(d: int, latex: bool = False) -> str:
    return rf"\langle {d}\rangle" if latex else f"<{d}>"


class _FormSum:
    """Shared machinery for GW and Witt elements: a formal sum of square classes."""

    __slots__ = ("_terms", "backend")

    def __init__(self, terms: Mapping[int, int] | None = None, backend: Backend = Q):
        self._terms = {d: n for d, n in (terms or {}).items() if n}
        self.backend = backend

    # construction -------------------------------------------------------
    @classmethod
    def from_diagonal(cls, units: Iterable, backend: Backend = Q):
        terms: dict[int, int] = {}
        for a in units:
            d = backend.square_class(a)
            terms[d] = terms.get(d, 0) + 1
        return cls(terms, backend)

    @classmethod
    def from_int(cls, n: int, backend: Backend = Q):
        return cls({1: n}, backend)

    @classmethod
    def unit(cls, a, backend: Backend = Q):
        return cls({backend.square_class(a): 1}, backend)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return type(self)({1: other}, self.backend)
        if isinstance(other, _FormSum):
            if other.backend != self.backend:
                raise BackendMismatch(f"{self.backend} vs {other.backend}")
            if isinstance(other, type(self)):
                return other
            if isinstance(self, WittElement):
                return WittElement(other._terms, other.backend)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for d, n in o._terms.items():
            terms[d] = terms.get(d, 0) + n
        return type(self)(terms, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({d: -n for d, n in self._terms.items()}, self.backend)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return type(self)({d: n * other for d, n in self._terms.items()}, self.backend)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[int, int] = {}
        mul = self.backend.mul_classes
        for (c, m), (d, n) in product(self._terms.items(), o._terms.items()):
            e = mul(c, d)
            terms[e] = terms.get(e, 0) + m * n
        return type(self)(terms, self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in GW")
        out = type(self)({1: 1}, self.backend)
        for _ in range(k):
            out = out * self
        return out

    # invariants -----------------------------------------------------------
    def rank(self) -> int:
        return sum(self._terms.values())

    def signature(self, ordering: Ordering | None = None) -> int:
        if not self.backend.is_rational:
            raise NoOrderings(f"{self.backend} has no orderings")
        if ordering is not None and ordering not in self.backend.orderings():
            raise NoOrderings(f"unknown ordering {ordering}")
        return sum(n * _sign(d) for d, n in self._terms.items())

    def residue(self, p: int) -> WittFp:
        """Second residue at p with uniformizer p: <p u> -> <u mod p>, <u> -> 0."""
        if not self.backend.is_rational:
            raise BackendMismatch("second residues are defined for backend q only")
        if not (isinstance(p, int) and isprime(p)):
            raise InvalidPrime(f"{p!r} is not a prime")
        out = WittFp.zero(p)
        for d, n in self._terms.items():
            if d % p == 0:
                out = out + WittFp.from_unit(p, d // p) * n
        return out

    def support_primes(self) -> set[int]:
        primes: set[int] = set()
        for d in self._terms:
            primes.update(p for p, _ in _factor(abs(d)))
        return primes

    def witt_fp(self) -> WittFp:
        """Image in W(F_p) for an F_p backend."""
        p = self.backend.p
        if p is None:
            raise BackendMismatch("witt_fp needs an F_p backend")
        out = WittFp.zero(p)
        for d, n in self._terms.items():
            out = out + WittFp.from_unit(p, d) * n
        return out

    def _witt_trivial(self) -> bool:
        if not self.backend.is_rational:
            return not self.witt_fp()
        if self.signature() != 0:
            return False
        return all(not self.residue(p) for p in self.support_primes())

    def _witt_key(self):
        return self.signature() if self.backend.is_rational else self.witt_fp()

    # rendering ------------------------------------------------------------
    def _raw_text(self, latex: bool = False) -> str:
        return _render_terms(sorted(self._terms.items(), key=_class_order), latex)

    def to_json(self) -> dict:
        items = sorted(self._terms.items(), key=_class_order)
        return {"backend": self.backend.name, "terms": [{"d": d, "n": n} for d, n in items]}

    @classmethod
    def from_json(cls, data, backend: Backend | None = None):
        """Accept a full ``{"backend", "terms"}`` object or a bare term list."""
        if not isinstance(data, Mapping):
            data = {"terms": data}
        backend = backend or parse_backend(data.get("backend", "q"))
        terms: dict[int, int] = {}
        for t in data["terms"]:
            d = backend.square_class(int(t["d"]))
            terms[d] = terms.get(d, 0) + int(t["n"])
        return cls(terms, backend)

    def to_expr(self) -> str:
        """Parser-friendly text, e.g. ``3*<1> - <2>``."""
        parts = []
        for d, n in sorted(self._terms.items(), key=_class_order):
            parts.append(("-" if n < 0 else "+") + f" {abs(n)}*<{d}>")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+") else "-" + text[2:]


def _class_order(item) -> tuple:
    d = item[0]
    return (abs(d), d < 0)


def _render_terms(items, latex: bool = False, h: int = 0) -> str:
    pieces: list[tuple[int, str]] = []
    for d, n in items:
        if d == 1:
            pieces.append((n, str(abs(n))))
        else:
            body = _fmt_class(d, latex)
            pieces.append((n, body if abs(n) == 1 else f"{abs(n)}{body}"))
    if h:
        pieces.append((h, "h" if abs(h) == 1 else f"{abs(h)}h"))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for n, body in pieces[1:]:
        out += (" - " if n < 0 else " + ") + body
    return out


class GWElement(_FormSum):
    """A virtual quadratic form: element of GW(k)."""

    __slots__ = ()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None or isinstance(o, WittElement):
            return NotImplemented
        return gw_equal(self, o)

    def __hash__(self):
        return hash((self.rank(), self._witt_key()))

    def __bool__(self) -> bool:
        return self.rank() != 0 or not self._witt_trivial()

    def witt(self) -> WittElement:
        return WittElement(self._terms, self.backend)

    def simplified(self) -> GWElement:
        """An equal element written as (reduced Witt part) + k*h."""
        w = self.witt().simplified()
        k, rem = divmod(self.rank() - w.rank(), 2)
        assert rem == 0, "Witt class fixes rank parity"
        return GWElement(w._terms, self.backend) + hyperbolic(k, self.backend)

    def _display(self) -> tuple[dict[int, int], int]:
        """(square-class terms, multiple of h) of a short equal representative."""
        w = self.witt().simplified(prefer_rank_positive=True)
        k = (self.rank() - w.rank()) // 2
        if k < 0:
            w = self.witt().simplified()
            k = (self.rank() - w.rank()) // 2
        if k < 0 and all(n > 0 for n in self._terms.values()):
            return dict(self._terms), 0
        return dict(w._terms), k

    def _pretty(self, latex: bool = False) -> str:
        terms, k = self._display()
        return _render_terms(sorted(terms.items(), key=_class_order), latex, h=k)

    def to_json(self) -> dict:
        terms, k = self._display()
        short = GWElement(terms, self.backend) + hyperbolic(k, self.backend)
        return _FormSum.to_json(short)

    def __str__(self) -> str:
        return self._pretty()

    def to_latex(self) -> str:
        return self._pretty(latex=True)

    def __repr__(self) -> str:
        return f"GWElement({self._raw_text()!r}, backend={self.backend.name!r})"


class WittElement(_FormSum):
    """Element of W(k) = GW(k)/(h), carried by any GW representative."""

    __slots__ = ()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return witt_equal(self, o)

    def __hash__(self):
        return hash(self._witt_key())

    def __bool__(self) -> bool:
        return not self._witt_trivial()

    def lift(self) -> GWElement:
        return GWElement(self._terms, self.backend)

    def divide_odd(self, m: int) -> WittElement:
        """The unique y with m*y = self, for odd m.

        W(Q) is Z (signature) plus 4-torsion and W(F_p) is 4-torsion, so an odd
        m acts invertibly on the torsion part: there m^{-1} = m because m^2 = 1 mod 8.
        """
        if m % 2 == 0:
            raise ArithmeticError("only odd divisors are supported")
        if not self.backend.is_rational:
            return self * m
        s = self.signature()
        if s % m:
            raise ArithmeticError(f"{self} is not divisible by {m} in W(Q)")
        torsion = self - s
        return WittElement.from_int(s // m) + torsion * m

    def simplified(self, prefer_rank_positive: bool = False) -> WittElement:
        """Search a short equal representative: an integer, or an integer plus m<d>."""
        b = self.backend
        if not b.is_rational:
            v = self.witt_fp().value
            if b.p % 4 == 1:
                return WittElement({1: v[0], _least_nonresidue(b.p): v[1]}, b)
            if v == 3:
                return WittElement({b.square_class(-1): 1}, b)
            return WittElement({1: v}, b)
        s = self.signature()
        plain = WittElement({1: s}) if not (prefer_rank_positive and s < 0) else WittElement({-1: -s})
        if self == plain:
            return plain
        classes = set(self._terms)
        classes |= {b.mul_classes(c, d) for c in self._terms for d in self._terms}
        classes |= {-c for c in classes}
        classes.discard(1)
        classes.discard(-1)
        options = []
        for d in classes:
            for m in (1, -1, 2, -2, 3, -3):
                c = s - m * _sign(d)
                options.append((abs(m), abs(c), m < 0, abs(d), d < 0, c, d, m))
        for *_, c, d, m in sorted(options):
            base = {1: c} if not (prefer_rank_positive and c < 0) else {-1: -c}
            cand = WittElement(base) + WittElement({d: m})
            if cand == self:
                return cand
        return WittElement(self._terms, b)

    def __str__(self) -> str:
        w = self.simplified()
        return _render_terms(sorted(w._terms.items(), key=_class_order))

    def to_latex(self) -> str:
        w = self.simplified()
        return _render_terms(sorted(w._terms.items(), key=_class_order), latex=True)

    def to_json(self) -> dict:
        return {"witt": super().to_json()}

    def __repr__(self) -> str:
        return f"WittElement({self._raw_text()!r}, backend={self.backend.name!r})"


class Invariants(NamedTuple):
    rank: int
    signatures: dict
    residues: dict


def gw_from_diagonal(units: Iterable, backend: Backend = Q) -> GWElement:
    """The diagonal form <a_1, ..., a_n>."""
    return GWElement.from_diagonal(units, backend)


def hyperbolic(n: int = 1, backend: Backend = Q) -> GWElement:
    """n copies of the hyperbolic plane h = <1, -1>."""
    if not n:
        return GWElement({}, backend)
    return GWElement.from_diagonal([1, -1], backend) * n


def invariants(a: _FormSum, primes: Iterable[int] | None = None) -> Invariants:
    """Rank, signatures and second residues of ``a`` (backend q)."""
    if not a.backend.is_rational:
        raise NoOrderings("signatures and residues need backend q")
    ps = sorted(a.support_primes() if primes is None else primes)
    return Invariants(
        a.rank(),
        {P: a.signature(P) for P in a.backend.orderings()},
        {p: a.residue(p) for p in ps},
    )


def _check_backends(a: _FormSum, b: _FormSum) -> None:
    if a.backend != b.backend:
        raise BackendMismatch(f"{a.backend} vs {b.backend}")


def witt_equal(a: _FormSum, b: _FormSum) -> bool:
    _check_backends(a, b)
    d = _FormSum.__sub__(WittElement(a._terms, a.backend), WittElement(b._terms, b.backend))
    return d._witt_trivial()


def gw_equal(a: _FormSum, b: _FormSum) -> bool:
    _check_backends(a, b)
    return a.rank() == b.rank() and witt_equal(a, b)


@lru_cache(maxsize=None)
def gw_ring(backend: Backend = Q):
    """Coefficient ring GW(backend) for the polynomial engine."""
    from .graded_poly import CoefficientRing

    return CoefficientRing(
        f"GW({backend.name})",
        lambda: GWElement({}, backend),
        lambda: GWElement({1: 1}, backend),
        render=str,
        render_latex=GWElement.to_latex,
        to_json=lambda c: c.to_json()["terms"],
        from_int=lambda n: GWElement.from_int(n, backend),
    )


@lru_cache(maxsize=None)
def witt_ring(backend: Backend = Q):
    """Coefficient ring W(backend); zero test is Witt-triviality."""
    from .graded_poly import CoefficientRing

    return CoefficientRing(
        f"W({backend.name})",
        lambda: WittElement({}, backend),
        lambda: WittElement({1: 1}, backend),
        render=str,
        render_latex=WittElement.to_latex,
        to_json=lambda c: c.simplified().to_json()["witt"]["terms"],
        from_int=lambda n: WittElement.from_int(n, backend),
    )
