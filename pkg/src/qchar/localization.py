"""GW(k) with the psi elements inverted, in rank/signature coordinates."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import InvalidIndex, NoOrderings, NotInvertible
from .graded_poly import CoefficientRing
from .gw_arith import GWElement, Ordering, Q


class LocalizedGW:
    """An element of Q + sum_P Q: a rank and one signature per ordering."""

    __slots__ = ("rank", "sigs")

    def __init__(self, rank, sigs: Mapping[Ordering, object] | None = None):
        self.rank = Fraction(rank)
        if sigs is None:
            sigs = {P: 0 for P in Q.orderings()}
        self.sigs = {P: Fraction(s) for P, s in sigs.items()}

    @classmethod
    def from_int(cls, n: int) -> LocalizedGW:
        return cls(n, {P: n for P in Q.orderings()})

    def _zip(self, other: LocalizedGW, op):
        if set(other.sigs) != set(self.sigs):
            raise ValueError("localized elements over different sets of orderings")
        return LocalizedGW(op(self.rank, other.rank), {P: op(s, other.sigs[P]) for P, s in self.sigs.items()})

    def _coerce(self, other):
        if isinstance(other, LocalizedGW):
            return other
        if isinstance(other, (int, Fraction)):
            return LocalizedGW(other, {P: other for P in self.sigs})
        if isinstance(other, GWElement):
            return localize(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._zip(o, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._zip(o, lambda a, b: a - b)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __neg__(self):
        return LocalizedGW(-self.rank, {P: -s for P, s in self.sigs.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._zip(o, lambda a, b: a * b)

    __rmul__ = __mul__

    def invert(self) -> LocalizedGW:
        if self.rank == 0 or any(s == 0 for s in self.sigs.values()):
            raise NotInvertible(f"{self} has a zero coordinate")
        return LocalizedGW(1 / self.rank, {P: 1 / s for P, s in self.sigs.items()})

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self * o.invert()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rank == o.rank and self.sigs == o.sigs

    def __hash__(self):
        return hash((self.rank, tuple(sorted((P.label, s) for P, s in self.sigs.items()))))

    def __bool__(self) -> bool:
        return self.rank != 0 or any(self.sigs.values())

    def is_invertible(self) -> bool:
        return self.rank != 0 and all(self.sigs.values())

    def __str__(self) -> str:
        sig = ", ".join(f"{P}: {s}" for P, s in sorted(self.sigs.items(), key=lambda kv: kv[0].label))
        return f"(rank {self.rank}; sig {sig})"

    def __repr__(self) -> str:
        return f"LocalizedGW({self.rank!r}, {self.sigs!r})"

    def to_latex(self) -> str:
        sig = ", ".join(rf"s_{{{P}}} = {_latex_q(s)}" for P, s in sorted(self.sigs.items(), key=lambda kv: kv[0].label))
        return rf"\left(\mathrm{{rk}} = {_latex_q(self.rank)};\ {sig}\right)"

    def to_json(self) -> dict:
        return {"rank": str(self.rank), "sigs": {str(P): str(s) for P, s in self.sigs.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> LocalizedGW:
        return cls(Fraction(data["rank"]), {Ordering(k): Fraction(v) for k, v in data["sigs"].items()})


def _latex_q(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def localize(a: GWElement) -> LocalizedGW:
    """Image of ``a`` in the localized ring: its rank and signatures."""
    if not a.backend.is_rational:
        raise NoOrderings(f"backend {a.backend} has no orderings; the localization needs q")
    return LocalizedGW(a.rank(), {P: a.signature(P) for P in a.backend.orderings()})


@lru_cache(maxsize=None)
def normalization_factor(n: int) -> LocalizedGW:
    """1 / (psi_6 psi_10 ... psi_{2n}) for odd n >= 3."""
    from .operations import psi

    if n < 3 or n % 2 == 0:
        raise InvalidIndex("normalization factors exist for odd n >= 3")
    prod = LocalizedGW.from_int(1)
    for k in range(1, n - 1, 2):
        prod = prod * localize(psi(k))
    return prod.invert()


LOCALIZED = CoefficientRing(
    "GW[psi^-1]",
    lambda: LocalizedGW(0),
    lambda: LocalizedGW.from_int(1),
    render=str,
    render_latex=LocalizedGW.to_latex,
    to_json=LocalizedGW.to_json,
    from_int=LocalizedGW.from_int,
)
