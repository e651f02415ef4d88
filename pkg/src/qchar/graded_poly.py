"""Truncated multivariate polynomials over a pluggable coefficient ring.

These model the cohomology rings of products of quaternionic projective
spaces: each variable ``u_i`` has weight 2 and is nilpotent of order
``bound + 1`` (``bound`` None means HP(infinity)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from .errors import AmbientMismatch, TruncationOverflow, UnknownVariable


@dataclass(frozen=True)
class CoefficientRing:
    """What the polynomial engine needs to know about its coefficients.

    ``zero`` and ``one`` build the neutral elements; ``is_zero`` is the zero
    test (decision-backed for GW and Witt).  Elements must support ``+``,
    ``-``, ``*`` among themselves and ``*`` by Python ints.
    """

    name: str
    zero: Callable[[], Any]
    one: Callable[[], Any]
    is_zero: Callable[[Any], bool] = lambda c: not c
    render: Callable[[Any], str] = str
    render_latex: Callable[[Any], str] | None = None
    to_json: Callable[[Any], Any] = lambda c: c
    from_int: Callable[[int], Any] | None = None

    def coerce(self, n: int):
        return self.from_int(n) if self.from_int else self.one() * n


ZZ = CoefficientRing("ZZ", lambda: 0, lambda: 1, from_int=int)
QQ = CoefficientRing(
    "QQ", lambda: Fraction(0), lambda: Fraction(1), to_json=lambda c: str(c), from_int=Fraction
)

_HP = re.compile(r"HP\((\d+|inf)\)(?:\^(\d+))?$")


@dataclass(frozen=True)
class AmbientSpec:
    """Product of quaternionic projective spaces: ((name, bound), ...)."""

    factors: tuple[tuple[str, int | None], ...]

    def __post_init__(self):
        names = [n for n, _ in self.factors]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n, b in self.factors:
            if b is not None and b < 1:
                raise ValueError(f"truncation bound of {n} must be >= 1")

    @classmethod
    def hp(cls, *bounds: int | None, prefix: str = "u") -> AmbientSpec:
        return cls(tuple((f"{prefix}{i + 1}", b) for i, b in enumerate(bounds)))

    @classmethod
    def from_string(cls, text: str) -> AmbientSpec:
        """Parse ``HP(5)^3``, ``HP(1)*HP(1)*HP(8)`` or ``HP(inf)^3``."""
        bounds: list[int | None] = []
        compact = text.replace(" ", "")
        if not compact:
            raise ValueError("empty ambient")
        for piece in re.split(r"[*x×]", compact):
            m = _HP.match(piece)
            if not m:
                raise ValueError(f"cannot parse ambient factor {piece!r}")
            b = None if m.group(1) == "inf" else int(m.group(1))
            bounds.extend([b] * int(m.group(2) or 1))
        return cls.hp(*bounds)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.factors)

    @property
    def bounds(self) -> tuple[int | None, ...]:
        return tuple(b for _, b in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def total_degree(self) -> int | None:
        """Largest nonzero monomial degree (sum of exponents), None if unbounded."""
        if any(b is None for b in self.bounds):
            return None
        return sum(self.bounds)

    def fits(self, exps: tuple[int, ...]) -> bool:
        return all(b is None or e <= b for e, b in zip(exps, self.bounds))

    def __str__(self) -> str:
        return "*".join(f"HP({'inf' if b is None else b})" for b in self.bounds)

    def to_json(self) -> list:
        return [[n, b] for n, b in self.factors]


def _grlex_key(exps: tuple[int, ...]):
    return (-sum(exps), tuple(-e for e in exps))


class TruncatedPoly:
    """Sparse polynomial: exponent vector -> nonzero coefficient."""

    __slots__ = ("ambient", "ring", "_terms")

    def __init__(self, ambient: AmbientSpec, terms: Mapping[tuple, Any] | None = None, ring: CoefficientRing = ZZ):
        self.ambient = ambient
        self.ring = ring
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(ambient):
                raise AmbientMismatch(f"exponent {e} does not match {ambient}")
            if ambient.fits(e) and not ring.is_zero(c):
                clean[e] = c
        self._terms = clean

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, ambient, ring=ZZ):
        return cls(ambient, {}, ring)

    @classmethod
    def constant(cls, ambient, c, ring=ZZ):
        if isinstance(c, int) and ring is not ZZ:
            c = ring.coerce(c)
        return cls(ambient, {(0,) * len(ambient): c}, ring)

    @classmethod
    def one(cls, ambient, ring=ZZ):
        return cls.constant(ambient, ring.one(), ring)

    @classmethod
    def variable(cls, ambient, name: str, ring=ZZ):
        i = ambient.index(name)
        e = [0] * len(ambient)
        e[i] = 1
        return cls(ambient, {tuple(e): ring.one()}, ring)

    @classmethod
    def monomial(cls, ambient, exps, coeff=None, ring=ZZ):
        return cls(ambient, {tuple(exps): ring.one() if coeff is None else coeff}, ring)

    # access -----------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def coefficient(self, exps) -> Any:
        exps = tuple(exps)
        if len(exps) != len(self.ambient):
            raise AmbientMismatch(f"exponent {exps} does not match {self.ambient}")
        return self._terms.get(exps, self.ring.zero())

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self._terms)

    def homogeneous_part(self, d: int) -> TruncatedPoly:
        return TruncatedPoly(self.ambient, {e: c for e, c in self._terms.items() if sum(e) == d}, self.ring)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic -------------------------------------------------------------
    def _same(self, other: TruncatedPoly) -> None:
        if other.ambient != self.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")
        if other.ring.name != self.ring.name:
            raise AmbientMismatch(f"coefficient ring {self.ring.name} vs {other.ring.name}")

    def _lift(self, other):
        if isinstance(other, TruncatedPoly):
            self._same(other)
            return other
        return TruncatedPoly.constant(self.ambient, other, self.ring)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return TruncatedPoly(self.ambient, out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPoly(self.ambient, {e: -c for e, c in self._terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        fits = self.ambient.fits
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not fits(e):
                    continue
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return TruncatedPoly(self.ambient, out, self.ring)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> TruncatedPoly:
        return TruncatedPoly(self.ambient, {e: v * c for e, v in self._terms.items()}, self.ring)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = TruncatedPoly.one(self.ambient, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, TruncatedPoly):
            if other.ambient != self.ambient:
                return False
            return not (self - other)
        if isinstance(other, int):
            return not (self - other)
        return NotImplemented

    __hash__ = None

    # maps -------------------------------------------------------------------
    def map_coefficients(self, f: Callable, ring: CoefficientRing) -> TruncatedPoly:
        return TruncatedPoly(self.ambient, {e: f(c) for e, c in self._terms.items()}, ring)

    def specialize(self, assignment: Mapping[str, Any], target: AmbientSpec | None = None) -> TruncatedPoly:
        """Substitute each variable by 0 or by a variable of ``target``.

        Variables missing from ``assignment`` keep their name and must exist
        in ``target``.  Exponents are added up and re-truncated in ``target``.
        """
        target = target or self.ambient
        for name in assignment:
            self.ambient.index(name)
        images = []
        for name in self.ambient.names:
            img = assignment.get(name, name)
            if img == 0 or img is None:
                images.append(None)
            else:
                images.append(target.index(img))
        out: dict = {}
        for e, c in self._terms.items():
            if any(k and images[i] is None for i, k in enumerate(e)):
                continue
            new = [0] * len(target)
            for i, k in enumerate(e):
                if k:
                    new[images[i]] += k
            new = tuple(new)
            if not target.fits(new):
                continue
            out[new] = out[new] + c if new in out else c
        return TruncatedPoly(target, out, self.ring)

    def retruncate(self, target: AmbientSpec) -> TruncatedPoly:
        """Move to an ambient with the same variables but other bounds."""
        if target.names != self.ambient.names:
            raise AmbientMismatch(f"{self.ambient} vs {target}")
        return TruncatedPoly(target, self._terms, self.ring)

    def check_fits(self, target: AmbientSpec) -> None:
        for e in self._terms:
            if not target.fits(e):
                raise TruncationOverflow(f"monomial {e} does not fit {target}")

    # rendering --------------------------------------------------------------
    def _monomial_text(self, e, latex=False) -> str:
        parts = []
        for name, k in zip(self.ambient.names, e):
            if not k:
                continue
            if latex:
                v = re.sub(r"^([a-z]+)(\d+)$", r"\1_{\2}", name)
                parts.append(v if k == 1 else f"{v}^{{{k}}}")
            else:
                parts.append(name if k == 1 else f"{name}^{k}")
        return ("" if latex else "*").join(parts)

    def _render(self, latex=False) -> str:
        if not self._terms:
            return "0"
        render = self.ring.render_latex if latex and self.ring.render_latex else self.ring.render
        pieces = []
        for e, c in self.items():
            mono = self._monomial_text(e, latex)
            text = render(c)
            compound = " + " in text or " - " in text
            negative = text.startswith("-") and not compound
            if negative:
                text = text[1:]
            if not mono:
                body = f"({text})" if compound and pieces else text
            elif text == "1":
                body = mono
            else:
                coeff = f"({text})" if compound else text
                body = f"{coeff}{'' if latex else '*'}{mono}"
            pieces.append((negative, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self) -> str:
        return self._render()

    def to_latex(self) -> str:
        return self._render(latex=True)

    def __repr__(self) -> str:
        return f"TruncatedPoly({self}, ambient={self.ambient}, ring={self.ring.name})"

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "terms": [{"e": list(e), "c": self.ring.to_json(c)} for e, c in self.items()],
        }


def from_json(data: Mapping, ring: CoefficientRing = ZZ, decode: Callable = lambda c: c) -> TruncatedPoly:
    ambient = AmbientSpec(tuple((n, b) for n, b in data["ambient"]))
    return TruncatedPoly(ambient, {tuple(t["e"]): decode(t["c"]) for t in data["terms"]}, ring)


def poly_sum(polys: Iterable[TruncatedPoly], ambient: AmbientSpec, ring: CoefficientRing) -> TruncatedPoly:
    out = TruncatedPoly.zero(ambient, ring)
    for p in polys:
        out = out + p
    return out
