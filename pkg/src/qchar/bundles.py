"""Virtual symplectic bundles over products of quaternionic projective spaces.

A bundle is an integer combination of tensor monomials.  A monomial is a
sorted multiset of basic bundles (tautological ``U_i``, the trivial
symplectic plane ``H`` and ``Sym3(U_i)``) together with one square-class
twist ``<a>`` scaling the form; twists of factors are pulled out and
multiplied together when a monomial is built.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidUnit
from .gw_arith import GWElement, squarefree_part


@dataclass(frozen=True, order=True)
class BasicBundle:
    """One tensor factor.  ``kind`` is "U", "H" or "Sym3"; ``index`` addresses an HP factor."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in ("U", "H", "Sym3"):
            raise ValueError(f"unknown basic bundle {self.kind!r}")
        if self.kind != "H" and self.index < 1:
            raise ValueError("factor indices start at 1")

    @property
    def rank(self) -> int:
        return 4 if self.kind == "Sym3" else 2

    def sort_key(self):
        return ({"U": 0, "H": 1, "Sym3": 2}[self.kind], self.index)

    def __str__(self) -> str:
        if self.kind == "H":
            return "H"
        if self.kind == "U":
            return f"U{self.index}"
        return f"Sym3(U{self.index})"

    def latex(self) -> str:
        if self.kind == "H":
            return "H"
        if self.kind == "U":
            return f"U_{{{self.index}}}"
        return rf"\mathrm{{Sym}}^3 U_{{{self.index}}}"


def TautU(i: int) -> BasicBundle:
    return BasicBundle("U", i)


HyperbolicH = BasicBundle("H")


def SymCube(inner: BasicBundle) -> BasicBundle:
    if inner.kind != "U":
        raise ValueError("Sym3 is only defined here for a tautological bundle")
    return BasicBundle("Sym3", inner.index)


def _unit_class(a) -> int:
    a = Fraction(a)
    if a == 0:
        raise InvalidUnit("twist by zero")
    return squarefree_part(a.numerator * a.denominator)


@dataclass(frozen=True)
class Monomial:
    """``<twist> * f_1 (x) ... (x) f_m`` with the factors sorted."""

    factors: tuple[BasicBundle, ...] = ()
    twist: int = 1

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=BasicBundle.sort_key)))
        object.__setattr__(self, "twist", _unit_class(self.twist))

    @property
    def rank(self) -> int:
        r = 1
        for f in self.factors:
            r *= f.rank
        return r

    def __mul__(self, other: Monomial) -> Monomial:
        t = self.twist * other.twist
        return Monomial(self.factors + other.factors, t)

    def count(self, kind: str) -> int:
        return sum(1 for f in self.factors if f.kind == kind)

    def core(self) -> tuple[BasicBundle, ...]:
        """Factors other than H."""
        return tuple(f for f in self.factors if f.kind != "H")

    def max_index(self) -> int:
        return max((f.index for f in self.factors), default=0)

    def sort_key(self):
        return (len(self.factors), [f.sort_key() for f in self.factors], abs(self.twist), self.twist < 0)

    def _body(self, latex=False) -> str:
        if not self.factors:
            return "1"
        counts = Counter(self.factors)
        parts = []
        for f in sorted(counts, key=BasicBundle.sort_key):
            k = counts[f]
            text = f.latex() if latex else str(f)
            if latex:
                parts.append(text if k == 1 else f"{text}^{{{k}}}")
            else:
                parts.extend([text] * k)
        return (" " if latex else "*").join(parts)

    def __str__(self) -> str:
        body = self._body()
        if self.twist == 1:
            return body
        return f"<{self.twist}>" if body == "1" else f"<{self.twist}>*{body}"

    def latex(self) -> str:
        body = self._body(latex=True)
        if self.twist == 1:
            return body
        return rf"\langle {self.twist}\rangle" + ("" if body == "1" else " " + body)


class VirtualBundle:
    """Integer combination of tensor monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: n for m, n in (terms or {}).items() if n}

    @classmethod
    def of(cls, *factors: BasicBundle, twist=1, mult: int = 1) -> VirtualBundle:
        return cls({Monomial(tuple(factors), twist): mult})

    @classmethod
    def unit(cls) -> VirtualBundle:
        return cls({Monomial(): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def rank(self) -> int:
        return sum(n * m.rank for m, n in self._terms.items())

    def is_honest(self) -> bool:
        return all(n > 0 for n in self._terms.values())

    def max_index(self) -> int:
        return max((m.max_index() for m in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, VirtualBundle):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = VirtualBundle.unit() * other
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        out = dict(self._terms)
        for m, n in other._terms.items():
            out[m] = out.get(m, 0) + n
        return VirtualBundle(out)

    __radd__ = __add__

    def __neg__(self):
        return VirtualBundle({m: -n for m, n in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = VirtualBundle.unit() * other
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return VirtualBundle({m: n * other for m, n in self._terms.items()})
        if isinstance(other, GWElement):
            return gw_action(other, self)
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, n1 in self._terms.items():
            for m2, n2 in other._terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + n1 * n2
        return VirtualBundle(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = VirtualBundle.unit()
        for _ in range(k):
            out = out * self
        return out

    def twisted(self, a) -> VirtualBundle:
        """Scale every form by the unit ``a``."""
        d = _unit_class(a)
        return VirtualBundle({Monomial(m.factors, m.twist * d): n for m, n in self._terms.items()})

    def __str__(self) -> str:
        return _render(self.items(), str)

    def to_latex(self) -> str:
        return _render(self.items(), Monomial.latex)

    def __repr__(self) -> str:
        return f"VirtualBundle({self})"

    def to_expr(self) -> str:
        return str(self)

    def to_json(self) -> list:
        return [
            {"factors": [str(f) for f in m.factors], "twist": m.twist, "n": n}
            for m, n in self.items()
        ]


def _render(items, fmt) -> str:
    if not items:
        return "0"
    out = []
    for m, n in items:
        body = fmt(m)
        k = abs(n)
        if body == "1":
            text = str(k)
        else:
            text = body if k == 1 else f"{k}*{body}"
        sign = "-" if n < 0 else "+"
        out.append((sign, text))
    first = ("-" if out[0][0] == "-" else "") + out[0][1]
    return " ".join([first] + [f"{s} {t}" for s, t in out[1:]])


def gw_action(form: GWElement, v: VirtualBundle) -> VirtualBundle:
    """``sum n_d <d>`` acting on a bundle: sum of twisted copies."""
    out = VirtualBundle()
    for d, n in form.terms.items():
        out = out + v.twisted(d) * n
    return out


def tensor_expand(factors: Iterable[VirtualBundle]) -> VirtualBundle:
    """Distribute the tensor product over a list of virtual bundles."""
    out = VirtualBundle.unit()
    for f in factors:
        out = out * f
    return out


def U(i: int) -> VirtualBundle:
    return VirtualBundle.of(TautU(i))


def H() -> VirtualBundle:
    return VirtualBundle.of(HyperbolicH)


def sym3(i: int) -> VirtualBundle:
    return VirtualBundle.of(SymCube(TautU(i)))


def twist(a, v: VirtualBundle) -> VirtualBundle:
    return v.twisted(a)
