"""Evaluation-level Borel character: components B_{2n} and ch_{2n} of a bundle."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .borel import chow_borel_poly
from .bundles import VirtualBundle
from .errors import InvalidIndex
from .graded_poly import QQ, AmbientSpec, TruncatedPoly
from .gw_arith import Q, Backend
from .localization import LOCALIZED, localize, normalization_factor
from .operations import chern_newton, chi_eval, chi_eval_lifted


def _chern_list(b_classes, upto, ambient):
    zero = TruncatedPoly.zero(ambient)
    c = []
    for j in range(1, upto + 1):
        i = j // 2
        if j % 2 or i > len(b_classes):
            c.append(zero)
        else:
            c.append(b_classes[i - 1] * (-1) ** i)
    return c


def chern_component(n: int, v: VirtualBundle, ambient: AmbientSpec) -> TruncatedPoly:
    """ch_n(v) = chi_n(v)/n!, with chi_n Newton's power sum over Chern classes."""
    if n < 1:
        raise InvalidIndex("ch_n is computed for n >= 1")
    total = ambient.total_degree()
    out = TruncatedPoly.zero(ambient)
    for m, mult in v.items():
        prec = min(n // 2, m.rank // 2)
        if total is not None:
            prec = min(prec, total)
        b = chow_borel_poly(VirtualBundle({m: 1}), ambient, prec).classes()
        c = _chern_list(b, n, ambient)
        out = out + chern_newton(n, c, TruncatedPoly.zero(ambient)) * mult
    return out.map_coefficients(lambda x: Fraction(x, factorial(n)), QQ)


def borel_component(n: int, v: VirtualBundle, ambient: AmbientSpec, backend: Backend = Q) -> TruncatedPoly:
    """B_2 = b_1 and B_{2n} = chi~_{2n} / (psi_6 ... psi_{2n}) for odd n >= 3, localized."""
    if n != 1 and (n < 1 or n % 2 == 0):
        raise InvalidIndex("B_{2n} is defined for n = 1 and odd n >= 3")
    chi = chi_eval_lifted(n, v, ambient, backend)
    loc = chi.map_coefficients(localize, LOCALIZED)
    if n == 1:
        return loc
    return loc.scale(normalization_factor(n))


def rank_channel(p: TruncatedPoly) -> TruncatedPoly:
    return p.map_coefficients(lambda c: c.rank, QQ)


def component_degrees(max_degree: int) -> list[int]:
    """Indices n with 2n <= max_degree for which B_{2n} exists."""
    return [n for n in range(1, max_degree // 2 + 1) if n == 1 or n % 2 == 1]


@dataclass
class BorelCharacterValue:
    bundle: VirtualBundle
    ambient: AmbientSpec
    B: dict[int, TruncatedPoly] = field(default_factory=dict)
    ch: dict[int, TruncatedPoly] = field(default_factory=dict)
    square_ok: bool = True

    def __str__(self) -> str:
        lines = [f"bo({self.bundle}) over {self.ambient}"]
        for d in sorted(self.B):
            lines.append(f"B{d} = {self.B[d]}")
        for d in sorted(self.ch):
            lines.append(f"ch{d} = {self.ch[d]}")
        lines.append(f"square_ok = {str(self.square_ok).lower()}")
        return "\n".join(lines)

    def to_latex(self) -> str:
        lines = [f"B_{{{d}}} = {p.to_latex()}" for d, p in sorted(self.B.items())]
        lines += [rf"\mathrm{{ch}}_{{{d}}} = {p.to_latex()}" for d, p in sorted(self.ch.items())]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "bundle": str(self.bundle),
            "ambient": self.ambient.to_json(),
            "B": {str(d): p.to_json()["terms"] for d, p in sorted(self.B.items())},
            "ch": {str(d): p.to_json()["terms"] for d, p in sorted(self.ch.items())},
            "square_ok": self.square_ok,
        }


def _square_holds(v, ambient, B: dict, ch: dict, backend) -> bool:
    for d, p in B.items():
        if rank_channel(p) != ch[d]:
            return False
    if 2 in B:
        witt_b1 = chi_eval(1, v, ambient, "witt", backend)
        for e, c in B[2].terms.items():
            if any(s != witt_b1.coefficient(e).signature() for s in c.sigs.values()):
                return False
        for e, w in witt_b1.terms.items():
            if e not in B[2].terms and w.signature() != 0:
                return False
    return True


def bo(v: VirtualBundle, ambient: AmbientSpec, max_degree: int = 8, backend: Backend = Q) -> BorelCharacterValue:
    """All B and ch components of degree <= max_degree, plus the compatibility verdict."""
    out = BorelCharacterValue(v, ambient)
    for n in component_degrees(max_degree):
        out.B[2 * n] = borel_component(n, v, ambient, backend)
        out.ch[2 * n] = chern_component(2 * n, v, ambient)
    out.square_ok = _square_holds(v, ambient, out.B, out.ch, backend)
    return out


def check_square(v: VirtualBundle, ambient: AmbientSpec, max_degree: int = 8, backend: Backend = Q) -> bool:
    """Forgetful compatibility of the B and ch components through ``max_degree``."""
    return bo(v, ambient, max_degree, backend).square_ok
