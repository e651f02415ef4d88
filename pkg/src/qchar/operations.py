"""Additive power operations built from Borel classes by Newton's relations."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Any, Sequence

from .borel import borel_poly, lift_coefficient, lift_poly
from .bundles import H, U, VirtualBundle, tensor_expand
from .errors import DerivationInconsistent, InvalidIndex, ProportionalityFailure
from .graded_poly import ZZ, AmbientSpec, TruncatedPoly
from .gw_arith import Q, Backend, GWElement, WittElement, gw_ring, hyperbolic, witt_ring


def newton_sequence(n: int, b: Sequence, zero: Any = 0) -> list:
    """[p_1, ..., p_n] where p_k is the k-th power sum of roots with elementary symmetrics b.

    ``b[i-1]`` is b_i; missing entries count as zero.
    """
    if n <= 0:
        raise InvalidIndex(f"power operations start at index 1, got {n}")

    def e(i):
        return b[i - 1] if i <= len(b) else None

    p: list = []
    for k in range(1, n + 1):
        acc = zero
        for i in range(1, k):
            bi = e(i)
            if bi is not None:
                term = bi * p[k - i - 1]
                acc = acc + term if i % 2 else acc - term
        bk = e(k)
        if bk is not None:
            acc = acc + bk * (k if k % 2 else -k)
        p.append(acc)
    return p


def chi_from_series(n: int, b: Sequence, zero: Any = 0):
    """chi~_{2n} from Borel classes b = [b_1, b_2, ...] (Newton's relations)."""
    return newton_sequence(n, b, zero)[-1]


def _channel_ring(channel: str, backend: Backend):
    return {"chow": ZZ, "witt": witt_ring(backend), "gw": gw_ring(backend)}[channel]


def chi_eval(n: int, v: VirtualBundle, ambient: AmbientSpec, channel: str = "chow", backend: Backend = Q) -> TruncatedPoly:
    """chi~_{2n}(v), extended additively over the monomials of v."""
    if n <= 0:
        raise InvalidIndex(f"chi~ is defined from index 1 on, got {n}")
    ring = _channel_ring(channel, backend)
    total = ambient.total_degree()
    out = TruncatedPoly.zero(ambient, ring)
    for m, mult in v.items():
        prec = min(n, m.rank // 2)
        if total is not None:
            prec = min(prec, total)
        b = borel_poly(VirtualBundle({m: 1}), ambient, channel, prec, backend)
        zero = TruncatedPoly.zero(ambient, ring)
        out = out + chi_from_series(n, b.classes(), zero) * mult
    return out


def chi_eval_lifted(n: int, v: VirtualBundle, ambient: AmbientSpec, backend: Backend = Q) -> TruncatedPoly:
    """GW-valued chi~_{2n}(v) obtained by lifting the Chow and Witt evaluations."""
    chow = chi_eval(n, v, ambient, "chow", backend)
    witt = chi_eval(n, v, ambient, "witt", backend)
    return lift_poly(chow, witt, backend)


def chern_newton(n: int, c: Sequence, zero: Any = 0):
    """chi_n: the n-th Newton power sum over Chern classes c = [c_1, c_2, ...]."""
    return newton_sequence(n, c, zero)[-1]


def chern_chi_comparison(n: int) -> bool:
    """Check chi_{2n} = 2 chi~_{2n} universally, with c_odd = 0 and c_{2i} = (-1)^i b_i."""
    if n < 1:
        raise InvalidIndex("n must be >= 1")
    amb = AmbientSpec(tuple((f"b{i}", None) for i in range(1, n + 1)))
    b = [TruncatedPoly.variable(amb, f"b{i}") for i in range(1, n + 1)]
    zero = TruncatedPoly.zero(amb)
    c = []
    for j in range(1, 2 * n + 1):
        c.append(zero if j % 2 else b[j // 2 - 1] * (-1) ** (j // 2))
    return chern_newton(2 * n, c, zero) == chi_from_series(n, b, zero) * 2


@dataclass(frozen=True)
class StableCoefficient:
    """Scalar s with Omega(chi~_{2n+4}) = s * chi~_{2n}."""

    n: int
    channel: str
    value: Any

    def __str__(self) -> str:
        return str(self.value)

    def to_latex(self) -> str:
        return self.value.to_latex() if hasattr(self.value, "to_latex") else str(self.value)

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, int):
            val: Any = v
        elif isinstance(v, WittElement):
            val = v.simplified().to_json()["witt"]
        else:
            val = v.to_json()
        return {"n": self.n, "channel": self.channel, "value": val, "text": str(v)}


def omega_ambient(n: int) -> AmbientSpec:
    return AmbientSpec.hp(1, 1, n + 3)


def omega_bundle() -> VirtualBundle:
    return tensor_expand([U(1) - H(), U(2) - H(), U(3)])


def _extract(poly: TruncatedPoly, n: int):
    target = (1, 1, n)
    for e, c in poly.terms.items():
        if e != target:
            raise ProportionalityFailure(f"unexpected term {e} with coefficient {c}")
    return poly.coefficient(target)


def omega_s2(n: int, channel: str = "chow", backend: Backend = Q) -> StableCoefficient:
    """Desuspend chi~_{2n+4} along (U1-H)(U2-H): the scalar in front of u1*u2*u3^n."""
    if n < 0:
        raise InvalidIndex("n must be >= 0")
    amb = omega_ambient(n)
    v = omega_bundle()
    if channel == "gw":
        direct = _extract(chi_eval(n + 2, v, amb, "gw", backend), n)
        chow = _extract(chi_eval(n + 2, v, amb, "chow", backend), n)
        witt = _extract(chi_eval(n + 2, v, amb, "witt", backend), n)
        lifted = lift_coefficient(chow, witt)
        if not direct == lifted:
            raise DerivationInconsistent(f"direct {direct} and lifted {lifted} GW values differ")
        return StableCoefficient(n, channel, lifted)
    value = _extract(chi_eval(n + 2, v, amb, channel, backend), n)
    if channel == "witt":
        value = value.simplified()
    return StableCoefficient(n, channel, value)


def expected_omega(n: int, channel: str, backend: Backend = Q):
    """Closed forms for the stable coefficients."""
    if channel == "chow":
        return (2 * n + 4) * (2 * n + 3) * (2 * n + 2) * (2 * n + 1)
    if channel == "witt":
        return WittElement.from_int(0 if n % 2 == 0 else -4 * (n + 2) * (n + 1), backend)
    if n % 2 == 0:
        return hyperbolic(12 * comb(2 * n + 4, 4), backend)
    return psi(n, backend)


def alpha_sequence(n: int) -> int:
    """alpha_n from alpha_1 = -24, alpha_3 = -80, alpha_n = 2 alpha_{n-2} - alpha_{n-4} - 32."""
    if n < 1 or n % 2 == 0:
        raise InvalidIndex("alpha_n is defined for odd n >= 1")
    seq = {1: -24, 3: -80}
    for k in range(5, n + 1, 2):
        seq[k] = 2 * seq[k - 2] - seq[k - 4] - 32
    value = seq[n]
    if value != -4 * (n + 2) * (n + 1):
        raise DerivationInconsistent(f"alpha_{n} = {value} breaks the closed form")
    return value


def psi(n: int, backend: Backend = Q) -> GWElement:
    """psi_{2n+4} = 4(n+2)(n+1)(<-1> + (2n^2+4n+1) h) for odd n."""
    if n < 1 or n % 2 == 0:
        raise InvalidIndex("psi_{2n+4} is defined for odd n >= 1")
    k = 4 * (n + 2) * (n + 1)
    return (GWElement.unit(-1, backend) + hyperbolic(2 * n * n + 4 * n + 1, backend)) * k


def psi_rank_product(n: int) -> int:
    """rank(psi_6 psi_10 ... psi_{2n}) for odd n >= 3."""
    out = 1
    for k in range(1, n - 1, 2):
        out *= psi(k).rank()
    return out


def double_factorial(m: int) -> int:
    """prod_{i=0}^{floor(m/2)} (m - 2i); this vanishes for even m."""
    if m < 1:
        raise InvalidIndex("m must be >= 1")
    out = 1
    for i in range(m // 2 + 1):
        out *= m - 2 * i
    return out


def chern_scale(n: int) -> int:
    """(2n)!/2, the rank normalization of B_{2n}."""
    return factorial(2 * n) // 2
