"""Reproduction suite: named checks of the closed-form results, run as a batch."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from .borel import gw_borel_classes
from .bundles import U
from .errors import UnknownSuite
from .graded_poly import AmbientSpec, TruncatedPoly
from .gw_arith import Fp, GWElement, Q, WittElement, gw_equal, gw_ring, hyperbolic, witt_equal
from .localization import localize, normalization_factor
from .operations import alpha_sequence, chern_chi_comparison, expected_omega, omega_s2, psi, psi_rank_product

SUITES = ("borelclasses", "omega-table", "chi-comparison", "psi-localization", "gw-identities")


@dataclass
class Check:
    name: str
    ref: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ref": self.ref, "passed": self.passed, "detail": self.detail}


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": sum(c.passed for c in self.checks),
            "failed": sum(not c.passed for c in self.checks),
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.ref}]" + (f"  {c.detail}" if c.detail else "") for c in self.checks]
        lines.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} checks passed")
        return "\n".join(lines)


# expected GW classes of U1 (x) U2 (x) U3, by orbit of exponent vectors
_h = hyperbolic(1)
_m1 = GWElement.unit(-1)
THREEFOLD_GW = {
    1: {(1,): 2 * _h},
    2: {(2,): 2 * _m1 + 2 * _h, (1, 1): 2 * _h},
    3: {(3,): 2 * _h, (2, 1): -2 * _h, (1, 1, 1): 8 * _m1 + 16 * _h},
    4: {(4,): GWElement.from_int(1), (3, 1): -2 * _h, (2, 2): 2 * _m1 + 2 * _h, (2, 1, 1): 2 * _h},
}


def threefold_expected(k: int, ambient: AmbientSpec) -> TruncatedPoly:
    from itertools import permutations

    terms = {}
    for lam, c in THREEFOLD_GW[k].items():
        e0 = tuple(lam) + (0,) * (3 - len(lam))
        for e in set(permutations(e0)):
            terms[e] = c
    return TruncatedPoly(ambient, terms, gw_ring(Q))


def _polys_gw_equal(a: TruncatedPoly, b: TruncatedPoly) -> bool:
    zero = GWElement({})
    keys = set(a.terms) | set(b.terms)
    return all(gw_equal(a.terms.get(e, zero), b.terms.get(e, zero)) for e in keys)


def _borelclasses() -> list[Callable[[], Check]]:
    def make(k):
        def run():
            amb5 = AmbientSpec.from_string("HP(5)^3")
            ampinf = AmbientSpec.from_string("HP(inf)^3")
            E = U(1) * U(2) * U(3)
            got5 = gw_borel_classes(E, amb5, 4)[k]
            goti = gw_borel_classes(E, ampinf, 4)[k]
            ok5 = _polys_gw_equal(got5, threefold_expected(k, amb5))
            oki = _polys_gw_equal(goti, threefold_expected(k, ampinf))
            same = got5.terms.keys() == goti.terms.keys() and all(
                gw_equal(c, goti.terms[e]) for e, c in got5.terms.items()
            )
            return Check(f"b{k}(U1*U2*U3) in GW", "GW Borel classes of the threefold product", ok5 and oki and same, str(got5))

        return run

    return [make(k) for k in (1, 2, 3, 4)]


def _omega_table() -> list[Callable[[], Check]]:
    def make(n, ch):
        def run():
            got = omega_s2(n, ch).value
            want = expected_omega(n, ch)
            ok = got == want
            if ch == "gw":
                ok = ok and got.rank() == expected_omega(n, "chow") and witt_equal(got, expected_omega(n, "witt"))
            return Check(f"omega n={n} {ch}", "stable desuspension closed forms", ok, f"{got}")

        return run

    def alpha(n):
        def run():
            try:
                v = alpha_sequence(n)
                return Check(f"alpha n={n}", "alpha recurrence vs closed form", True, str(v))
            except Exception as exc:  # reported, not raised
                return Check(f"alpha n={n}", "alpha recurrence vs closed form", False, str(exc))

        return run

    out = [make(n, ch) for n in range(22) for ch in ("witt", "chow", "gw")]
    out += [alpha(n) for n in range(1, 42, 2)]
    return out


def _chi_comparison() -> list[Callable[[], Check]]:
    def make(n):
        return lambda: Check(f"chi comparison n={n}", "2 chi~^CH_2n = chi_2n", chern_chi_comparison(n))

    return [make(n) for n in range(1, 21)]


def _psi_localization() -> list[Callable[[], Check]]:
    def nonzero(n):
        def run():
            loc = localize(psi(n))
            return Check(f"psi_{2 * n + 4} invertible", "psi has nonzero rank and signature", loc.is_invertible(), str(loc))

        return run

    def ranks(n):
        def run():
            r = psi_rank_product(n)
            f = normalization_factor(n)
            ok = r == factorial(2 * n) // 2 and f.rank == Fraction(2, factorial(2 * n))
            return Check(f"rank psi product n={n}", "rank(psi_6...psi_2n) = (2n)!/2", ok, str(r))

        return run

    def torsion():
        x = GWElement.unit(2) - GWElement.unit(1)
        y = GWElement.unit(-3) - GWElement.unit(-7)
        ok = not localize(x) and not localize(y)
        return Check("torsion maps to zero", "rank-0 signature-0 elements vanish", ok)

    out = [nonzero(n) for n in range(1, 16, 2)]
    out += [ranks(n) for n in range(3, 16, 2)]
    out.append(torsion)
    return out


def _gw_identities() -> list[Callable[[], Check]]:
    def sym3_identity(backend):
        def run():
            a = GWElement.from_diagonal([-2, -6], backend)
            b = WittElement.from_int(-3, backend) + WittElement.unit(3, backend)
            return Check(f"<-2>+<-6> = -3+<3> over {backend}", "Sym3 root sum identity", witt_equal(a, b))

        return run

    def four_three():
        return Check("4<3> = 4", "4-fold sums of squares", gw_equal(GWElement.unit(3) * 4, GWElement.from_int(4)))

    def h_absorbs():
        import random

        rng = random.Random(7)
        ok = True
        for _ in range(20):
            a = rng.choice([-1, 1]) * rng.randint(1, 500)
            ok &= gw_equal(hyperbolic(1) * GWElement.unit(a), hyperbolic(1))
        return Check("h*<a> = h (20 units)", "hyperbolic form absorbs units", ok)

    def four_torsion(p):
        def run():
            B = Fp(p)
            ok = all(not (GWElement.unit(u, B).witt() * 4) for u in range(1, p))
            ok &= not (GWElement.from_diagonal([1, 2, 3], B).witt() * 4)
            return Check(f"4-torsion of W(F_{p})", "Witt ring of a finite field is 4-torsion", ok)

        return run

    out = [sym3_identity(b) for b in (Q, Fp(5), Fp(7))]
    out += [four_three, h_absorbs]
    out += [four_torsion(p) for p in (5, 7, 11)]
    return out


_BUILDERS = {
    "borelclasses": _borelclasses,
    "omega-table": _omega_table,
    "chi-comparison": _chi_comparison,
    "psi-localization": _psi_localization,
    "gw-identities": _gw_identities,
}


def _guard(job: Callable[[], Check]) -> Check:
    try:
        return job()
    except Exception as exc:
        return Check(getattr(job, "__name__", "check"), "", False, f"{type(exc).__name__}: {exc}")


def run_verify(suite: str = "all", threads: int | None = None) -> VerifyReport:
    """Run one suite (or all) and collect a pass/fail line per check."""
    if suite != "all" and suite not in _BUILDERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    names = SUITES if suite == "all" else (suite,)
    jobs = [job for name in names for job in _BUILDERS[name]()]
    if threads is None:
        threads = int(os.environ.get("QCHAR_THREADS", "1") or 1)
    threads = max(1, threads)
    if threads == 1:
        checks = [_guard(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            checks = list(pool.map(_guard, jobs))
    return VerifyReport(suite, checks)
