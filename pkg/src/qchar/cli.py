"""Command-line front end: ``qchar <verb> [options]``."""
from __future__ import annotations

import argparse
import json
import sys

from .borel import borel_poly
from .borel_character import bo
from .bundles import VirtualBundle
from .errors import AmbientMismatch, QcharError
from .expr import parse_bundle, parse_form
from .graded_poly import AmbientSpec
from .gw_arith import gw_equal, parse_backend, witt_equal
from .localization import localize
from .operations import chi_eval, omega_s2, psi
from .verify import SUITES, run_verify


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj.to_json(), indent=2) + "\n")
    elif fmt == "latex":
        out.write(obj.to_latex() + "\n")
    else:
        out.write(str(obj) + "\n")


def _ambient(args, v: VirtualBundle, degree: int) -> AmbientSpec:
    k = max(v.max_index(), 1)
    if args.ambient:
        amb = AmbientSpec.from_string(args.ambient)
        if len(amb) < v.max_index():
            raise AmbientMismatch(f"bundle uses U{v.max_index()} but ambient {amb} has {len(amb)} factors")
        return amb
    return AmbientSpec.hp(*([degree + 1] * k))


def _default_degree(v: VirtualBundle) -> int:
    return max(1, sum(abs(n) * (m.rank // 2) for m, n in v.terms.items()))


class _Text:
    """Wrap a string so _emit can print it in any format."""

    def __init__(self, text, data):
        self.text, self.data = text, data

    def __str__(self):
        return self.text

    def to_latex(self):
        return self.data.get("latex", self.text)

    def to_json(self):
        return {k: v for k, v in self.data.items() if k != "latex"}


def cmd_gw(args, out) -> int:
    backend = parse_backend(args.backend)
    a = parse_form(args.expression, backend)
    data = {"value": str(a), "latex": a.to_latex(), "rank": a.rank(), "form": a.to_json()}
    lines = [f"value     = {a}", f"rank      = {a.rank()}"]
    if backend.is_rational:
        data["signature"] = a.signature()
        lines.append(f"signature = {a.signature()}")
        residues = {p: str(a.residue(p)) for p in sorted(a.support_primes())}
        data["residues"] = {str(p): r for p, r in residues.items()}
        for p, r in residues.items():
            lines.append(f"residue_{p} = {r}")
    else:
        data["witt_fp"] = str(a.witt_fp())
        lines.append(f"W(F_{backend.p}) image = {a.witt_fp()}")
    data["witt"] = str(a.witt())
    lines.append(f"witt      = {a.witt()}")
    if args.compare:
        b = parse_form(args.compare, backend)
        data["gw_equal"] = gw_equal(a, b)
        data["witt_equal"] = witt_equal(a, b)
        lines.append(f"gw_equal   = {str(data['gw_equal']).lower()}")
        lines.append(f"witt_equal = {str(data['witt_equal']).lower()}")
    _emit(_Text("\n".join(lines), data), args.format, out)
    return 0


def cmd_borel(args, out) -> int:
    backend = parse_backend(args.backend)
    v = parse_bundle(args.bundle)
    degree = args.max_degree if args.max_degree is not None else _default_degree(v)
    amb = _ambient(args, v, degree)
    _emit(borel_poly(v, amb, args.channel, degree, backend), args.format, out)
    return 0


def cmd_chi(args, out) -> int:
    backend = parse_backend(args.backend)
    v = parse_bundle(args.bundle)
    amb = _ambient(args, v, args.n)
    p = chi_eval(args.n, v, amb, args.channel, backend)
    _emit(p, args.format, out)
    return 0


def cmd_omega(args, out) -> int:
    _emit(omega_s2(args.n, args.channel, parse_backend(args.backend)), args.format, out)
    return 0


def cmd_psi(args, out) -> int:
    backend = parse_backend(args.backend)
    x = psi(args.n, backend)
    data = {"n": args.n, "value": str(x), "latex": x.to_latex(), "rank": x.rank(), "form": x.to_json()}
    lines = [f"psi_{2 * args.n + 4} = {x}", f"rank = {x.rank()}"]
    if backend.is_rational:
        loc = localize(x)
        data["signature"] = x.signature()
        data["localized"] = loc.to_json()
        lines += [f"signature = {x.signature()}", f"localized = {loc}"]
    else:
        data["witt_fp"] = str(x.witt_fp())
        lines.append(f"W(F_{backend.p}) image = {x.witt_fp()}")
    _emit(_Text("\n".join(lines), data), args.format, out)
    return 0


def cmd_bo(args, out) -> int:
    backend = parse_backend(args.backend)
    v = parse_bundle(args.bundle)
    amb = _ambient(args, v, args.max_degree)
    value = bo(v, amb, args.max_degree, backend)
    _emit(value, args.format, out)
    return 0 if value.square_ok else 1


def cmd_verify(args, out) -> int:
    report = run_verify(args.suite)
    _emit(report, "json" if args.format == "json" else "text", out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", default="q", help="q or fp:<prime> (prime not 2 or 3)")
    common.add_argument("--format", choices=("text", "latex", "json"), default="text")

    p = argparse.ArgumentParser(prog="qchar", description="Quadratic characteristic classes over HP^n products.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gw", parents=[common], help="inspect a quadratic form expression")
    g.add_argument("expression")
    g.add_argument("--compare", help="second form to test for equality")
    g.set_defaults(func=cmd_gw)

    def bundle_opts(sp, channel=True):
        sp.add_argument("--bundle", required=True, help='e.g. "(U1-H)*(U2-H)*U3"')
        sp.add_argument("--ambient", help='e.g. "HP(5)^3" or "HP(1)*HP(1)*HP(8)"')
        if channel:
            sp.add_argument("--channel", choices=("chow", "witt", "gw"), default="gw")

    b = sub.add_parser("borel", parents=[common], help="Borel classes of a bundle")
    bundle_opts(b)
    b.add_argument("--max-degree", type=int)
    b.set_defaults(func=cmd_borel)

    c = sub.add_parser("chi", parents=[common], help="the power operation chi~_{2n}")
    bundle_opts(c)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_chi)

    o = sub.add_parser("omega", parents=[common], help="stable coefficient of chi~_{2n+4}")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--channel", choices=("chow", "witt", "gw"), default="gw")
    o.set_defaults(func=cmd_omega)

    s = sub.add_parser("psi", parents=[common], help="the element psi_{2n+4}")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_psi)

    r = sub.add_parser("bo", parents=[common], help="Borel character components")
    bundle_opts(r, channel=False)
    r.add_argument("--max-degree", type=int, default=8)
    r.set_defaults(func=cmd_bo)

    v = sub.add_parser("verify", parents=[common], help="run a reproduction suite")
    v.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (QcharError, ValueError) as exc:
        sys.stderr.write(f"qchar: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
