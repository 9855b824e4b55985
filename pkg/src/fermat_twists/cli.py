"""Command-line front end: ``fermat-twists <command> ...`` or ``python -m fermat_twists``."""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from typing import Sequence

from .cyclo import NonIntegralCoefficient
from .descent import (
    DescentError,
    FormDatum,
    HomogeneousPoly,
    aut_group_order,
    base_field,
    enumerate_classes,
    frobenius_cocycle,
    trace_form,
    verify_isomorphy,
)
from .gf import AlgebraSpec, CharacterSpec, Field, FieldElement, FieldError, extension, make_field
from .oracle import BudgetExceeded, InconsistentZeta, count_points, default_budget, verify
from .spectral import SpectralError, fermat_zeta_general_q, jacobi, zeta

log = logging.getLogger("fermat_twists")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FIELD = 3
EXIT_DESCENT = 4
EXIT_SPECTRAL = 5
EXIT_NONINTEGRAL = 6
EXIT_BUDGET = 7
EXIT_INCONSISTENT = 8
EXIT_MISMATCH = 9
EXIT_INPUT = 10

# example presentations, addressable by name on the command line
NAMED_PRESENTATIONS = {
    ("alpha", 7, 2): (5, 5, 1),
    ("beta", 7, 4): (5, 1, 4, 5, 1),
}

LONG_BUDGET = 10**11


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# datum parsing

_TOKEN = re.compile(r"\s*([*/])?\s*([A-Za-z]+|\d+)(?:\^(-?\d+))?")


def _names_in(expr: str) -> set[str]:
    return set(re.findall(r"[A-Za-z]+", expr))


def factor_field(base: Field, degree: int, entry: dict) -> Field:
    if "modulus" in entry:
        return make_field(base.p, base.k * degree, entry["modulus"])
    x = entry.get("x")
    if isinstance(x, str) and base.k == 1:
        for name in _names_in(x):
            mod = NAMED_PRESENTATIONS.get((name, base.p, degree))
            if mod is not None:
                return make_field(base.p, degree, mod)
    return extension(base, degree)


def parse_element(expr: str | int | Sequence[int], L: Field) -> FieldElement:
    """Element syntax: products/quotients of alpha, beta, t (adjoined root), g (default generator)
    and integers, each optionally raised to an integer power, e.g. ``beta^2``, ``1/alpha^2``, ``g^17``."""
    if isinstance(expr, int):
        return L(expr)
    if isinstance(expr, list):
        return L(expr)
    s = expr.replace(" ", "")
    pos, acc = 0, L.one
    first = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or (first and m.group(1)) or (not first and not m.group(1)):
            raise InputError(f"cannot parse element expression {expr!r} at position {pos}")
        op, atom, power = m.group(1), m.group(2), int(m.group(3) or 1)
        if atom.isdigit():
            val = L(int(atom))
        elif atom in ("alpha", "beta", "t", "theta"):
            val = L.root
        elif atom == "g":
            val = L.generator
        else:
            raise InputError(f"unknown element name {atom!r}")
        if not val and power < 0:
            raise InputError("negative power of zero")
        val = val ** power if power >= 0 else val.inverse() ** (-power)
        acc = acc / val if op == "/" else acc * val
        pos = m.end()
        first = False
    if first:
        raise InputError("empty element expression")
    return acc


def parse_datum(text: str, m: int | None, q: int | None) -> FormDatum:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"datum is not valid JSON: {exc}") from None
    if isinstance(data, dict):
        m = int(data.get("m", m))
        q = int(data.get("q", q))
        entries = data["factors"]
    else:
        entries = data
    if m is None or q is None:
        raise InputError("--m and --q are required")
    base = base_field(q)
    factors, xs = [], []
    for entry in entries:
        if "degree" not in entry:
            raise InputError(f"factor entry {entry} lacks 'degree'")
        deg = int(entry["degree"])
        L = factor_field(base, deg, entry)
        if "x_dlog" in entry:
            x = L.generator ** int(entry["x_dlog"])
        else:
            x = parse_element(entry.get("x", 1), L)
        factors.append(L)
        xs.append(x)
    return FormDatum(m, AlgebraSpec(base, tuple(factors)), tuple(xs))


def fermat_datum(m: int, n: int, q: int) -> FormDatum:
    return FormDatum.fermat(m, n, base_field(q))


def _character(args, base: Field, m: int) -> CharacterSpec:
    if args.chi_generator is None:
        return CharacterSpec.default(base, m)
    return CharacterSpec(base, parse_element(args.chi_generator, base), m)


def _datum_from_args(args) -> FormDatum:
    if args.datum:
        d = parse_datum(args.datum, args.m, args.q)
    elif args.n is not None:
        d = fermat_datum(args.m, args.n, args.q)
    else:
        raise InputError("give --datum or --n (the Fermat datum)")
    if args.n is not None and d.n != args.n:
        raise InputError(f"datum has n={d.n} but --n {args.n} was given")
    return d


# ---------------------------------------------------------------------------
# commands


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_synth(args) -> int:
    d = _datum_from_args(args)
    P = trace_form(d)
    names = list(args.names) if args.names and len(args.names) == P.n else None
    ok = verify_isomorphy(d, seed=args.seed) if args.check else None
    payload = {"datum": d.to_json(), "poly": P.to_json(), "pretty": P.pretty(names)}
    if ok is not None:
        payload["isomorphic_to_fermat"] = ok
    text = P.pretty(names)
    if ok is not None:
        text += f"\nform of the Fermat equation: {ok}"
    _emit(args, payload, text)
    return EXIT_OK if ok in (None, True) else EXIT_MISMATCH


def cmd_classify(args) -> int:
    classes = enumerate_classes(args.m, args.n, args.q)
    rows = []
    lines = [f"{len(classes)} classes of forms of X_1^{args.m}+...+X_{args.n}^{args.m} over F_{args.q}"]
    for i, d in enumerate(classes, 1):
        row = {"datum": d.to_json(), "degrees": list(d.degrees), "residues": list(d.residues()),
               "aut_order": aut_group_order(d)}
        if args.forms:
            row["pretty"] = trace_form(d).pretty()
        rows.append(row)
        line = f"{i:3d}  degrees {list(d.degrees)}  residues {list(d.residues())}  |Aut| {row['aut_order']}"
        if args.forms:
            line += f"\n     {row['pretty']}"
        lines.append(line)
    _emit(args, {"m": args.m, "n": args.n, "q": args.q, "classes": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_jacobi(args) -> int:
    a = tuple(int(x) for x in args.a.split(","))
    if args.n is not None and len(a) != args.n:
        raise InputError(f"--a has {len(a)} entries but --n is {args.n}")
    base = base_field(args.q)
    chi = _character(args, base, args.m)
    J = jacobi(a, chi, args.method)
    _emit(args, {"a": list(a), "q": args.q, "jacobi": J.to_json(), "text": str(J)}, str(J))
    return EXIT_OK


def cmd_zeta(args) -> int:
    d = _datum_from_args(args)
    chi = _character(args, d.base, d.m)
    z = zeta(d, chi, args.iota)
    payload = z.to_json(args.points)
    if d.good:
        payload["cocycle"] = frobenius_cocycle(d).to_json()
    text = f"b_f = {frobenius_cocycle(d).format(d.base)}\n{z.pretty(args.points)}"
    _emit(args, payload, text)
    return EXIT_OK


def _budget(args) -> int:
    budget = args.budget if args.budget is not None else default_budget()
    return max(budget, LONG_BUDGET) if args.long else budget


def _progress(args):
    if not args.long:
        return None
    t0 = time.perf_counter()

    def report(chart: int, charts: int, running: int) -> None:
        sys.stderr.write(f"  chart {chart}/{charts} done, {running} points so far, "
                         f"{time.perf_counter() - t0:.1f}s\n")
        sys.stderr.flush()

    return report


def cmd_count(args) -> int:
    if args.poly and args.poly.lstrip().startswith("{"):
        P = HomogeneousPoly.from_json(json.loads(args.poly))
    elif args.poly:
        P = HomogeneousPoly.parse(args.poly, base_field(args.q), args.m, args.names or None, args.n)
    else:
        P = trace_form(_datum_from_args(args))
    rep = count_points(P, args.ext, _budget(args), progress=_progress(args))
    payload = rep.to_json()
    payload.pop("elapsed")
    _emit(args, payload, f"#X(F_{rep.field.order}) = {rep.count}   ({rep.elapsed:.2f}s, {rep.backend})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        data = enumerate_classes(args.m, args.n, args.q)
    else:
        data = [_datum_from_args(args)]
    reports, ok = [], True
    lines = []
    for d in data:
        chi = _character(args, d.base, d.m)
        rep = verify(d, args.depth, _budget(args), chi=chi, iota=args.iota, progress=_progress(args))
        iso = verify_isomorphy(d, seed=args.seed)
        ok &= rep.ok and iso
        entry = rep.to_json()
        entry["isomorphic_to_fermat"] = iso
        reports.append(entry)
        lines.append(f"degrees {list(d.degrees)} residues {list(d.residues())}: "
                     f"{'ok' if rep.ok and iso else 'MISMATCH'}")
        lines.extend("  " + s for s in rep.lines())
    _emit(args, {"reports": reports, "ok": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_fermat_zeta(args) -> int:
    z = fermat_zeta_general_q(args.m, args.n, args.q)
    _emit(args, z.to_json(args.points), z.pretty(args.points))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="exponent m")
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--q", type=int, required=True, help="base field size")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--budget", type=float, default=None, help="point-count evaluation budget")
    common.add_argument("--long", action="store_true", help="allow long point counts")
    common.add_argument("--chi-generator", default=None, help="generator g of F_q^x with chi(g) = z")
    common.add_argument("-v", "--verbose", action="store_true")

    datum = argparse.ArgumentParser(add_help=False)
    datum.add_argument("--datum", help='JSON factor list, e.g. \'[{"degree":2,"x":"alpha"}]\'')

    p = argparse.ArgumentParser(prog="fermat-twists", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", parents=[common, datum], help="trace-form polynomial of a datum")
    s.add_argument("--names", help="one-letter variable names, e.g. abcdxy")
    s.add_argument("--check", action="store_true", help="also check it is a form of the Fermat equation")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("classify", parents=[common], help="all classes of forms")
    s.add_argument("--forms", action="store_true", help="print each trace form")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("jacobi", parents=[common], help="Jacobi sum J(a)")
    s.add_argument("--a", required=True, help="comma-separated character vector")
    s.add_argument("--method", choices=["auto", "direct", "fast"], default="auto")
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("zeta", parents=[common, datum], help="zeta function of a form")
    s.add_argument("--points", type=int, default=4, help="number of point counts to print")
    s.add_argument("--iota", type=int, default=None, help="embedding exponent (default: calibrated)")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("count", parents=[common, datum], help="brute-force point count")
    s.add_argument("--ext", type=int, default=1, help="count over F_{q^ext}")
    s.add_argument("--poly", help="polynomial (JSON, or text such as 'a^3+2b^3+c^3') instead of a datum")
    s.add_argument("--names", help="one-letter variable names used in a text --poly")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("verify", parents=[common, datum], help="zeta vs brute force")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--all", action="store_true", help="every class from classify")
    s.add_argument("--iota", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fermat-zeta", parents=[common], help="untwisted Fermat zeta for any q")
    s.add_argument("--points", type=int, default=4)
    s.set_defaults(func=cmd_fermat_zeta)
    return p


def _validate(args) -> None:
    if args.m < 2:
        raise InputError("--m must be at least 2")
    if args.n is not None and args.n < 1:
        raise InputError("--n must be positive")
    if args.command in ("classify", "fermat-zeta") and args.n is None:
        raise InputError(f"{args.command} needs --n")
    base = base_field(args.q)
    if base.p <= args.m:
        raise InputError(f"characteristic {base.p} must exceed m={args.m}")
    if args.command in ("jacobi", "zeta", "verify", "classify") and (args.q - 1) % args.m:
        raise InputError(f"q={args.q} is not 1 mod m={args.m}; only fermat-zeta handles that case")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    errors = [
        (InputError, EXIT_INPUT),
        (BudgetExceeded, EXIT_BUDGET),
        (InconsistentZeta, EXIT_INCONSISTENT),
        (NonIntegralCoefficient, EXIT_NONINTEGRAL),
        (SpectralError, EXIT_SPECTRAL),
        (DescentError, EXIT_DESCENT),
        (FieldError, EXIT_FIELD),
    ]
    try:
        _validate(args)
        return args.func(args)
    except tuple(e for e, _ in errors) as exc:
        code = next(c for e, c in errors if isinstance(exc, e))
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return code
    except (KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"error: invalid input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
