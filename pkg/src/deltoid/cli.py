"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
configuration errors. Machine-readable artifacts go to --out; relative paths
are resolved against $DELTOID_OUT_DIR when it is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from .operator import AlphaParam, InvalidParameter

OUT_DIR_ENV = "DELTOID_OUT_DIR"
_EXACT = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(Exception):
    pass


def parse_exact(text: str) -> Fraction:
    """Integers or p/q only; decimals are refused on exact code paths."""
    if not _EXACT.match(text.strip()):
        raise UsageError(f"expected an exact rational like 7/3, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as exc:
        raise UsageError(f"zero denominator in {text!r}") from exc


def parse_decimal(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def parse_levels(text: str) -> list[int]:
    m = re.match(r"^(\d+):(\d+)$", text.strip())
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if hi < lo:
            raise UsageError("empty level range")
        return list(range(lo, hi + 1))
    try:
        levels = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad level list {text!r}") from exc
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise UsageError("levels must be increasing")
    return levels


def param_from_args(args) -> AlphaParam:
    lam = getattr(args, "lam", None)
    alpha = getattr(args, "alpha", None)
    if (lam is None) == (alpha is None):
        raise UsageError("give exactly one of --lambda or --alpha")
    try:
        if lam is not None:
            return AlphaParam.from_lambda(parse_exact(lam))
        return AlphaParam.from_alpha(parse_exact(alpha))
    except InvalidParameter as exc:
        raise UsageError(str(exc)) from exc


def resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _write(path: Path | None, text: str) -> None:
    if path is None:
        return
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _table_latex(table) -> str:
    lines = [f"% lambda = {_frac(table.param.lam)}, alpha = {_frac(table.param.alpha)}"]
    for p, q in table.indices():
        lines.append(f"P_{{{p},{q}}} &= {table[(p, q)].to_latex()} \\\\")
    return "\n".join(lines) + "\n"


def _table_csv(table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "i", "j", "num", "den"])
    for p, q in table.indices():
        for (i, j), c in table[(p, q)].items():
            w.writerow([p, q, i, j, c.numerator, c.denominator])
    return buf.getvalue()


def _render_table(table, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(table.to_json())
    if fmt == "latex":
        return _table_latex(table)
    if fmt == "csv":
        return _table_csv(table)
    raise UsageError(f"unknown format {fmt}")


# subcommands

def cmd_build(args) -> int:
    from .recurrence import build_table

    table = build_table(param_from_args(args), args.degree)
    print(f"built P_(p,q) for p+q <= {args.degree} at lambda={table.param.lam}: {len(table.entries)} polynomials")
    _write(resolve_out(args.out), _render_table(table, args.format))
    return 0


def cmd_export(args) -> int:
    from .recurrence import PolyTable, build_table

    if args.table:
        table = PolyTable.from_json(json.loads(Path(args.table).read_text(encoding="utf-8")))
    else:
        if args.degree is None:
            raise UsageError("export needs --table or --degree with --lambda/--alpha")
        table = build_table(param_from_args(args), args.degree)
    text = _render_table(table, args.format)
    out = resolve_out(args.out)
    if out is None:
        sys.stdout.write(text)
    else:
        _write(out, text)
    return 0


def cmd_check_eigen(args) -> int:
    from .recurrence import build_table, check_eigen

    rep = check_eigen(build_table(param_from_args(args), args.degree))
    print(rep.summary())
    return 0 if rep.passed else 1


def cmd_check_gamma(args) -> int:
    from .recurrence import build_table, check_gamma_recurrence

    rep = check_gamma_recurrence(build_table(param_from_args(args), args.degree))
    print(rep.summary())
    return 0 if rep.passed else 1


def cmd_traces(args) -> int:
    from .traces import trace

    if args.max < 0:
        raise UsageError("--max must be >= 0")
    data = [{"p": p, "poly": trace(p).to_json()} for p in range(-args.max, args.max + 1)]
    for p in range(0, args.max + 1):
        print(f"T_{p} = {trace(p).to_latex()}")
    _write(resolve_out(args.out), _dump_json(data))
    return 0


def cmd_characters(args) -> int:
    from .characters import SU3, character_eigenvector, character_table, partitions, verify_su3_eigen
    from .recurrence import build_table

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    ct = character_table(args.n)
    print(f"character table of S_{args.n} (rows: irreducibles, columns: cycle types)")
    print(ct.format())
    table = build_table(SU3, args.n)
    ok = True
    out = []
    for chi in partitions(args.n):
        Q = character_eigenvector(chi)
        rep = verify_su3_eigen(chi, table)
        ok &= rep.passed
        mu = rep.data.get("mu")
        print(f"Q{chi} = {Q.to_latex()}" + (f"   (eigenvalue {mu})" if mu is not None else "   (zero)"))
        print("  " + rep.summary())
        out.append({"chi": list(chi.parts), "poly": Q.to_json(), "eigenvalue": None if mu is None else _frac(mu)})
    payload = {"n": args.n, "labels": [list(p.parts) for p in ct.labels], "table": [list(r) for r in ct.values], "eigenvectors": out}
    print(_dump_json(payload) if args.json else "", end="")
    _write(resolve_out(args.out), _dump_json(payload))
    return 0 if ok else 1


def cmd_genfun(args) -> int:
    from .recurrence import build_table
    from .series import (
        check_generating,
        check_hatL_product,
        check_L_action_on_P,
        generating_coefficients,
        geometric_genfun_flat,
        geometric_genfun_su3,
    )

    param = param_from_args(args)
    n = args.order
    reports = [check_L_action_on_P(param)]
    table = build_table(param, max(n, 2 * min(n, 5)))
    reports.append(check_generating(param, table, n))
    A = generating_coefficients(param, n)
    payload: dict = {"lambda": _frac(param.lam), "A": [A[k].to_json() for k in range(n + 1)]}
    for k in range(n + 1):
        print(f"A_{k} = {A[k].to_latex()}")
    if args.bivariate:
        nb = min(n, 5)
        if param.lam != 1:
            reports.append(check_hatL_product(param, nb, nb))
        reports.append(geometric_genfun_flat(nb))
        from .characters import SU3

        su3 = geometric_genfun_su3(nb, build_table(SU3, 2 * nb))
        reports.append(su3)
        payload["su3_scalars"] = {f"{m},{k}": _frac(v) for (m, k), v in su3.data["scalars"].items() if v is not None}
    for r in reports:
        print(r.summary())
    _write(resolve_out(args.out), _dump_json(payload))
    return 0 if all(r.passed for r in reports) else 1


def cmd_gram(args) -> int:
    import numpy as np

    from .quadrature import TriangleGrid, gram_matrix
    from .recurrence import build_table

    param = param_from_args(args)
    table = build_table(param, args.degree)
    grid = TriangleGrid.uniform(args.level) if param.alpha >= Fraction(-1, 2) else TriangleGrid.graded(args.level)
    idx, C = gram_matrix(table, grid)
    off = float(np.max(np.abs(C - np.eye(len(idx))))) if len(idx) > 1 else 0.0
    ok = off < args.tol
    print(f"[{'PASS' if ok else 'FAIL'}] gram lambda={param.lam} degree={args.degree} level={args.level}: max |off-diagonal| = {off:.3e} (tol {args.tol:g})")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p,q"] + [f"{p},{q}" for p, q in idx])
    for (p, q), row in zip(idx, C):
        w.writerow([f"{p},{q}"] + [repr(float(x)) for x in row])
    _write(resolve_out(args.out), buf.getvalue())
    return 0 if ok else 1


def cmd_probe(args) -> int:
    from .quadrature import classify_probe, integrability_probe

    alpha = parse_decimal(args.alpha)
    levels = parse_levels(args.levels)
    masses = integrability_probe(alpha, levels)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "mass"])
    for L, m in masses:
        w.writerow([L, repr(m)])
    sys.stdout.write(buf.getvalue())
    print(f"# alpha={args.alpha}: {classify_probe(masses)}")
    _write(resolve_out(args.out), buf.getvalue())
    return 0


def _add_param(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", help="lambda as an exact rational, e.g. 7/3")
    p.add_argument("--alpha", help="alpha as an exact rational; lambda = (6 alpha + 5)/2")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deltoid", description="Deltoid orthogonal polynomials: build and verify.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the table P_(p,q), p+q <= degree")
    _add_param(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", default="table.json")
    p.add_argument("--format", choices=["json", "latex", "csv"], default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export", help="re-render a table (from --table or built on the fly)")
    _add_param(p)
    p.add_argument("--table")
    p.add_argument("--degree", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "latex", "csv"], default="json")
    p.set_defaults(func=cmd_export)

    for name, func, helptext in (
        ("check-eigen", cmd_check_eigen, "exact eigenvector check"),
        ("check-gamma", cmd_check_gamma, "exact Gamma(Z, .) three-term check"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_param(p)
        p.add_argument("--degree", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("traces", help="trace polynomials T_p for |p| <= max")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("characters", help="S_n character table and trace eigenvectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true", help="also print the JSON payload")
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("genfun", help="generating-function coefficients and checks")
    _add_param(p)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--bivariate", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("gram", help="numeric Gram correlation matrix")
    _add_param(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--level", type=int, default=6)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("probe", help="total mass of the weight at increasing refinement")
    p.add_argument("--alpha", required=True, help="decimal or rational")
    p.add_argument("--levels", default="1:8", help="lo:hi or comma list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe)
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        for attr in ("degree", "order", "level"):
            v = getattr(args, attr, None)
            if v is not None and v < 0:
                raise UsageError(f"--{attr} must be >= 0")
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
